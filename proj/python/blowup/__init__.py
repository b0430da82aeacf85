"""Python access to the blow-up admissibility library.

Structured reports come back as plain dicts; matrices as numpy arrays.
"""

import json

from . import _blowup
from ._blowup import (
    BlowupError,
    cn_constant,
    integrate_zeta,
    poisson_map,
    positive_kernel,
    rank,
    scale_factor,
)

__version__ = _blowup.__version__

__all__ = [
    "BlowupError",
    "catalog",
    "check",
    "cn_constant",
    "delta_window",
    "integrate_zeta",
    "ledger",
    "paper_suite",
    "poisson_map",
    "positive_kernel",
    "rank",
    "scale_factor",
]


def check(config):
    """Admissibility report for a configuration (dict in the CLI's --config format)."""
    return json.loads(_blowup.check_config(json.dumps(config)))


def catalog(example_id, n=0, alpha=0.0, beta=0.0):
    return json.loads(_blowup.catalog(example_id, n, alpha, beta))


def ledger(n, delta, delta_model=""):
    """Exponent ledger; delta is a rational string such as "-3/2"."""
    return json.loads(_blowup.ledger(n, str(delta), str(delta_model)))


def delta_window(n, names=()):
    return _blowup.delta_window(n, list(names))


def paper_suite(seed=None, criteria=()):
    if seed is None:
        return json.loads(_blowup.paper_suite(criteria=list(criteria)))
    return json.loads(_blowup.paper_suite(seed, list(criteria)))
