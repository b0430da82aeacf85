#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blowup/admissibility.hpp"
#include "blowup/asymptotics.hpp"
#include "blowup/biharmonic.hpp"
#include "blowup/catalog.hpp"
#include "blowup/errors.hpp"
#include "blowup/json_io.hpp"
#include "blowup/paper_suite.hpp"
#include "blowup/simanca_ode.hpp"

namespace py = pybind11;
using namespace blowup;

namespace {

// Structured results cross the boundary as JSON text, parsed on the Python side.
std::string check_config(const std::string& config_json) {
    const RunConfig cfg = parse_config(Json::parse(config_json));
    return to_json(check(config_basis(cfg), cfg.points, cfg.tolerances)).dump();
}

std::string catalog(int id, int n, double alpha, double beta) {
    return to_json(example_catalog(id, {n, alpha, beta})).dump();
}

std::string ledger(int n, const std::string& delta, const std::string& delta_model) {
    std::optional<Rational> dm;
    if (!delta_model.empty()) dm = parse_rational(delta_model);
    return to_json(verify_ledger(n, parse_rational(delta), dm)).dump();
}

std::string window(int n, const std::vector<std::string>& names) { return delta_window(n, names).str(); }

std::string suite(std::uint64_t seed, const std::vector<int>& criteria) {
    return to_json(paper_suite(seed, criteria)).dump();
}

py::dict kernel(const Eigen::MatrixXd& m, double tol_pos) {
    const PositiveKernel k = positive_kernel_c2(m, tol_pos);
    py::dict d;
    d["status"] = to_string(k.status);
    d["positive"] = k.positive;
    d["margin"] = k.margin;
    d["witness"] = k.witness ? py::cast(*k.witness) : py::none();
    return d;
}

py::dict zeta(int n, double s_max, double rel_tol) {
    const ZetaTrajectory t = integrate_zeta(n, s_max, rel_tol);
    py::dict d;
    d["lambda"] = t.lambda;
    d["lambda_error"] = t.lambda_error;
    d["s"] = t.s;
    d["zeta"] = t.zeta;
    return d;
}

py::dict poisson(int gamma, int n) {
    const PoissonMap p = poisson_map_mode(gamma, n);
    py::dict d;
    d["matrix"] = p.matrix;
    d["determinant"] = p.determinant;
    d["condition"] = p.condition;
    d["restricted"] = p.restricted;
    return d;
}

}  // namespace

PYBIND11_MODULE(_blowup, m) {
    m.doc() = "Blow-up admissibility, potential ODE, exponent ledger and biharmonic matching";
    m.attr("__version__") = kToolVersion;

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
    error.call_once_and_store_result(
        [&]() { return py::exception<Error>(m, "BlowupError", PyExc_RuntimeError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error.get_stored(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        } catch (const nlohmann::json::exception& e) {
            py::set_error(error.get_stored(), (std::string("parse: ") + e.what()).c_str());
        }
    });

    m.def("check_config", &check_config, py::arg("config_json"));
    m.def("catalog", &catalog, py::arg("id"), py::arg("n") = 0, py::arg("alpha") = 0.0, py::arg("beta") = 0.0);
    m.def("ledger", &ledger, py::arg("n"), py::arg("delta"), py::arg("delta_model") = "");
    m.def("delta_window", &window, py::arg("n"), py::arg("names") = std::vector<std::string>{});
    m.def("paper_suite", &suite, py::arg("seed") = kDefaultSeed, py::arg("criteria") = std::vector<int>{});
    m.def("positive_kernel", &kernel, py::arg("matrix"), py::arg("tol_pos") = 1e-9);
    m.def("rank", &rank_c1, py::arg("matrix"), py::arg("tol") = 1e-9);
    m.def("cn_constant", &cn_constant, py::arg("n"));
    m.def("integrate_zeta", &zeta, py::arg("n"), py::arg("s_max") = 1000.0, py::arg("rel_tol") = 1e-10);
    m.def("scale_factor", &scale_factor, py::arg("a_tilde"), py::arg("n"));
    m.def("poisson_map", &poisson, py::arg("gamma"), py::arg("n"));
}
