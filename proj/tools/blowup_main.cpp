// Command-line front end. Exit status: 0 all requested checks pass, 1 checked
// and negative, 2 input error, 3 internal or solver error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "blowup/admissibility.hpp"
#include "blowup/asymptotics.hpp"
#include "blowup/biharmonic.hpp"
#include "blowup/catalog.hpp"
#include "blowup/errors.hpp"
#include "blowup/json_io.hpp"
#include "blowup/oracles.hpp"
#include "blowup/paper_suite.hpp"
#include "blowup/point_search.hpp"
#include "blowup/simanca_ode.hpp"

using namespace blowup;

namespace {

struct Globals {
    std::string config_path;
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
    std::string format = "table";
    std::string out;
};

struct Output {
    Json json;
    Table table;
    std::string preamble;  // text-table mode only
    int status = 0;
};

void emit(const Globals& g, const Output& o) {
    std::string text;
    if (g.format == "json") text = o.json.dump(2) + "\n";
    else if (g.format == "csv") text = o.table.csv();
    else text = o.preamble + o.table.text();
    if (g.out.empty()) std::cout << text;
    else write_atomic(g.out, text);
}

std::string fmt(double x) { return format_double(x); }

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt(*x) : ""; }

RunConfig need_config(const Globals& g) {
    if (g.config_path.empty()) throw Error(ErrorCode::Parse, "this command needs --config");
    RunConfig cfg = load_config(g.config_path);
    if (g.seed_given) cfg.seed = g.seed;
    return cfg;
}

Json report_summary_rows(const AdmissibilityReport& r, Table& t) {
    t.header = {"row"};
    for (int c = 0; c < r.m; ++c) t.header.push_back("p" + std::to_string(c + 1));
    for (int i = 0; i < r.d; ++i) {
        std::vector<std::string> row = {i < static_cast<int>(r.row_labels.size()) ? r.row_labels[static_cast<std::size_t>(i)] : std::to_string(i)};
        for (int c = 0; c < r.m; ++c) row.push_back(fmt(r.matrix(i, c)));
        t.rows.push_back(row);
    }
    if (r.witness) {
        std::vector<std::string> row = {"witness"};
        for (double x : *r.witness) row.push_back(fmt(x));
        t.rows.push_back(row);
    }
    return to_json(r);
}

std::string verdict_text(const AdmissibilityReport& r) {
    std::ostringstream os;
    os << "d = " << r.d << ", m = " << r.m << ", C1 = " << r.c1 << ", kernel dim = " << r.kernel_dim
       << ", C2 = " << to_string(r.c2_status) << ", margin = " << fmt(r.margin) << "\nverdict: "
       << (r.verdict ? "admissible" : "not admissible") << "\n";
    if (r.a0) os << "a0 = " << fmt(*r.a0) << ", c_n = " << fmt(*r.cn) << "\n";
    return os.str();
}

const char* kAdmissibilityClaim =
    "sufficient conditions: the evaluation matrix has rank d and its kernel meets the open positive cone";

// ---------------------------------------------------------------------------

Output cmd_check(const Globals& g, double rank_tol, double lp_tol) {
    RunConfig cfg = need_config(g);
    if (rank_tol > 0) cfg.tolerances.rank_tol = rank_tol;
    if (lp_tol > 0) cfg.tolerances.tol_pos = lp_tol;
    if (cfg.points.empty()) throw Error(ErrorCode::Parse, "configuration has no points");
    Output o;
    Json body;
    body["claim"] = kAdmissibilityClaim;
    if (cfg.equivariant) {
        const EquivariantReport er =
            equivariant_check(product_kernel_basis(*cfg.manifold), *cfg.group, cfg.points, cfg.tolerances);
        body["equivariant"] = to_json(er);
        report_summary_rows(er.reduced, o.table);
        o.preamble = "equivariant reduction, orbit-weighted columns\n" + verdict_text(er.reduced) +
                     "full check on expanded orbits: " + (er.full.verdict ? "admissible" : "not admissible") +
                     (er.consistent ? " (consistent)\n\n" : " (INCONSISTENT)\n\n");
        if (!er.consistent) throw Error(ErrorCode::Inconsistency, "reduced and full checks disagree");
        o.status = er.reduced.verdict ? 0 : 1;
    } else {
        const KernelBasis basis = config_basis(cfg);
        const AdmissibilityReport r = check(basis, cfg.points, cfg.tolerances);
        body["report"] = report_summary_rows(r, o.table);
        o.preamble = verdict_text(r) + "\n";
        o.status = r.verdict ? 0 : 1;
    }
    o.json = envelope("check", cfg.raw, body);
    return o;
}

Output cmd_search(const Globals& g, const std::string& method, int m, int n, int max_tries, int trials) {
    RunConfig cfg;
    if (!g.config_path.empty()) {
        cfg = need_config(g);
    } else {
        if (n < 1) throw Error(ErrorCode::Parse, "search needs --config or --n");
        cfg.manifold = ModelManifold::projective_space(n);
        cfg.seed = g.seed;
        cfg.raw = {{"manifold", {{{"type", "projective"}, {"n", n}}}}};
    }
    const KernelBasis basis = config_basis(cfg);
    Configuration found;
    AdmissibilityReport report;
    Json extra = Json::object();
    bool objective = false;
    if (method == "random") {
        if (m <= 0) m = static_cast<int>(basis.size()) + 1;
        found = random_rank_search(basis, m, cfg.seed, max_tries, cfg.tolerances.rank_tol);
        report = check(basis, found.points, cfg.tolerances);
        objective = report.c1 == report.d;
        extra["tries"] = found.tries;
    } else if (method == "cover") {
        CoverOptions co;
        co.seed = cfg.seed;
        const CoverResult r = cover_construct(basis, co);
        found = r.config;
        report = r.report;
        objective = report.verdict;
        extra = {{"net_size", r.net.size()},
                 {"covering_radius", r.covering_radius},
                 {"refinements", r.refinements},
                 {"cover_points", r.cover_points},
                 {"extra_points", r.extra_points}};
    } else if (method == "m0") {
        M0Options mo;
        mo.seed = cfg.seed;
        mo.trials = trials;
        if (!cfg.points.empty()) mo.seeds.push_back(cfg.points);
        const M0Result r = m0_estimate(basis, mo);
        found = r.config;
        report = r.report;
        objective = report.verdict;
        extra = {{"m0_upper_bound", r.m}, {"log", r.log}, {"note", "upper bound only, not a minimality claim"}};
    } else {
        throw Error(ErrorCode::Parse, "unknown search method '" + method + "'");
    }
    Output o;
    Json pts = Json::array();
    for (const auto& p : found.points) pts.push_back(to_json(p));
    Json echo = cfg.raw;
    echo["method"] = method;
    echo["seed"] = cfg.seed;
    o.json = envelope("search", echo,
                      {{"claim", kAdmissibilityClaim},
                       {"method", method},
                       {"manifold", to_json(basis.manifold())},
                       {"group", cfg.group ? to_json(*cfg.group) : Json(nullptr)},
                       {"basis", cfg.basis == BasisKind::Invariant ? "invariant" : "full"},
                       {"points", pts},
                       {"search", extra},
                       {"report", to_json(report)},
                       {"provenance", found.provenance.empty() ? method : found.provenance}});
    o.table.header = {"point", "coordinates"};
    for (std::size_t i = 0; i < found.points.size(); ++i)
        o.table.rows.push_back({std::to_string(i + 1), to_json(found.points[i]).dump()});
    o.preamble = "method " + method + "\n" + verdict_text(report) + "\n";
    o.status = objective ? 0 : 1;
    return o;
}

Output cmd_catalog(const std::string& ids, int n, double alpha, double beta) {
    std::vector<int> list;
    if (ids == "all") list = {1, 2, 3, 4, 5, 6};
    else {
        std::stringstream ss(ids);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                list.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw Error(ErrorCode::Parse, "bad example id '" + tok + "'");
            }
        }
    }
    Output o;
    Json entries = Json::array();
    o.table.header = {"id", "matrix", "rank", "C2", "verdict", "claimed", "agreement", "witness_error", "title"};
    for (int id : list) {
        CatalogParams p{n, alpha, beta};
        const CatalogEntry e = example_catalog(id, p);
        entries.push_back(to_json(e));
        // ids 2 and 6 disagree with the published values in documented ways
        const bool documented = id == 2 || id == 6;
        const bool agree = e.diff.rank_match && e.diff.verdict_match &&
                           (e.diff.matrix_match == MatrixMatch::Exact || e.diff.matrix_match == MatrixMatch::UpToSigns ||
                            e.diff.matrix_match == MatrixMatch::NotDisplayed);
        const std::string agreement = agree ? "agrees" : documented ? "discrepancy-documented" : "DISAGREES";
        if (!agree && !documented) o.status = 1;
        o.table.rows.push_back({std::to_string(id), to_string(e.diff.matrix_match), std::to_string(e.report.c1),
                                to_string(e.report.c2_status), e.report.verdict ? "admissible" : "not admissible",
                                e.claimed_verdict ? "admissible" : "not admissible", agreement,
                                fmt_opt(e.diff.witness_error), e.title});
    }
    o.json = envelope("catalog", {{"ids", ids}, {"n", n}, {"alpha", alpha}, {"beta", beta}}, {{"entries", entries}});
    return o;
}

Output cmd_ode(const Globals& g, int n, double s_max, double rel_tol, const std::string& tail, bool samples) {
    if (!g.config_path.empty()) {
        const RunConfig cfg = need_config(g);
        if (cfg.raw.contains("tolerances")) rel_tol = cfg.ode_rel_tol;
    }
    const ZetaTrajectory t = integrate_zeta(n, s_max, rel_tol);
    const double oracle_lambda = oracle::lambda_u_variable(n);
    const double agreement = std::abs(t.lambda - oracle_lambda);
    Output o;
    Json body = {{"claim", "zeta increases from 1 to a finite limit lambda; f = lambda s + c - lambda^{2-n} s^{2-n}/(n-2) + O(s^{1-n})"},
                 {"n", n},
                 {"lambda", t.lambda},
                 {"lambda_extrapolation_error", t.lambda_error},
                 {"lambda_oracle", oracle_lambda},
                 {"agreement", agreement},
                 {"steps", t.steps},
                 {"rejected", t.rejected}};
    std::ostringstream pre;
    pre << "n = " << n << ", lambda = " << fmt(t.lambda) << " (oracle " << fmt(oracle_lambda) << ", |diff| "
        << fmt(agreement) << ")\n";
    const Potential p = reconstruct_potential(t);
    if (n >= 3) {
        const PotentialExpansion e =
            expansion_fit(p, n, tail == "literal" ? TailConvention::Literal : TailConvention::Derived);
        body["expansion"] = {{"tail", tail},       {"c", e.c},
                             {"lambda_fit", e.lambda}, {"next_coefficient", e.next_coefficient},
                             {"remainder_slope", e.remainder_slope}, {"expected_slope", 1 - n},
                             {"window", {e.window_lo, e.window_hi}}};
        body["c"] = e.c;
        body["remainder_slope"] = e.remainder_slope;
        pre << "c = " << fmt(e.c) << ", remainder slope " << fmt(e.remainder_slope) << " (expected " << 1 - n << ")\n";
    }
    pre << "\n";
    o.preamble = pre.str();
    o.table.header = {"s", "zeta", "f"};
    if (samples || g.format == "csv")
        for (std::size_t i = 0; i < p.s.size(); ++i) o.table.rows.push_back({fmt(p.s[i]), fmt(p.zeta[i]), fmt(p.f[i])});
    if (samples) {
        body["samples"] = {{"s", p.s}, {"zeta", p.zeta}, {"f", p.f}};
    }
    o.json = envelope("ode", {{"n", n}, {"s_max", s_max}, {"rel_tol", rel_tol}, {"tail", tail}}, body);
    o.status = t.lambda > 0.0 && agreement < 1e-6 ? 0 : 1;
    return o;
}

Output cmd_ledger(int n, const std::string& delta_text, const std::string& delta_model_text) {
    const Rational delta = parse_rational(delta_text);
    std::optional<Rational> dm;
    if (!delta_model_text.empty()) dm = parse_rational(delta_model_text);
    const EstimateLedger l = verify_ledger(n, delta, dm);
    Output o;
    o.table.header = {"name", "lhs_exponent", "rhs_exponent", "gap", "verdict", "window", "claim"};
    std::string failing;
    for (const auto& e : l.entries) {
        o.table.rows.push_back({e.inequality.name, to_string(e.lhs_exponent), to_string(e.rhs_exponent),
                                to_string(e.gap), e.pass ? "pass" : "FAIL", e.in_window ? "in" : "out",
                                e.inequality.claim});
        if (!e.pass) failing += (failing.empty() ? "" : ", ") + e.inequality.name;
    }
    Json body = to_json(l);
    body["window_base"] = delta_window(n).str();
    body["stated_window_base"] = stated_window(n, WeightSide::Base).str();
    o.json = envelope("ledger", {{"n", n}, {"delta", delta_text}, {"delta_model", delta_model_text}}, body);
    o.preamble = "n = " + std::to_string(n) + ", delta = " + to_string(l.delta) + " (stated window " +
                 stated_window(n, WeightSide::Base).str() + "), model delta = " + to_string(l.delta_model) + "\n\n";
    if (!failing.empty()) {
        std::cerr << "failing inequalities: " << failing << "\n";
        o.status = 1;
    }
    return o;
}

Output cmd_match(int n_min, int n_max, int gamma_max) {
    Output o;
    o.table.header = {"n", "gamma", "inner_exponents", "outer_exponents", "mu", "nu", "determinant", "condition", "restricted"};
    Json modes = Json::array();
    for (int n = n_min; n <= n_max; ++n)
        for (int gamma = 0; gamma <= gamma_max; ++gamma) {
            const PoissonMap p = poisson_map_mode(gamma, n);
            const std::string ie = std::to_string(gamma) + " " + std::to_string(gamma + 2);
            const std::string oe = std::to_string(2 - 2 * n - gamma) + " " + std::to_string(4 - 2 * n - gamma);
            o.table.rows.push_back({std::to_string(n), std::to_string(gamma), ie, oe, fmt(mu_factor(gamma, n)),
                                    fmt(nu_factor(gamma, n)), fmt(p.determinant), fmt(p.condition),
                                    p.restricted ? "k=0" : "no"});
            Json j = to_json(p);
            j["mu"] = mu_factor(gamma, n);
            j["nu"] = nu_factor(gamma, n);
            modes.push_back(j);
            if (!(std::abs(p.determinant) > 1e-8)) {
                std::cerr << "singular Cauchy-data map at n = " << n << ", gamma = " << gamma << "\n";
                o.status = 1;
            }
        }
    o.json = envelope("match", {{"n_min", n_min}, {"n_max", n_max}, {"gamma_max", gamma_max}},
                      {{"claim", "the Cauchy-data map is an isomorphism on every mode"}, {"modes", modes}});
    return o;
}

Output cmd_suite(const Globals& g, const std::vector<int>& criteria, bool timings) {
    const SuiteReport r = paper_suite(g.seed, criteria);
    Output o;
    o.json = envelope("paper-suite", {{"seed", g.seed}, {"criteria", criteria}}, to_json(r, timings));
    o.table = to_table(r, timings);
    o.status = r.all_ok() ? 0 : 1;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blow-up admissibility and gluing checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Globals g;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--seed", g.seed, "random seed")->each([&](const std::string&) { g.seed_given = true; });
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", g.out, "write the report here (atomically) instead of stdout");

    double rank_tol = 0.0, lp_tol = 0.0;
    auto* check = app.add_subcommand("check", "decide C1 and C2 for a configuration");
    check->add_option("--rank-tol", rank_tol, "relative singular value threshold");
    check->add_option("--lp-tol", lp_tol, "LP positivity threshold");

    std::string method = "cover";
    int search_m = 0, search_n = 0, max_tries = 100, trials = 8;
    auto* search = app.add_subcommand("search", "construct an admissible configuration");
    search->add_option("--method", method, "random | cover | m0")->check(CLI::IsMember({"random", "cover", "m0"}));
    search->add_option("--m", search_m, "point count for the random rank search");
    search->add_option("--n", search_n, "P^n when no --config is given");
    search->add_option("--max-tries", max_tries, "random search attempts");
    search->add_option("--trials", trials, "random starts for m0");

    std::string ids = "all";
    int cat_n = 0;
    double alpha = 0.0, beta = 0.0;
    auto* catalog = app.add_subcommand("catalog", "rebuild the worked examples");
    catalog->add_option("--id", ids, "example id(s), comma separated, or 'all'");
    catalog->add_option("--n", cat_n, "dimension (0: example default)");
    catalog->add_option("--alpha", alpha, "parameter alpha (0: default)");
    catalog->add_option("--beta", beta, "parameter beta (0: default)");

    int ode_n = 3;
    double s_max = 1000.0, rel_tol = 1e-10;
    std::string tail = "derived";
    bool samples = false;
    auto* ode = app.add_subcommand("ode", "integrate the radial potential ODE");
    ode->add_option("--n", ode_n, "complex dimension")->required();
    ode->add_option("--s-max,--smax", s_max, "integration end point (>= 100)");
    ode->add_option("--rel-tol,--rtol", rel_tol, "relative tolerance (<= 1e-8)");
    ode->add_option("--tail", tail, "derived | literal")->check(CLI::IsMember({"derived", "literal"}));
    ode->add_flag("--samples", samples, "include the sampled trajectory");

    int ledger_n = 2;
    std::string delta, delta_model;
    auto* ledger = app.add_subcommand("ledger", "exact exponent ledger of the gluing estimates");
    ledger->add_option("--n", ledger_n, "complex dimension")->required();
    ledger->add_option("--delta", delta, "weight, rational p/q")->required();
    ledger->add_option("--delta-model", delta_model, "model-side weight (default: window midpoint)");

    int match_n = 0, gamma_max = 20;
    auto* match = app.add_subcommand("match", "Cauchy-data map per harmonic mode");
    match->add_option("--n", match_n, "complex dimension (0: sweep 2..5)");
    match->add_option("--gamma-max", gamma_max, "largest harmonic degree");

    std::vector<int> criteria;
    bool timings = false;
    auto* suite = app.add_subcommand("paper-suite", "run every acceptance check and summarize");
    suite->add_option("--criteria", criteria, "subset of criteria 1..10, comma separated")->delimiter(',');
    suite->add_flag("--timings", timings, "include wall-clock times (breaks byte-identical output)");

    for (auto* sub : {check, search, catalog, ode, ledger, match, suite}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Output o;
        if (*check) o = cmd_check(g, rank_tol, lp_tol);
        else if (*search) o = cmd_search(g, method, search_m, search_n, max_tries, trials);
        else if (*catalog) o = cmd_catalog(ids, cat_n, alpha, beta);
        else if (*ode) o = cmd_ode(g, ode_n, s_max, rel_tol, tail, samples);
        else if (*ledger) o = cmd_ledger(ledger_n, delta, delta_model);
        else if (*match) o = cmd_match(match_n ? match_n : 2, match_n ? match_n : 5, gamma_max);
        else o = cmd_suite(g, criteria, timings);
        emit(g, o);
        return o.status;
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_status(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
