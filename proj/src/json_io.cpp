#include "blowup/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& require_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
    return j.at(key);
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
    return j.get<int>();
}

SignedPermutation parse_signed_permutation(const Json& j, int size) {
    SignedPermutation s = SignedPermutation::identity(size);
    if (!j.is_object()) parse_error("group element part must be an object");
    if (j.contains("perm")) {
        const Json& p = j.at("perm");
        if (!p.is_array() || static_cast<int>(p.size()) != size) parse_error("perm has the wrong length");
        for (int k = 0; k < size; ++k) s.perm[static_cast<std::size_t>(k)] = as_int(p[static_cast<std::size_t>(k)], "perm entry");
    }
    if (j.contains("phase")) {
        const Json& p = j.at("phase");
        if (!p.is_array() || static_cast<int>(p.size()) != size) parse_error("phase has the wrong length");
        for (int k = 0; k < size; ++k) s.phase[static_cast<std::size_t>(k)] = parse_complex(p[static_cast<std::size_t>(k)]);
    }
    return s;
}

std::string base_name(const std::string& s) {
    const auto pos = s.find_last_of('/');
    return pos == std::string::npos ? s : s.substr(pos + 1);
}

}  // namespace

Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    parse_error("expected a number or a [re, im] pair, got " + j.dump());
}

ModelManifold parse_manifold(const Json& j) {
    if (!j.is_array() || j.empty()) parse_error("manifold must be a non-empty array of factors");
    std::vector<Factor> factors;
    for (const Json& f : j) {
        const std::string type = require_key(f, "type").get<std::string>();
        if (type == "projective") {
            factors.push_back(Factor::projective(as_int(require_key(f, "n"), "n")));
        } else if (type == "rigid") {
            factors.push_back(Factor::rigid(f.contains("dim") ? as_int(f.at("dim"), "dim") : 1));
        } else {
            parse_error("unknown factor type '" + type + "'");
        }
    }
    return ModelManifold(std::move(factors));
}

SymmetryGroup parse_group(const Json& j, const ModelManifold& m) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "trivial") return SymmetryGroup::trivial(m);
        if (name == "sign_flips") return SymmetryGroup::sign_flips(m);
        if (name == "coordinate_permutations") return SymmetryGroup::coordinate_permutations(m);
        parse_error("unknown group preset '" + name + "'");
    }
    std::vector<int> sizes;
    for (const auto& f : m.factors())
        if (f.is_projective()) sizes.push_back(f.dim + 1);
    std::vector<GroupElement> gens;
    for (const Json& g : require_key(j, "generators")) {
        GroupElement e;
        // a single object is accepted when there is one projective factor
        const Json parts = g.is_object() ? Json::array({g}) : g;
        if (!parts.is_array() || parts.size() != sizes.size())
            parse_error("generator needs one part per projective factor");
        for (std::size_t i = 0; i < sizes.size(); ++i) e.parts.push_back(parse_signed_permutation(parts[i], sizes[i]));
        gens.push_back(std::move(e));
    }
    return SymmetryGroup::generated_by(m, gens);
}

ConfigPoint parse_point(const Json& j, const ModelManifold& m) {
    const auto projective = [](const Json& coords) {
        if (!coords.is_array() || coords.empty()) parse_error("projective component must be a coordinate array");
        Eigen::VectorXcd z(static_cast<Eigen::Index>(coords.size()));
        for (std::size_t k = 0; k < coords.size(); ++k) z[static_cast<Eigen::Index>(k)] = parse_complex(coords[k]);
        return ProjectivePoint(z);
    };
    ConfigPoint p;
    if (j.is_array()) {
        if (m.factor_count() != 1) parse_error("bare coordinate lists need a single-factor manifold");
        p = ConfigPoint(projective(j));
    } else {
        std::vector<PointComponent> comps;
        for (const Json& c : require_key(j, "components")) {
            if (c.is_string()) comps.emplace_back(RigidPoint{c.get<std::string>()});
            else comps.emplace_back(projective(c));
        }
        p = ConfigPoint(std::move(comps));
    }
    p.check_compatible(m);
    return p;
}

RunConfig parse_config(const Json& j) {
    if (!j.is_object()) parse_error("configuration must be a JSON object");
    RunConfig cfg;
    cfg.raw = j;
    try {
        if (j.contains("manifold")) cfg.manifold = parse_manifold(j.at("manifold"));
        if (j.contains("group")) {
            if (!cfg.manifold) parse_error("group given without a manifold");
            cfg.group = parse_group(j.at("group"), *cfg.manifold);
        }
        if (j.contains("basis")) {
            const std::string b = j.at("basis").get<std::string>();
            if (b == "full") cfg.basis = BasisKind::Full;
            else if (b == "invariant") cfg.basis = BasisKind::Invariant;
            else parse_error("basis must be 'full' or 'invariant'");
        }
        if (cfg.basis == BasisKind::Invariant && !cfg.group) parse_error("invariant basis needs a group");
        cfg.equivariant = j.value("equivariant", false);
        if (cfg.equivariant && !cfg.group) parse_error("equivariant check needs a group");
        if (j.contains("points")) {
            if (!cfg.manifold) parse_error("points given without a manifold");
            for (const Json& p : j.at("points")) cfg.points.push_back(parse_point(p, *cfg.manifold));
        }
        if (j.contains("tolerances")) {
            const Json& t = j.at("tolerances");
            cfg.tolerances.rank_tol = t.value("rank", cfg.tolerances.rank_tol);
            cfg.tolerances.tol_pos = t.value("lp", cfg.tolerances.tol_pos);
            cfg.ode_rel_tol = t.value("ode_rel_tol", cfg.ode_rel_tol);
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        parse_error(std::string("malformed configuration: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open configuration file " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        parse_error("invalid JSON in " + base_name(path) + ": " + e.what());
    }
    return parse_config(j);
}

KernelBasis config_basis(const RunConfig& cfg) {
    if (!cfg.manifold) throw Error(ErrorCode::Parse, "configuration has no manifold");
    KernelBasis full = product_kernel_basis(*cfg.manifold);
    if (cfg.basis == BasisKind::Invariant) {
        InvariantOptions o;
        o.seed = cfg.seed;
        return invariant_subbasis(full, *cfg.group, o);
    }
    return full;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json to_json(const Complex& z) {
    if (z.imag() == 0.0) return z.real();
    return Json::array({z.real(), z.imag()});
}

Json to_json(const ConfigPoint& p) {
    Json comps = Json::array();
    for (const auto& c : p.components()) {
        if (const auto* r = std::get_if<RigidPoint>(&c)) {
            comps.push_back(r->label);
        } else {
            Json coords = Json::array();
            for (const Complex& z : std::get<ProjectivePoint>(c).coords()) coords.push_back(to_json(z));
            comps.push_back(coords);
        }
    }
    if (comps.size() == 1 && comps[0].is_array()) return comps[0];
    return Json{{"components", comps}};
}

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(x);
    return out;
}

namespace {

// JSON has no infinity; the infeasible margin is written as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const AdmissibilityReport& r) {
    Json j;
    j["d"] = r.d;
    j["m"] = r.m;
    j["row_labels"] = r.row_labels;
    j["matrix"] = to_json(r.matrix);
    j["c1"] = r.c1;
    j["kernel_dim"] = r.kernel_dim;
    j["c2_status"] = to_string(r.c2_status);
    j["c2_positive"] = r.c2_positive;
    j["margin"] = finite_or_null(r.margin);
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    j["residual"] = r.residual;
    j["a0"] = r.a0 ? Json(*r.a0) : Json(nullptr);
    j["cn"] = r.cn ? Json(*r.cn) : Json(nullptr);
    j["verdict"] = r.verdict ? "admissible" : "not_admissible";
    return j;
}

Json to_json(const EquivariantReport& r) {
    Json j;
    j["invariant_labels"] = r.invariant_basis.labels();
    j["orbit_sizes"] = r.orbit_sizes;
    j["reduced"] = to_json(r.reduced);
    j["full"] = to_json(r.full);
    j["consistent"] = r.consistent;
    return j;
}

Json to_json(const ModelManifold& m) {
    Json j = Json::array();
    for (const auto& f : m.factors()) {
        if (f.is_projective()) j.push_back({{"type", "projective"}, {"n", f.dim}});
        else j.push_back({{"type", "rigid"}, {"dim", f.dim}});
    }
    return j;
}

Json to_json(const SymmetryGroup& g) {
    // every element listed as a generator; closure gives back the same group
    Json gens = Json::array();
    for (const auto& e : g.elements()) {
        Json parts = Json::array();
        for (const auto& s : e.parts) {
            Json phase = Json::array();
            for (const auto& z : s.phase) phase.push_back(to_json(z));
            parts.push_back({{"perm", s.perm}, {"phase", phase}});
        }
        gens.push_back(parts);
    }
    return {{"generators", gens}};
}

Json to_json(const CatalogEntry& e) {
    Json j;
    j["id"] = e.id;
    j["params"] = {{"n", e.params.n}, {"alpha", e.params.alpha}, {"beta", e.params.beta}};
    j["title"] = e.title;
    j["claim"] = e.claim;
    j["manifold"] = to_json(e.config.manifold());
    j["group"] = e.config.group ? to_json(*e.config.group) : Json(nullptr);
    Json pts = Json::array();
    for (const auto& p : e.config.points) pts.push_back(to_json(p));
    j["points"] = pts;
    j["report"] = to_json(e.report);
    j["displayed_matrix"] = e.displayed_matrix ? to_json(*e.displayed_matrix) : Json(nullptr);
    Json diff;
    diff["matrix_match"] = to_string(e.diff.matrix_match);
    Json entries = Json::array();
    for (const auto& [r, c] : e.diff.differing_entries) entries.push_back(Json::array({r, c}));
    diff["differing_entries"] = entries;
    diff["rank_match"] = e.diff.rank_match;
    diff["verdict_match"] = e.diff.verdict_match;
    diff["expected_rank"] = e.expected_rank;
    diff["claimed_verdict"] = e.claimed_verdict;
    diff["witness_error"] = e.diff.witness_error ? Json(*e.diff.witness_error) : Json(nullptr);
    diff["displayed_witness_residual"] =
        e.diff.displayed_witness_residual ? Json(*e.diff.displayed_witness_residual) : Json(nullptr);
    j["comparison"] = diff;
    if (e.equivariant) j["equivariant"] = to_json(*e.equivariant);
    j["notes"] = e.notes;
    return j;
}

Json to_json(const EstimateLedger& l) {
    Json j;
    j["n"] = l.n;
    j["delta"] = to_string(l.delta);
    j["delta_model"] = to_string(l.delta_model);
    j["r_exponent"] = to_string(r_exponent(l.n));
    j["big_r_exponent"] = to_string(big_r_exponent(l.n));
    Json rows = Json::array();
    for (const auto& e : l.entries) {
        rows.push_back({{"name", e.inequality.name},
                        {"side", e.inequality.side == WeightSide::Base ? "base" : "model"},
                        {"relation", to_string(e.inequality.relation)},
                        {"lhs", e.inequality.lhs.str()},
                        {"rhs", e.inequality.rhs.str()},
                        {"delta", to_string(e.delta)},
                        {"lhs_exponent", to_string(e.lhs_exponent)},
                        {"rhs_exponent", to_string(e.rhs_exponent)},
                        {"gap", to_string(e.gap)},
                        {"pass", e.pass},
                        {"in_window", e.in_window},
                        {"claim", e.inequality.claim}});
    }
    j["entries"] = rows;
    j["all_pass"] = l.all_pass();
    return j;
}

Json to_json(const PoissonMap& p) {
    return {{"gamma", p.gamma},
            {"n", p.n},
            {"restricted", p.restricted},
            {"matrix", to_json(p.matrix)},
            {"determinant", p.determinant},
            {"condition", p.condition}};
}

Json to_json(const RadialSolution& s) {
    return {{"side", to_string(s.side)},
            {"n", s.n},
            {"gamma", s.gamma},
            {"exponents", {s.exponent[0], s.exponent[1]}},
            {"coefficients", {s.coefficient[0], s.coefficient[1]}}};
}

Json envelope(const std::string& command, const Json& config_echo, const Json& body) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["tool"] = "blowup";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config_echo;
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    return j;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string Table::csv() const {
    std::ostringstream os;
    const auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

std::string Table::text() const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    std::ostringstream os;
    const auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

void write_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Precondition, "cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw Error(ErrorCode::Precondition, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(ErrorCode::Precondition, "cannot move report into place: " + ec.message());
    }
}

}  // namespace blowup
