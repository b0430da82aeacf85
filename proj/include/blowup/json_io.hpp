#pragma once

// Configuration files and report serialization.
//
// A configuration is a JSON object:
//
//   {
//     "manifold": [{"type": "projective", "n": 2}, {"type": "rigid", "dim": 1}],
//     "group": "sign_flips" | "coordinate_permutations" | "trivial"
//              | {"generators": [[{"perm": [1, 0], "phase": [1, [0, -1]]}, ...], ...]},
//     "basis": "full" | "invariant",
//     "equivariant": false,
//     "points": [[1, 0, 0], {"components": [[1, [0, 1]], "q"]}],
//     "tolerances": {"rank": 1e-9, "lp": 1e-9, "ode_rel_tol": 1e-10},
//     "seed": 20070512
//   }
//
// A complex number is a real number or a [re, im] pair. A point is either a
// bare coordinate list (single projective factor) or an object listing one
// component per factor, a string standing for a rigid-factor label.

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blowup/admissibility.hpp"
#include "blowup/asymptotics.hpp"
#include "blowup/biharmonic.hpp"
#include "blowup/catalog.hpp"
#include "blowup/kernel_basis.hpp"
#include "blowup/point_search.hpp"
#include "blowup/simanca_ode.hpp"

namespace blowup {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

enum class BasisKind { Full, Invariant };

struct RunConfig {
    std::optional<ModelManifold> manifold;
    std::optional<SymmetryGroup> group;
    BasisKind basis = BasisKind::Full;
    /// Points are orbit representatives; check via the equivariant reduction.
    bool equivariant = false;
    std::vector<ConfigPoint> points;
    CheckOptions tolerances;
    double ode_rel_tol = 1e-10;
    std::uint64_t seed = kDefaultSeed;
    Json raw;
};

Complex parse_complex(const Json& j);
ModelManifold parse_manifold(const Json& j);
SymmetryGroup parse_group(const Json& j, const ModelManifold& m);
ConfigPoint parse_point(const Json& j, const ModelManifold& m);

/// Throws Error(Parse) on malformed input.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

/// The basis requested by the configuration (full, or G-invariant).
KernelBasis config_basis(const RunConfig& cfg);

Json to_json(const Complex& z);
Json to_json(const ConfigPoint& p);
/// Manifold and group in the configuration-file form, so output re-parses.
Json to_json(const ModelManifold& m);
Json to_json(const SymmetryGroup& g);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const AdmissibilityReport& r);
Json to_json(const EquivariantReport& r);
Json to_json(const CatalogEntry& e);
Json to_json(const EstimateLedger& l);
Json to_json(const PoissonMap& p);
Json to_json(const RadialSolution& s);

/// {"schema", "tool", "version", "command", "config", ...body}.
Json envelope(const std::string& command, const Json& config_echo, const Json& body);

/// Plain rows for CSV and text-table output.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const;
    std::string text() const;
};

/// Shortest round-trip decimal representation.
std::string format_double(double x);

/// Writes to a temporary file in the same directory and renames it over `path`.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace blowup
