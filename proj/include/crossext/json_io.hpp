#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "crossext/crossed.hpp"
#include "crossext/groups.hpp"
#include "crossext/hopf.hpp"
#include "crossext/linalg.hpp"
#include "crossext/matched.hpp"
#include "crossext/repth.hpp"
#include "crossext/rings.hpp"

namespace crossext::json_io {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
json parse_text(const std::string& text); // ParseError with diagnostics

/// {"degree": n, "generators": [[images]...], "order_bound"?}
groups::CayleyGroup parse_group(const json& j);

struct MatchedPairInput {
    matched::MatchedPair pair;
    // present when the pair came from {"ambient", "G_gens", "Gamma_gens"}
    std::optional<groups::CayleyGroup> ambient;
    std::optional<groups::Subgroup> g_sub, gamma_sub;
};

/// {"G", "Gamma", "rhd", "lhd"} or {"ambient", "G_gens", "Gamma_gens"};
/// subgroup generators are element indices or permutation image arrays.
MatchedPairInput parse_matched_pair(const json& j);

/// {"labels", "unit", "dual", "N": [[x,y,z,m]...]}
rings::BasedRing parse_based_ring(const json& j);
json based_ring_to_json(const rings::BasedRing& r);

hopf::Q parse_rational(const json& j); // "p/q" string or integer
std::string rational_to_string(const hopf::Q& q);

/// Sparse tensors {"dim","m","u","delta","counit","s"} or one of the
/// constructors {"group_algebra": group}, {"dual_group_algebra": group},
/// {"kac": matched pair}.
hopf::HopfAlgebra parse_hopf(const json& j);
json hopf_to_json(const hopf::HopfAlgebra& h);

/// {"matched_pair", "ring", "deg", "rho"}; a bare matched pair (or a file
/// containing one) yields the pointed crossed action.
crossed::CrossedActionData parse_crossed(const json& j);

/// chain steps as lists of coordinate vectors (rationals), or "canonical"
/// inside a kac input (k^Gamma then the unit line).
std::vector<hopf::QMatrix> parse_chain(const json& j, int dim);

struct AutGradingFile {
    groups::CayleyGroup group;
    repth::AutGradingInput input;
};

/// {"group", "invertible_blocks", "sigma_blocks", "ring"?} or
/// {"vector_model": group}.
AutGradingFile parse_aut_grading(const json& j);

json module_to_json(const repth::HModule& m);
repth::HModule parse_module(const json& j, int algebra_dim);

json witnesses_to_json(const ValidationReport& rep);

/// Deterministic report skeleton: command, inputs, result, witnesses and a
/// provenance block (content hashes, seed, tolerances, library version).
json make_report(const std::string& command, const std::vector<std::string>& input_paths,
                 json result, json witnesses, std::uint64_t seed, const linalg::Tolerance& tol);

std::string render_markdown(const json& report);

} // namespace crossext::json_io
