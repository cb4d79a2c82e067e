#pragma once

#include <optional>
#include <vector>

#include "crossext/groups.hpp"
#include "crossext/report.hpp"

namespace crossext::matched {

/// A matched pair of finite groups (G, Gamma) with mutual actions stored as
/// dense index tables. rhd[s][g] is the G-element s |> g; lhd[s][g] is the
/// Gamma-element s <| g.
///
/// Convention (fixed globally): products in an ambient factorization are
/// written s * g = (s |> g)(s <| g) with the G-factor on the left of the
/// result, matching the bicrossed multiplication
/// (g, s)(h, t) = (g (s |> h), (s <| h) t). The opposite convention silently
/// transposes the two actions.
struct MatchedPair {
    groups::CayleyGroup G;
    groups::CayleyGroup Gamma;
    std::vector<std::vector<int>> rhd; // [s][g] -> index in G
    std::vector<std::vector<int>> lhd; // [s][g] -> index in Gamma

    int rhd_at(int s, int g) const { return rhd[s][g]; }
    int lhd_at(int s, int g) const { return lhd[s][g]; }
    void check_shape() const;
};

MatchedPair trivial_pair(const groups::CayleyGroup& g, const groups::CayleyGroup& gamma);

/// Exhaustive check of the matched-pair axioms: both action laws, both unit
/// conditions (s |> e = e, e <| g = e), both compatibility identities, and
/// bijectivity of s |> - and - <| g. Every violation is reported with a
/// witness tuple.
ValidationReport verify_matched_pair(const MatchedPair& mp);

/// Extract the actions from an exact factorization L = G * Gamma by factoring
/// s * g = h * t uniquely with h in G, t in Gamma. The returned pair uses the
/// subgroup member orders for its indices.
MatchedPair from_exact_factorization(const groups::CayleyGroup& l, const groups::Subgroup& g,
                                     const groups::Subgroup& gamma);

struct BicrossedGroup {
    groups::CayleyGroup group;      // order |G| * |Gamma|, index (g, s) = g*|Gamma| + s
    groups::Subgroup g_factor;      // G x 1
    groups::Subgroup gamma_factor;  // 1 x Gamma
    int pair_index(int g, int s) const;
};

/// Raw candidate multiplication table of G x Gamma under
/// (g, s)(h, t) = (g (s |> h), (s <| h) t); no validity assumptions.
std::vector<int> bicrossed_candidate_table(const MatchedPair& mp);

/// Full group validation (associativity, identity (e, e), inverses) of the
/// candidate table. Passing is equivalent to the matched-pair axioms.
ValidationReport bicrossed_candidate_group_check(const MatchedPair& mp);

/// Build the group G |><| Gamma. Requires verify_matched_pair to pass; the
/// result is fully validated and the two factors are verified to give an
/// exact factorization.
BicrossedGroup bicrossed_group(const MatchedPair& mp);

struct Factorization {
    groups::Subgroup g_sub;
    groups::Subgroup gamma_sub;
    MatchedPair pair;
};

/// All ordered subgroup pairs (G, Gamma) of L with L = G * Gamma exactly,
/// each with its extracted matched pair. Includes the two trivial pairs.
std::vector<Factorization> enumerate_exact_factorizations(const groups::CayleyGroup& l,
                                                          int order_bound = 120);

/// The embedding homomorphism (h, t) -> h * t from bicrossed_group(pair) into
/// the ambient group of the factorization; returns the image table if it is a
/// bijective homomorphism, std::nullopt otherwise.
std::optional<std::vector<int>> embedding_isomorphism(const groups::CayleyGroup& l,
                                                      const groups::Subgroup& g,
                                                      const groups::Subgroup& gamma,
                                                      const MatchedPair& mp);

} // namespace crossext::matched
