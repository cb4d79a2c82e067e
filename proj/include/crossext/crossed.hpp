#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "crossext/linalg.hpp"
#include "crossext/matched.hpp"
#include "crossext/rings.hpp"

namespace crossext::crossed {

/// A crossed action of a matched pair on skeletal fusion-ring data: a
/// Gamma-grading of the base ring and a right G-action by basis permutations
/// rho[g], compatible through the twisted multiplicativity rule.
struct CrossedActionData {
    matched::MatchedPair mp;
    rings::BasedRing base;              // K(C)
    std::vector<int> deg;               // basis index -> Gamma index
    std::vector<std::vector<int>> rho;  // [g][basis] -> basis

    void check_shape() const;
    bool is_pointed() const; // base = Z[Gamma] with deg the identity
};

/// Exhaustive check: the embedded matched pair, the Gamma-grading, rho a
/// right action by permutations fixing the unit, the degree rule
/// deg(rho^g(x)) = deg(x) <| g, and twisted multiplicativity
/// N_{rho^{t|>g}(x), rho^g(y)}^{rho^g(z)} = N_{x,y}^z for deg(y) = t.
ValidationReport verify_crossed_action(const CrossedActionData& d);

/// The pointed crossed action on Z[Gamma]: deg = id, rho^g(s) = s <| g.
CrossedActionData pointed_crossed_from_matched_pair(const matched::MatchedPair& mp);

/// An object of the equivariantization over pointed data: a Gamma-graded
/// space with one structure matrix per G-element on the total space. r[g]
/// carries the degree-s component into degree s <| g and composes as
/// r[g] r[h] = r[hg] (right action); r[e] = id.
struct EquivariantObject {
    std::vector<int> dims;             // per Gamma degree
    std::vector<linalg::CMatrix> r;    // per G element, total_dim x total_dim

    int total_dim() const;
    int offset(int s) const; // start of the degree-s block
};

ValidationReport validate_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                      const linalg::Tolerance& tol = {});

EquivariantObject unit_object(const CrossedActionData& d);

/// Graded tensor product: dims convolve over Gamma; on the block where the
/// right factor has degree s, the new structure map is
/// r_X(s |> g) (x) r_Y(g).
EquivariantObject tensor_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                     const EquivariantObject& y);

/// dim of the space of degree-preserving maps f with f r_X(g) = r_Y(g) f.
int hom_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                    const EquivariantObject& y, const linalg::Tolerance& tol = {});

/// Induced object of a <|-orbit: the orbit-supported space with the regular
/// stabilizer action; every simple supported on the orbit appears in it.
EquivariantObject induced_object(const CrossedActionData& d, const std::vector<int>& orbit);

/// Direct sum of the induced objects of all <|-orbits.
EquivariantObject regular_object(const CrossedActionData& d);

struct EqDecomposition {
    std::vector<EquivariantObject> simples;
    std::vector<int> multiplicities;
};

/// Recursive splitting along generalized eigenspaces of random commutant
/// elements until every summand has scalar commutant.
EqDecomposition decompose_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                      std::uint64_t seed = 0, const linalg::Tolerance& tol = {});

/// The fusion ring of the equivariantization: simples enumerated from induced
/// objects, products decomposed pairwise, unit the trivial object, duals via
/// Hom(X (x) Y, 1) = 1. Pointed data only; validates Sum FPdim^2 = |G||Gamma|.
rings::BasedRing equivariantization_ring(const CrossedActionData& d, std::uint64_t seed = 0,
                                         const linalg::Tolerance& tol = {});

/// The G |><| Gamma-graded ring on basis G x basis(K(C)) with product
/// (g, x)(h, y) = (g (deg(x) |> h), rho^h(x) y) and degree (g, deg x).
std::pair<rings::BasedRing, rings::GradingMap> dual_graded_ring(const CrossedActionData& d);

} // namespace crossext::crossed
