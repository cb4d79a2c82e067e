#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crossext/hopf.hpp"
#include "crossext/linalg.hpp"
#include "crossext/rings.hpp"

namespace crossext::repth {

/// A finite-dimensional module over an algebra given by structure constants:
/// one complex action matrix per algebra basis element.
struct HModule {
    int dim = 0;
    std::vector<linalg::CMatrix> action; // size = algebra dim

    void check_shape(int algebra_dim) const;
};

/// Relative tolerance check that the action respects the multiplication
/// structure constants and that the unit acts as the identity.
ValidationReport verify_module(const hopf::HopfAlgebra& h, const HModule& m,
                               double rel_tol = 1e-8);

HModule regular_module(const hopf::HopfAlgebra& h);
HModule trivial_module(const hopf::HopfAlgebra& h);

/// Restrict a module to a subalgebra basis (columns over the rationals); the
/// result is a module over subhopf-ordered basis elements. Throws when the
/// basis is not closed under multiplication.
HModule restrict_module(const hopf::HopfAlgebra& h, const hopf::QMatrix& sub_basis,
                        const HModule& m);

/// Tensor product via the comultiplication composed with Kronecker products.
HModule tensor_modules(const hopf::HopfAlgebra& h, const HModule& a, const HModule& b);

/// dim of the intertwiner space {f : f rho_M(x) = rho_N(x) f for all x},
/// computed from a generating subset of the algebra.
int hom_space(const hopf::HopfAlgebra& h, const HModule& m, const HModule& n,
              const linalg::Tolerance& tol = {});

struct Decomposition {
    std::vector<HModule> simples;     // pairwise non-isomorphic, canonical order
    std::vector<int> multiplicities;  // aligned with simples
};

/// Full decomposition into simples by recursive generalized-eigenspace
/// splitting of random commutant elements. Seed-stable output: simples are
/// keyed and ordered by (dim, rounded character vector).
Decomposition decompose_module(const hopf::HopfAlgebra& h, const HModule& m, std::uint64_t seed = 0,
                               const linalg::Tolerance& tol = {});

/// Greedy deterministic generating subset of the algebra basis (indices);
/// commutant and hom computations only need intertwining with these.
std::vector<int> algebra_generators(const hopf::HopfAlgebra& h);

/// Trace character of a module on every algebra basis element.
std::vector<linalg::cplx> character(const HModule& m);

struct FusionData {
    rings::BasedRing ring;
    std::vector<HModule> simples;              // aligned with ring basis
    std::vector<std::vector<linalg::cplx>> characters;
};

/// Simple modules from the regular module, fusion coefficients by expanding
/// tensor characters in the (linearly independent) simple characters, unit
/// located via the counit character, duals via N_{xy}^1. Multiplicities pass
/// the |m - round(m)| <= round_eps gate.
FusionData fusion_data_of_hopf(const hopf::HopfAlgebra& h, std::uint64_t seed = 0,
                               const linalg::Tolerance& tol = {});

rings::BasedRing fusion_ring_of_hopf(const hopf::HopfAlgebra& h, std::uint64_t seed = 0,
                                     const linalg::Tolerance& tol = {});

/// Indices (into data.simples) of the simples whose restriction to the
/// subalgebra is a multiple of its trivial module eps.
std::vector<int> kernel_simples(const hopf::HopfAlgebra& h, const hopf::QMatrix& sub_basis,
                                const FusionData& data, double rel_tol = 1e-8);

/// Half-braiding block-support data on a skeletal model with invertible
/// simples X_g: sigma_blocks[x][g] = h means the block X_g (x) X -> X (x) X_h
/// of sigma_X is nonzero.
struct AutGradingInput {
    std::vector<int> invertible_blocks;         // g -> simple id of X_g
    std::vector<std::vector<int>> sigma_blocks; // per simple: G -> G block support
    std::optional<rings::BasedRing> ring;       // fusion ring on the same simple ids
};

struct AutGradingResult {
    rings::GradingMap grading;                   // into the Aut-image permutation group
    std::vector<std::vector<int>> automorphisms; // per simple: the automorphism of G
    std::vector<int> neutral_support;            // simples with trivial automorphism
};

/// The automorphism grading induced by half-braiding block data: the degree of
/// X is the inverse of its block-support bijection, which is verified to be a
/// group automorphism; the degrees generate a permutation group and, when a
/// ring is supplied, pass check_grading against it.
AutGradingResult aut_grading(const AutGradingInput& input, const groups::CayleyGroup& g);

/// Skeletal model of the category of G-graded vector spaces: sigma blocks of
/// X_h map g to h^{-1} g h.
AutGradingInput vector_model_input(const groups::CayleyGroup& g);

} // namespace crossext::repth
