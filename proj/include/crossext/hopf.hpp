#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossext/groups.hpp"
#include "crossext/matched.hpp"
#include "crossext/report.hpp"

namespace crossext::hopf {

using Q = mpq_class;

/// Sparse rational vector, sorted by index, nonzero entries only.
using QVec = std::vector<std::pair<int, Q>>;

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_scale(const QVec& a, const Q& c);
bool qvec_is_zero(const QVec& a);

/// Dense rational matrix (column vectors represent elements in H coords).
struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<Q> a;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}
    Q& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const Q& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }
    static QMatrix identity(int n);
    QMatrix col(int j) const;
};

QMatrix qmat_mul(const QMatrix& a, const QMatrix& b);
bool qmat_equal(const QMatrix& a, const QMatrix& b);
int qrank(QMatrix m);

/// Incremental exact row-reduced span; the workhorse for closures and
/// subspace comparisons over the rationals.
class QSpan {
public:
    /// returns true when the vector enlarged the span
    bool add(const std::vector<Q>& v);
    bool contains(const std::vector<Q>& v) const;
    std::vector<Q> reduce(const std::vector<Q>& v) const;
    int rank() const { return int(rows_.size()); }
    const std::vector<std::vector<Q>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    std::vector<std::vector<Q>> rows_; // reduced, leading entry 1
    std::vector<int> pivots_;          // leading column per row
};

/// A finite-dimensional Hopf algebra as exact structure tensors on a fixed
/// basis b_0..b_{d-1}:
///   m[i*d+j]   = b_i b_j,
///   delta[i]   = sum of coefficients on pairs (j,k) encoded as j*d+k,
///   counit     = dense functional,
///   antipode[i]= S(b_i).
struct HopfAlgebra {
    int dim = 0;
    std::vector<QVec> m;
    QVec unit;
    std::vector<QVec> delta;
    std::vector<Q> counit;
    std::vector<QVec> antipode;
    std::vector<std::string> basis_names;

    void check_shape() const;
    QVec mul_vec(const QVec& x, const QVec& y) const;
    QVec apply_antipode(const QVec& x) const;
    Q counit_of(const QVec& x) const;
};

/// Exact verification of all six identity families (associativity, unit,
/// coassociativity, counit, bialgebra compatibility, antipode). With
/// early_exit the scan stops at the first failure.
ValidationReport verify_hopf_axioms(const HopfAlgebra& h, bool early_exit = false);

HopfAlgebra group_algebra(const groups::CayleyGroup& g);
HopfAlgebra dual_hopf(const HopfAlgebra& h);
HopfAlgebra dual_group_algebra(const groups::CayleyGroup& g);

bool is_commutative(const HopfAlgebra& h);
bool is_cocommutative(const HopfAlgebra& h);

/// Bicrossed product k^Gamma # kG of a matched pair with trivial cocycles,
/// basis e_s # g at index s*|G| + g. Requires a valid matched pair; the
/// result is checked against all Hopf axioms.
HopfAlgebra kac_bicrossed(const matched::MatchedPair& mp);

/// The same candidate tensors built from raw tables with no validity
/// assumption (axiom checking is the caller's business).
HopfAlgebra kac_bicrossed_candidate(const matched::MatchedPair& mp);

struct KacSequence {
    HopfAlgebra sub;   // k^Gamma
    QMatrix inj;       // dim x |Gamma|
    HopfAlgebra quot;  // kG
    QMatrix proj;      // |G| x dim
};

KacSequence canonical_kac_sequence(const matched::MatchedPair& mp, const HopfAlgebra& h);

/// Verify k -> sub -> H -> quot -> k: Hopf-map structure of inj and proj,
/// injectivity/surjectivity, ker(proj) = H * inj(sub)^+, and
/// inj(sub) = co-invariants of proj.
ValidationReport exact_sequence_check(const HopfAlgebra& h, const HopfAlgebra& sub,
                                      const QMatrix& inj, const HopfAlgebra& quot,
                                      const QMatrix& proj);

/// Right comodule validity: coassociativity and counit of a coaction matrix
/// delta_V: V -> V (x) H given as a (v*d) x v matrix over pairs (i,k) = i*d+k.
ValidationReport verify_comodule(const HopfAlgebra& h, const QMatrix& coaction);

/// The half-braiding sigma_V: H (x) V -> V (x) H,
/// sigma(b (x) v) = v0 (x) S(v1) b v2, as an exact (v*d) x (d*v) matrix
/// (input index i*v+j for b_i (x) v_j, output index i*d+k for v_i (x) b_k).
QMatrix half_braiding_sigma(const HopfAlgebra& h, const QMatrix& coaction);

/// Regular comodule coaction (V = H via its comultiplication).
QMatrix regular_coaction(const HopfAlgebra& h);

/// (sigma_A squared == identity, H commutative); the two booleans agree for
/// every valid H.
std::pair<bool, bool> symmetric_central_algebra_test(const HopfAlgebra& h);

enum class FactorType { commutative, cocommutative, both };

struct SeriesCertificate {
    bool ok = false;
    std::vector<FactorType> factors;
    std::string failure; // names the failing step and condition when !ok
};

std::string factor_type_name(FactorType t);

/// Certify a lower subnormal series H = K_0 >= K_1 >= ... >= K_n = k given by
/// basis matrices for K_1..K_n: each step must be a Hopf subalgebra, normal in
/// its predecessor, and each quotient K_i/(K_i K_{i+1}^+) a Hopf algebra that
/// is commutative or cocommutative.
SeriesCertificate verify_subnormal_series(const HopfAlgebra& h, const std::vector<QMatrix>& chain);

/// Certify upper-semisolvability of H through a lower subnormal chain in its
/// dual.
SeriesCertificate upper_series_via_dual(const HopfAlgebra& h, const std::vector<QMatrix>& dual_chain);

/// Restrict H to a subspace basis; throws when the basis is not closed under
/// multiplication, unit, comultiplication and antipode.
HopfAlgebra subhopf_restrict(const HopfAlgebra& h, const QMatrix& basis);

/// Quotient by the ideal H * sub^+ (complement basis by reduced row echelon
/// pivoting); throws when the ideal is not a two-sided coideal stable under S.
HopfAlgebra quotient_hopf(const HopfAlgebra& h, const QMatrix& sub_basis);

} // namespace crossext::hopf
