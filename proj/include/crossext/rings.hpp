#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossext/groups.hpp"
#include "crossext/report.hpp"

namespace crossext::rings {

/// A based ring: distinguished basis with unit, duality involution and
/// non-negative integer structure constants N_{xy}^z stored sparsely.
struct BasedRing {
    std::vector<std::string> labels;
    int unit = 0;
    std::vector<int> dual;
    /// prod[x * n + y] = sorted list of (z, N_{xy}^z) with N >= 1
    std::vector<std::vector<std::pair<int, int>>> prod;

    int size() const { return int(labels.size()); }
    const std::vector<std::pair<int, int>>& product(int x, int y) const {
        return prod[std::size_t(x) * labels.size() + y];
    }
    int mult(int x, int y, int z) const;
    void check_shape() const;

    /// Build from sparse entries [x, y, z, m]; entries with equal (x,y,z) add.
    static BasedRing from_sparse(std::vector<std::string> labels, int unit, std::vector<int> dual,
                                 const std::vector<std::array<int, 4>>& entries);
};

/// Exhaustive validation of associativity, unit, rigidity and dual
/// compatibility, with witnesses.
ValidationReport verify_based_ring(const BasedRing& r);

/// Frobenius-Perron dimensions: the largest eigenvalue of each left
/// multiplication matrix, by (shifted) power iteration.
std::vector<double> fp_dimensions(const BasedRing& r, double rel_tol = 1e-10,
                                  int max_iter = 100000);

/// A grading map into a finite group: deg respects products, unit and duals.
struct GradingMap {
    groups::CayleyGroup group;
    std::vector<int> deg; // basis index -> group index
};

bool check_grading(const BasedRing& r, const GradingMap& g);

/// The universal (finest faithful) grading, computed by congruence closure of
/// the relation merging basis elements that co-occur in a product.
GradingMap universal_grading(const BasedRing& r);

struct CentralSeries {
    std::vector<std::vector<int>> chain; // C^(0) = all, descending, last = stabilized
    bool nilpotent = false;
    std::optional<int> nilpotency_class;
};

/// Iterated adjoint subrings C^(n+1) = <x x* supports over C^(n)>; nilpotent
/// when the chain reaches {unit}.
CentralSeries upper_central_series(const BasedRing& r);

BasedRing group_ring(const groups::CayleyGroup& g);

/// Adjoint support of the full ring, i.e. step one of the central series.
std::vector<int> adjoint_support(const BasedRing& r);

enum class IsoStatus { found, none, undecided };

struct IsoResult {
    IsoStatus status = IsoStatus::none;
    std::vector<int> bijection; // source index -> target index when found
};

/// Backtracking search for a basis bijection preserving unit, dual and all
/// structure constants, pruned on (rounded FPdim, dual-orbit type, sorted
/// self-product multiset). Returns the lexicographically least bijection.
/// Throws TimeoutError past timeout_ms (undecided, distinct from none).
IsoResult based_ring_isomorphism(const BasedRing& r, const BasedRing& s, int timeout_ms = 10000);

} // namespace crossext::rings
