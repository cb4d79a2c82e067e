#pragma once

#include <string>
#include <vector>

#include "crossext/error.hpp"
#include "crossext/report.hpp"

namespace crossext::groups {

inline constexpr int kDefaultOrderBound = 10080;

/// A finite group as an explicit multiplication table over indices 0..n-1.
/// Construction checks the Latin-square, identity and inverse structure;
/// full associativity is exhaustive and therefore bounded (see validate).
class CayleyGroup {
public:
    CayleyGroup();
    CayleyGroup(int order, std::vector<int> mul, int identity,
                std::vector<std::string> element_names = {});

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[std::size_t(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::vector<int>& mul_table() const { return mul_; }
    const std::vector<int>& inverse_table() const { return inv_; }
    const std::vector<std::string>& element_names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }

    bool is_abelian() const;
    int element_order(int a) const;

    /// Exhaustive validation report. Associativity is scanned in full when
    /// order^3 stays affordable (order <= full_assoc_limit), structural
    /// checks always run.
    ValidationReport validate(int full_assoc_limit = 400) const;

private:
    int order_ = 1;
    int identity_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
};

struct Subgroup {
    std::vector<int> members; // sorted ascending, contains identity

    int order() const { return int(members.size()); }
    bool contains(int x) const;
    /// position of ambient element x inside members, -1 if absent
    int index_of(int x) const;
};

/// Group generated by permutations of 0..degree-1. Permutations act on the
/// left; composition applies the right factor first. Element names record the
/// image arrays.
CayleyGroup from_permutation_generators(int degree, const std::vector<std::vector<int>>& generators,
                                        int order_bound = kDefaultOrderBound);

CayleyGroup cyclic_group(int n);
CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b);
CayleyGroup symmetric_group(int n, int order_bound = kDefaultOrderBound);

Subgroup subgroup_closure(const CayleyGroup& g, const std::vector<int>& seeds);
Subgroup center(const CayleyGroup& g);

/// Re-index a subgroup as a standalone CayleyGroup (member order preserved).
CayleyGroup subgroup_as_group(const CayleyGroup& g, const Subgroup& s);

int conjugacy_class_count(const CayleyGroup& g);

/// Small deterministic generating set (greedy closure).
std::vector<int> minimal_generating_set(const CayleyGroup& g);

struct OrbitData {
    std::vector<int> orbit;          // sorted points
    int stabilizer_order = 0;        // at the minimal point
    int stabilizer_class_count = 0;  // conjugacy classes inside the stabilizer
    std::vector<int> stabilizer;     // group elements fixing the minimal point
};

/// Orbit partition of a right action given as a table action[point][element].
/// Throws ValidationError with a witness triple when the action axioms fail.
std::vector<OrbitData> orbits_and_stabilizers(const CayleyGroup& g,
                                              const std::vector<std::vector<int>>& action);

/// True iff |G| * |Gamma| = |L| and the subgroups intersect trivially, which
/// makes (g, s) -> g*s a bijection onto L.
bool is_exact_factorization(const CayleyGroup& l, const Subgroup& g, const Subgroup& gamma);

/// All subgroups by the cyclic extension method: every cyclic subgroup, then
/// joins with cyclic subgroups to a fixpoint. Sorted by (order, members).
std::vector<Subgroup> all_subgroups(const CayleyGroup& g);

} // namespace crossext::groups
