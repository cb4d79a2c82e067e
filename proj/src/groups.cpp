#include "crossext/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace crossext::groups {

namespace {

std::string default_name(int i) { return "g" + std::to_string(i); }

std::string perm_name(const std::vector<int>& img) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (i) os << " ";
        os << img[i];
    }
    os << "]";
    return os.str();
}

} // namespace

CayleyGroup::CayleyGroup() : order_(1), identity_(0), mul_{0}, inv_{0}, names_{default_name(0)} {}

CayleyGroup::CayleyGroup(int order, std::vector<int> table, int identity,
                         std::vector<std::string> element_names)
    : order_(order), identity_(identity), mul_(std::move(table)), names_(std::move(element_names)) {
    if (order_ <= 0) throw ValidationError("CayleyGroup: order must be positive");
    if (mul_.size() != std::size_t(order_) * order_)
        throw ValidationError("CayleyGroup: multiplication table has wrong size");
    if (identity_ < 0 || identity_ >= order_) throw ValidationError("CayleyGroup: identity out of range");
    for (int v : mul_)
        if (v < 0 || v >= order_) throw ValidationError("CayleyGroup: table entry out of range");
    for (int a = 0; a < order_; ++a)
        if (mul(identity_, a) != a || mul(a, identity_) != a)
            throw ValidationError("CayleyGroup: designated identity is not two-sided at element " +
                                  std::to_string(a));
    inv_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0)
            throw ValidationError("CayleyGroup: element " + std::to_string(a) +
                                  " has no two-sided inverse");
    }
    if (names_.empty()) {
        names_.reserve(order_);
        for (int i = 0; i < order_; ++i) names_.push_back(default_name(i));
    }
    if (names_.size() != std::size_t(order_))
        throw ValidationError("CayleyGroup: name list has wrong size");
}

bool CayleyGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int CayleyGroup::element_order(int a) const {
    int x = a, n = 1;
    while (x != identity_) {
        x = mul(x, a);
        ++n;
        if (n > order_) throw ValidationError("element_order: no finite order (invalid table)");
    }
    return n;
}

ValidationReport CayleyGroup::validate(int full_assoc_limit) const {
    ValidationReport rep;
    // Latin square rows/columns
    for (int a = 0; a < order_; ++a) {
        std::vector<char> seen_row(order_, 0), seen_col(order_, 0);
        for (int b = 0; b < order_; ++b) {
            if (seen_row[mul(a, b)]++)
                rep.fail("latin-square", "row " + std::to_string(a) + " repeats value");
            if (seen_col[mul(b, a)]++)
                rep.fail("latin-square", "column " + std::to_string(a) + " repeats value");
        }
    }
    if (order_ <= full_assoc_limit) {
        for (int a = 0; a < order_ && rep.witnesses.size() < 64; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                        std::ostringstream os;
                        os << "(" << a << "," << b << "," << c << ")";
                        rep.fail("associativity", os.str());
                    }
    }
    return rep;
}

bool Subgroup::contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

int Subgroup::index_of(int x) const {
    auto it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x) return -1;
    return int(it - members.begin());
}

CayleyGroup from_permutation_generators(int degree, const std::vector<std::vector<int>>& generators,
                                        int order_bound) {
    if (degree <= 0) throw ValidationError("degree must be positive");
    for (const auto& g : generators) {
        if (int(g.size()) != degree)
            throw ValidationError("generator image array has wrong length");
        std::vector<char> seen(degree, 0);
        for (int v : g) {
            if (v < 0 || v >= degree || seen[v]++)
                throw ValidationError("generator is not a permutation of 0..degree-1");
        }
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);

    // BFS closure under composition; apply the right factor first.
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(degree);
        for (int i = 0; i < degree; ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            std::vector<int> next = compose(elems[head], g);
            if (index.emplace(next, int(elems.size())).second) {
                elems.push_back(next);
                if (int(elems.size()) > order_bound)
                    throw SizeBoundError("group closure exceeds order bound " +
                                         std::to_string(order_bound));
            }
        }
    }
    const int n = int(elems.size());
    std::vector<int> mul(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[std::size_t(a) * n + b] = index.at(compose(elems[a], elems[b]));
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& e : elems) names.push_back(perm_name(e));
    return CayleyGroup(n, std::move(mul), 0, std::move(names));
}

CayleyGroup cyclic_group(int n) {
    if (n <= 0) throw ValidationError("cyclic_group: n must be positive");
    std::vector<int> mul(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[std::size_t(a) * n + b] = (a + b) % n;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    return CayleyGroup(n, std::move(mul), 0, std::move(names));
}

CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b) {
    const int n = a.order() * b.order();
    std::vector<int> mul(std::size_t(n) * n);
    auto idx = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    mul[std::size_t(idx(x1, y1)) * n + idx(x2, y2)] =
                        idx(a.mul(x1, x2), b.mul(y1, y2));
    std::vector<std::string> names;
    for (int x = 0; x < a.order(); ++x)
        for (int y = 0; y < b.order(); ++y) names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
    return CayleyGroup(n, std::move(mul), idx(a.identity(), b.identity()), std::move(names));
}

CayleyGroup symmetric_group(int n, int order_bound) {
    if (n == 1) return from_permutation_generators(1, {});
    std::vector<std::vector<int>> gens;
    std::vector<int> cycle(n), swap01(n);
    for (int i = 0; i < n; ++i) {
        cycle[i] = (i + 1) % n;
        swap01[i] = i;
    }
    std::swap(swap01[0], swap01[1]);
    gens.push_back(cycle);
    if (n > 2) gens.push_back(swap01);
    return from_permutation_generators(n, gens, order_bound);
}

Subgroup subgroup_closure(const CayleyGroup& g, const std::vector<int>& seeds) {
    for (int s : seeds)
        if (s < 0 || s >= g.order()) throw ValidationError("subgroup_closure: seed out of range");
    std::vector<char> in(g.order(), 0);
    std::vector<int> queue{g.identity()};
    in[g.identity()] = 1;
    for (int s : seeds)
        if (!in[s]) {
            in[s] = 1;
            queue.push_back(s);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        int xi = g.inv(x);
        if (!in[xi]) {
            in[xi] = 1;
            queue.push_back(xi);
        }
        for (std::size_t k = 0; k < queue.size(); ++k) {
            int p = g.mul(x, queue[k]);
            if (!in[p]) {
                in[p] = 1;
                queue.push_back(p);
            }
            int q = g.mul(queue[k], x);
            if (!in[q]) {
                in[q] = 1;
                queue.push_back(q);
            }
        }
    }
    Subgroup s;
    for (int i = 0; i < g.order(); ++i)
        if (in[i]) s.members.push_back(i);
    return s;
}

Subgroup center(const CayleyGroup& g) {
    Subgroup s;
    for (int z = 0; z < g.order(); ++z) {
        bool central = true;
        for (int x = 0; x < g.order() && central; ++x)
            if (g.mul(z, x) != g.mul(x, z)) central = false;
        if (central) s.members.push_back(z);
    }
    return s;
}

CayleyGroup subgroup_as_group(const CayleyGroup& g, const Subgroup& s) {
    const int n = s.order();
    std::vector<int> mul(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int p = s.index_of(g.mul(s.members[a], s.members[b]));
            if (p < 0) throw ValidationError("subgroup_as_group: member set not closed");
            mul[std::size_t(a) * n + b] = p;
        }
    int e = s.index_of(g.identity());
    if (e < 0) throw ValidationError("subgroup_as_group: identity missing");
    std::vector<std::string> names;
    for (int m : s.members) names.push_back(g.name(m));
    return CayleyGroup(n, std::move(mul), e, std::move(names));
}

int conjugacy_class_count(const CayleyGroup& g) {
    std::vector<char> seen(g.order(), 0);
    int classes = 0;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        ++classes;
        for (int h = 0; h < g.order(); ++h) seen[g.mul(h, g.mul(x, g.inv(h)))] = 1;
    }
    return classes;
}

std::vector<int> minimal_generating_set(const CayleyGroup& g) {
    std::vector<int> gens;
    Subgroup span = subgroup_closure(g, {});
    while (span.order() < g.order()) {
        int next = -1;
        for (int x = 0; x < g.order(); ++x)
            if (!span.contains(x)) {
                next = x;
                break;
            }
        gens.push_back(next);
        span = subgroup_closure(g, gens);
    }
    return gens;
}

std::vector<OrbitData> orbits_and_stabilizers(const CayleyGroup& g,
                                              const std::vector<std::vector<int>>& action) {
    const int npts = int(action.size());
    for (int p = 0; p < npts; ++p) {
        if (int(action[p].size()) != g.order())
            throw ValidationError("orbits_and_stabilizers: action row has wrong length");
        for (int v : action[p])
            if (v < 0 || v >= npts) throw ValidationError("orbits_and_stabilizers: point out of range");
        if (action[p][g.identity()] != p)
            throw ValidationError("action axiom violated: p*e != p at point " + std::to_string(p));
    }
    for (int p = 0; p < npts; ++p)
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (action[action[p][a]][b] != action[p][g.mul(a, b)]) {
                    std::ostringstream os;
                    os << "action axiom violated: (p*g)*h != p*(gh) at (p,g,h)=(" << p << "," << a
                       << "," << b << ")";
                    throw ValidationError(os.str());
                }

    std::vector<OrbitData> out;
    std::vector<char> seen(npts, 0);
    for (int p = 0; p < npts; ++p) {
        if (seen[p]) continue;
        OrbitData od;
        std::set<int> orbit;
        for (int a = 0; a < g.order(); ++a) orbit.insert(action[p][a]);
        od.orbit.assign(orbit.begin(), orbit.end());
        for (int q : od.orbit) seen[q] = 1;
        int base = od.orbit.front(); // minimal point
        for (int a = 0; a < g.order(); ++a)
            if (action[base][a] == base) od.stabilizer.push_back(a);
        od.stabilizer_order = int(od.stabilizer.size());
        Subgroup st{od.stabilizer};
        od.stabilizer_class_count = conjugacy_class_count(subgroup_as_group(g, st));
        out.push_back(std::move(od));
    }
    return out;
}

bool is_exact_factorization(const CayleyGroup& l, const Subgroup& g, const Subgroup& gamma) {
    if (std::size_t(g.order()) * gamma.order() != std::size_t(l.order())) return false;
    for (int x : g.members)
        if (x != l.identity() && gamma.contains(x)) return false;
    // |G||Gamma| = |L| with trivial intersection forces (g, s) -> g*s bijective;
    // verify anyway since callers rely on unique factorization.
    std::vector<char> hit(l.order(), 0);
    for (int x : g.members)
        for (int s : gamma.members) {
            int p = l.mul(x, s);
            if (hit[p]++) return false;
        }
    return true;
}

std::vector<Subgroup> all_subgroups(const CayleyGroup& g) {
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> cyclic;
    for (int x = 0; x < g.order(); ++x) {
        Subgroup c = subgroup_closure(g, {x});
        if (found.insert(c.members).second) cyclic.push_back(c.members);
    }
    std::vector<std::vector<int>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (const auto& c : cyclic) {
                std::vector<int> seeds = s;
                seeds.insert(seeds.end(), c.begin(), c.end());
                Subgroup join = subgroup_closure(g, seeds);
                if (found.insert(join.members).second) next.push_back(join.members);
            }
        frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    for (const auto& m : found) out.push_back(Subgroup{m});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    return out;
}

} // namespace crossext::groups
