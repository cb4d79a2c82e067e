#include "crossext/rings.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "crossext/error.hpp"

namespace crossext::rings {

namespace {

std::string tup(std::initializer_list<int> xs) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int x : xs) {
        if (!first) os << ",";
        os << x;
        first = false;
    }
    os << ")";
    return os.str();
}

using SparseVec = std::vector<std::pair<int, long long>>; // sorted by index

SparseVec scaled(const std::vector<std::pair<int, int>>& v, long long c) {
    SparseVec out;
    out.reserve(v.size());
    for (auto [z, m] : v) out.push_back({z, c * m});
    return out;
}

void accumulate(SparseVec& acc, const SparseVec& v) {
    SparseVec merged;
    merged.reserve(acc.size() + v.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < v.size()) {
        if (j == v.size() || (i < acc.size() && acc[i].first < v[j].first))
            merged.push_back(acc[i++]);
        else if (i == acc.size() || v[j].first < acc[i].first)
            merged.push_back(v[j++]);
        else {
            merged.push_back({acc[i].first, acc[i].second + v[j].second});
            ++i, ++j;
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& p) { return p.second == 0; }),
                 merged.end());
    acc = std::move(merged);
}

} // namespace

int BasedRing::mult(int x, int y, int z) const {
    const auto& p = product(x, y);
    auto it = std::lower_bound(p.begin(), p.end(), std::make_pair(z, 0));
    if (it == p.end() || it->first != z) return 0;
    return it->second;
}

void BasedRing::check_shape() const {
    const int n = size();
    if (n == 0) throw ValidationError("BasedRing: empty basis");
    if (unit < 0 || unit >= n) throw ValidationError("BasedRing: unit out of range");
    if (int(dual.size()) != n) throw ValidationError("BasedRing: dual table has wrong size");
    for (int d : dual)
        if (d < 0 || d >= n) throw ValidationError("BasedRing: dual entry out of range");
    if (prod.size() != std::size_t(n) * n)
        throw ValidationError("BasedRing: product table has wrong size");
    for (const auto& p : prod) {
        int prev = -1;
        for (auto [z, m] : p) {
            if (z <= prev) throw ValidationError("BasedRing: product support not sorted/unique");
            if (z >= n) throw ValidationError("BasedRing: product support out of range");
            if (m <= 0) throw ValidationError("BasedRing: non-positive multiplicity stored");
            prev = z;
        }
    }
}

BasedRing BasedRing::from_sparse(std::vector<std::string> labels, int unit, std::vector<int> dual,
                                 const std::vector<std::array<int, 4>>& entries) {
    BasedRing r;
    r.labels = std::move(labels);
    r.unit = unit;
    r.dual = std::move(dual);
    const int n = r.size();
    std::map<std::array<int, 3>, long long> acc;
    for (const auto& e : entries) {
        if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n || e[2] < 0 || e[2] >= n)
            throw ValidationError("BasedRing: sparse entry index out of range");
        if (e[3] < 1) throw ValidationError("BasedRing: multiplicity must be >= 1");
        acc[{e[0], e[1], e[2]}] += e[3];
    }
    r.prod.assign(std::size_t(n) * n, {});
    for (const auto& [k, m] : acc) r.prod[std::size_t(k[0]) * n + k[1]].push_back({k[2], int(m)});
    r.check_shape();
    return r;
}

ValidationReport verify_based_ring(const BasedRing& r) {
    r.check_shape();
    ValidationReport rep;
    const int n = r.size();

    // dual is an involution
    for (int x = 0; x < n; ++x)
        if (r.dual[r.dual[x]] != x)
            rep.fail("dual-involution", "dual(dual(" + std::to_string(x) + ")) != " + std::to_string(x));

    // unit axioms
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (r.mult(r.unit, x, y) != (x == y ? 1 : 0))
                rep.fail("unit", "N_{1," + std::to_string(x) + "}^" + std::to_string(y));
            if (r.mult(x, r.unit, y) != (x == y ? 1 : 0))
                rep.fail("unit", "N_{" + std::to_string(x) + ",1}^" + std::to_string(y));
        }

    // rigidity: N_{xy}^1 = delta_{y,x*}
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (r.mult(x, y, r.unit) != (y == r.dual[x] ? 1 : 0))
                rep.fail("rigidity", tup({x, y}));

    // dual compatibility
    for (int x = 0; x < n && rep.witnesses.size() < 64; ++x)
        for (int y = 0; y < n; ++y)
            for (auto [z, m] : r.product(x, y)) {
                if (r.mult(r.dual[y], r.dual[x], r.dual[z]) != m)
                    rep.fail("dual-compat", "N_{xy}^z != N_{y*x*}^{z*} at " + tup({x, y, z}));
                if (r.mult(r.dual[x], z, y) != m)
                    rep.fail("dual-compat", "N_{xy}^z != N_{x*z}^y at " + tup({x, y, z}));
            }

    // associativity via sparse expansion of (xy)z and x(yz)
    for (int x = 0; x < n && rep.witnesses.size() < 64; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                SparseVec lhs, rhs;
                for (auto [w, m] : r.product(x, y)) accumulate(lhs, scaled(r.product(w, z), m));
                for (auto [w, m] : r.product(y, z)) accumulate(rhs, scaled(r.product(x, w), m));
                if (lhs != rhs) rep.fail("associativity", tup({x, y, z}));
            }
    return rep;
}

std::vector<double> fp_dimensions(const BasedRing& r, double rel_tol, int max_iter) {
    const int n = r.size();
    std::vector<double> dims(n);
    for (int x = 0; x < n; ++x) {
        // left multiplication matrix (shifted by identity to damp periodicity)
        std::vector<double> m(std::size_t(n) * n, 0.0);
        for (int y = 0; y < n; ++y) {
            for (auto [z, c] : r.product(x, y)) m[std::size_t(z) * n + y] += double(c);
            m[std::size_t(y) * n + y] += 1.0;
        }
        std::vector<double> v(n, 1.0), w(n);
        double lambda = 0.0;
        bool converged = false;
        for (int it = 0; it < max_iter; ++it) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += m[std::size_t(i) * n + j] * v[j];
                w[i] = s;
            }
            double num = 0.0, den = 0.0;
            for (int i = 0; i < n; ++i) {
                num += w[i] * v[i];
                den += v[i] * v[i];
            }
            double next = num / den;
            double scale = 0.0;
            for (double wi : w) scale = std::max(scale, std::abs(wi));
            for (int i = 0; i < n; ++i) v[i] = w[i] / scale;
            if (it > 0 && std::abs(next - lambda) <= rel_tol * std::max(1.0, std::abs(next))) {
                lambda = next;
                converged = true;
                break;
            }
            lambda = next;
        }
        if (!converged) throw NumericalError("fp_dimensions: power iteration did not converge");
        dims[x] = lambda - 1.0;
    }
    return dims;
}

bool check_grading(const BasedRing& r, const GradingMap& g) {
    const int n = r.size();
    if (int(g.deg.size()) != n) throw ValidationError("check_grading: degree table has wrong size");
    for (int d : g.deg)
        if (d < 0 || d >= g.group.order()) throw ValidationError("check_grading: degree out of range");
    if (g.deg[r.unit] != g.group.identity()) return false;
    for (int x = 0; x < n; ++x)
        if (g.deg[r.dual[x]] != g.group.inv(g.deg[x])) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (auto [z, m] : r.product(x, y)) {
                (void)m;
                if (g.deg[z] != g.group.mul(g.deg[x], g.deg[y])) return false;
            }
    return true;
}

GradingMap universal_grading(const BasedRing& r) {
    const int n = r.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    auto root_count = [&]() {
        int c = 0;
        for (int i = 0; i < n; ++i) c += (find(i) == i);
        return c;
    };

    // co-occurrence in any product, then congruence closure so that block
    // products are well defined
    int blocks = root_count();
    while (true) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const auto& p = r.product(x, y);
                for (std::size_t k = 1; k < p.size(); ++k) unite(p[0].first, p[k].first);
            }
        std::map<std::pair<int, int>, int> block_prod;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const auto& p = r.product(x, y);
                if (p.empty()) continue;
                auto key = std::make_pair(find(x), find(y));
                auto [it, fresh] = block_prod.emplace(key, p[0].first);
                if (!fresh) unite(it->second, p[0].first);
            }
        int now = root_count();
        if (now == blocks) break;
        blocks = now;
    }

    // number the blocks in order of their minimal element
    std::vector<int> block_of(n, -1);
    std::vector<int> roots;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) roots.push_back(i);
    std::sort(roots.begin(), roots.end());
    for (std::size_t b = 0; b < roots.size(); ++b)
        for (int i = 0; i < n; ++i)
            if (find(i) == roots[b]) block_of[i] = int(b);

    const int nb = int(roots.size());
    std::vector<int> mul(std::size_t(nb) * nb, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto& p = r.product(x, y);
            if (p.empty()) continue;
            int bx = block_of[x], by = block_of[y], bz = block_of[p[0].first];
            int& slot = mul[std::size_t(bx) * nb + by];
            if (slot < 0)
                slot = bz;
            else if (slot != bz)
                throw Error("universal_grading: block product not well-defined");
        }
    // every block product must be populated: blocks contain some x, y and
    // x*y has nonempty support in a based ring (rigidity pairs at least)
    for (int b = 0; b < nb * nb; ++b)
        if (mul[b] < 0) throw Error("universal_grading: missing block product");

    std::vector<std::string> names;
    for (int b = 0; b < nb; ++b) names.push_back("u" + std::to_string(b));
    groups::CayleyGroup u(nb, std::move(mul), block_of[r.unit], std::move(names));
    ValidationReport urep = u.validate();
    if (!urep.ok) throw Error("universal_grading: block structure is not a group: " + urep.summary());

    GradingMap g{std::move(u), std::move(block_of)};
    if (!check_grading(r, g)) throw Error("universal_grading: result fails check_grading");
    return g;
}

namespace {

// closure of a basis subset under product supports and duals, containing unit
std::vector<int> based_subring_closure(const BasedRing& r, std::vector<int> seed) {
    std::set<int> in(seed.begin(), seed.end());
    in.insert(r.unit);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(in.begin(), in.end());
        for (int x : cur)
            if (in.insert(r.dual[x]).second) changed = true;
        for (int x : cur)
            for (int y : cur)
                for (auto [z, m] : r.product(x, y)) {
                    (void)m;
                    if (in.insert(z).second) changed = true;
                }
    }
    return {in.begin(), in.end()};
}

} // namespace

std::vector<int> adjoint_support(const BasedRing& r) {
    std::vector<int> seed;
    for (int x = 0; x < r.size(); ++x)
        for (auto [z, m] : r.product(x, r.dual[x])) {
            (void)m;
            seed.push_back(z);
        }
    return based_subring_closure(r, seed);
}

CentralSeries upper_central_series(const BasedRing& r) {
    CentralSeries cs;
    std::vector<int> current(r.size());
    std::iota(current.begin(), current.end(), 0);
    cs.chain.push_back(current);
    const std::vector<int> unit_only{r.unit};
    while (true) {
        if (current == unit_only) {
            cs.nilpotent = true;
            cs.nilpotency_class = int(cs.chain.size()) - 1;
            break;
        }
        std::vector<int> seed;
        for (int x : current)
            for (auto [z, m] : r.product(x, r.dual[x])) {
                (void)m;
                seed.push_back(z);
            }
        std::vector<int> next = based_subring_closure(r, std::move(seed));
        if (next == current) break; // stabilized above the unit: not nilpotent
        cs.chain.push_back(next);
        current = std::move(next);
    }
    return cs;
}

BasedRing group_ring(const groups::CayleyGroup& g) {
    BasedRing r;
    const int n = g.order();
    r.labels = g.element_names();
    r.unit = g.identity();
    r.dual = g.inverse_table();
    r.prod.assign(std::size_t(n) * n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r.prod[std::size_t(a) * n + b] = {{g.mul(a, b), 1}};
    return r;
}

namespace {

struct ElementKey {
    long long fpdim_rounded;
    int self_dual;
    std::vector<std::pair<int, int>> self_product_multiset; // sorted (m, count)
    bool operator==(const ElementKey&) const = default;
    bool operator<(const ElementKey& o) const {
        return std::tie(fpdim_rounded, self_dual, self_product_multiset) <
               std::tie(o.fpdim_rounded, o.self_dual, o.self_product_multiset);
    }
};

std::vector<ElementKey> element_keys(const BasedRing& r) {
    std::vector<double> fp = fp_dimensions(r);
    std::vector<ElementKey> keys(r.size());
    for (int x = 0; x < r.size(); ++x) {
        ElementKey k;
        k.fpdim_rounded = llround(fp[x] * 1e6);
        k.self_dual = (r.dual[x] == x) ? 1 : 0;
        std::map<int, int> ms;
        for (auto [z, m] : r.product(x, x)) {
            (void)z;
            ms[m]++;
        }
        k.self_product_multiset.assign(ms.begin(), ms.end());
        keys[x] = k;
    }
    return keys;
}

struct IsoSearch {
    const BasedRing& r;
    const BasedRing& s;
    std::vector<ElementKey> kr, ks;
    std::vector<int> img, pre;
    std::chrono::steady_clock::time_point deadline;
    long long nodes = 0;

    IsoSearch(const BasedRing& r_, const BasedRing& s_, int timeout_ms)
        : r(r_), s(s_), kr(element_keys(r_)), ks(element_keys(s_)),
          img(r_.size(), -1), pre(s_.size(), -1),
          deadline(std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms)) {}

    bool products_consistent(int x) {
        // check all products involving x against the partial image
        for (int a = 0; a < r.size(); ++a) {
            if (img[a] < 0) continue;
            for (int swap = 0; swap < 2; ++swap) {
                int u = swap ? a : x, v = swap ? x : a;
                const auto& p = r.product(u, v);
                const auto& q = s.product(img[u], img[v]);
                // multiplicity multisets must agree
                std::vector<int> mp, mq;
                for (auto [z, m] : p) mp.push_back(m);
                for (auto [z, m] : q) mq.push_back(m);
                std::sort(mp.begin(), mp.end());
                std::sort(mq.begin(), mq.end());
                if (mp != mq) return false;
                for (auto [z, m] : p)
                    if (img[z] >= 0 && s.mult(img[u], img[v], img[z]) != m) return false;
                for (auto [w, m] : q)
                    if (pre[w] >= 0 && r.mult(u, v, pre[w]) != m) return false;
            }
        }
        return true;
    }

    bool assign(int x, int y, std::vector<int>& trail) {
        if (img[x] >= 0) return img[x] == y;
        if (pre[y] >= 0) return false;
        if (!(kr[x] == ks[y])) return false;
        img[x] = y;
        pre[y] = x;
        trail.push_back(x);
        if (!products_consistent(x)) return false;
        // forced consequences: dual and single-support products
        if (img[r.dual[x]] < 0) {
            if (!assign(r.dual[x], s.dual[y], trail)) return false;
        } else if (img[r.dual[x]] != s.dual[y])
            return false;
        for (int a = 0; a < r.size(); ++a) {
            if (img[a] < 0) continue;
            for (int swap = 0; swap < 2; ++swap) {
                int u = swap ? a : x, v = swap ? x : a;
                const auto& p = r.product(u, v);
                const auto& q = s.product(img[u], img[v]);
                if (p.size() == 1 && q.size() == 1 && img[p[0].first] < 0) {
                    if (!assign(p[0].first, q[0].first, trail)) return false;
                }
            }
        }
        return true;
    }

    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            int x = trail.back();
            trail.pop_back();
            pre[img[x]] = -1;
            img[x] = -1;
        }
    }

    bool search() {
        ++nodes;
        if (std::chrono::steady_clock::now() > deadline)
            throw TimeoutError("based_ring_isomorphism: timeout");
        int x = -1;
        for (int i = 0; i < r.size(); ++i)
            if (img[i] < 0) {
                x = i;
                break;
            }
        if (x < 0) return true;
        for (int y = 0; y < s.size(); ++y) {
            if (pre[y] >= 0) continue;
            std::vector<int> trail;
            std::size_t mark = 0;
            if (assign(x, y, trail) && search()) return true;
            undo(trail, mark);
        }
        return false;
    }
};

} // namespace

IsoResult based_ring_isomorphism(const BasedRing& r, const BasedRing& s, int timeout_ms) {
    if (r.size() != s.size()) return {IsoStatus::none, {}};
    IsoSearch srch(r, s, timeout_ms);
    {
        // class-size compatibility: sorted key multisets must match
        auto a = srch.kr;
        auto b = srch.ks;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!(a == b)) return {IsoStatus::none, {}};
    }
    std::vector<int> trail;
    if (!srch.assign(r.unit, s.unit, trail)) return {IsoStatus::none, {}};
    if (srch.search()) return {IsoStatus::found, srch.img};
    return {IsoStatus::none, {}};
}

} // namespace crossext::rings
