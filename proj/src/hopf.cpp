#include "crossext/hopf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crossext/error.hpp"

namespace crossext::hopf {

namespace {

const Q kZero(0);

void qvec_push(std::map<int, Q>& acc, int idx, const Q& c) {
    if (c == 0) return;
    Q& slot = acc[idx];
    slot += c;
    if (slot == 0) acc.erase(idx);
}

QVec from_map(const std::map<int, Q>& m) {
    QVec v;
    v.reserve(m.size());
    for (const auto& [i, c] : m) v.push_back({i, c});
    return v;
}

std::vector<Q> dense(const QVec& v, int n) {
    std::vector<Q> d(n, kZero);
    for (const auto& [i, c] : v) d[i] = c;
    return d;
}

QVec sparsify(const std::vector<Q>& v) {
    QVec out;
    for (int i = 0; i < int(v.size()); ++i)
        if (v[i] != 0) out.push_back({i, v[i]});
    return out;
}

} // namespace

QVec qvec_add(const QVec& a, const QVec& b) {
    std::map<int, Q> acc;
    for (const auto& [i, c] : a) qvec_push(acc, i, c);
    for (const auto& [i, c] : b) qvec_push(acc, i, c);
    return from_map(acc);
}

QVec qvec_scale(const QVec& a, const Q& c) {
    if (c == 0) return {};
    QVec out;
    out.reserve(a.size());
    for (const auto& [i, x] : a) out.push_back({i, x * c});
    return out;
}

bool qvec_is_zero(const QVec& a) { return a.empty(); }

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::col(int j) const {
    QMatrix c(rows, 1);
    for (int i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
    return c;
}

QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
    if (a.cols != b.rows) throw ValidationError("qmat_mul: shape mismatch");
    QMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Q& x = a.at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols; ++j) {
                if (b.at(k, j) == 0) continue;
                c.at(i, j) += x * b.at(k, j);
            }
        }
    return c;
}

bool qmat_equal(const QMatrix& a, const QMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.a == b.a;
}

bool QSpan::add(const std::vector<Q>& v) {
    std::vector<Q> w = reduce(v);
    int lead = -1;
    for (int i = 0; i < int(w.size()); ++i)
        if (w[i] != 0) {
            lead = i;
            break;
        }
    if (lead < 0) return false;
    Q inv = 1 / w[lead];
    for (auto& x : w) x *= inv;
    // keep existing rows reduced against the new one
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Q c = rows_[r][lead];
        if (c == 0) continue;
        for (int i = 0; i < int(w.size()); ++i) rows_[r][i] -= c * w[i];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
    std::size_t idx = pos - pivots_.begin();
    pivots_.insert(pos, lead);
    rows_.insert(rows_.begin() + idx, std::move(w));
    return true;
}

bool QSpan::contains(const std::vector<Q>& v) const {
    for (const Q& x : reduce(v))
        if (x != 0) return false;
    return true;
}

std::vector<Q> QSpan::reduce(const std::vector<Q>& v) const {
    std::vector<Q> w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Q c = w[pivots_[r]];
        if (c == 0) continue;
        const auto& row = rows_[r];
        for (int i = 0; i < int(w.size()); ++i)
            if (row[i] != 0) w[i] -= c * row[i];
    }
    return w;
}

int qrank(QMatrix m) {
    QSpan span;
    for (int j = 0; j < m.cols; ++j) {
        std::vector<Q> v(m.rows);
        for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
        span.add(v);
    }
    return span.rank();
}

void HopfAlgebra::check_shape() const {
    if (dim <= 0) throw ValidationError("HopfAlgebra: dim must be positive");
    if (m.size() != std::size_t(dim) * dim) throw ValidationError("HopfAlgebra: m has wrong size");
    if (delta.size() != std::size_t(dim)) throw ValidationError("HopfAlgebra: delta has wrong size");
    if (counit.size() != std::size_t(dim)) throw ValidationError("HopfAlgebra: counit has wrong size");
    if (antipode.size() != std::size_t(dim))
        throw ValidationError("HopfAlgebra: antipode has wrong size");
    auto in_range = [&](const QVec& v, int bound) {
        for (const auto& [i, c] : v) {
            (void)c;
            if (i < 0 || i >= bound) throw ValidationError("HopfAlgebra: index out of range");
        }
    };
    for (const auto& v : m) in_range(v, dim);
    in_range(unit, dim);
    for (const auto& v : delta) in_range(v, dim * dim);
    for (const auto& v : antipode) in_range(v, dim);
}

QVec HopfAlgebra::mul_vec(const QVec& x, const QVec& y) const {
    std::map<int, Q> acc;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            Q c = a * b;
            for (const auto& [z, w] : m[std::size_t(i) * dim + j]) qvec_push(acc, z, c * w);
        }
    return from_map(acc);
}

QVec HopfAlgebra::apply_antipode(const QVec& x) const {
    std::map<int, Q> acc;
    for (const auto& [i, a] : x)
        for (const auto& [z, w] : antipode[i]) qvec_push(acc, z, a * w);
    return from_map(acc);
}

Q HopfAlgebra::counit_of(const QVec& x) const {
    Q s = 0;
    for (const auto& [i, a] : x) s += a * counit[i];
    return s;
}

namespace {

using PairVec = std::map<int, Q>; // pair index (j,k) = j*d+k -> coeff

PairVec delta_of_basis(const HopfAlgebra& h, int i) {
    PairVec out;
    for (const auto& [jk, c] : h.delta[i]) out[jk] = c;
    return out;
}

// product in H (x) H of pair-indexed sparse vectors
PairVec pair_mul(const HopfAlgebra& h, const PairVec& x, const PairVec& y) {
    PairVec acc;
    const int d = h.dim;
    for (const auto& [jk1, c1] : x) {
        int a = jk1 / d, b = jk1 % d;
        for (const auto& [jk2, c2] : y) {
            int p = jk2 / d, q = jk2 % d;
            Q c = c1 * c2;
            for (const auto& [z1, w1] : h.m[std::size_t(a) * d + p])
                for (const auto& [z2, w2] : h.m[std::size_t(b) * d + q])
                    qvec_push(acc, z1 * d + z2, c * w1 * w2);
        }
    }
    return acc;
}

} // namespace

ValidationReport verify_hopf_axioms(const HopfAlgebra& h, bool early_exit) {
    h.check_shape();
    ValidationReport rep;
    const int d = h.dim;
    auto done = [&]() { return early_exit && !rep.ok; };

    // associativity
    for (int i = 0; i < d && !done(); ++i)
        for (int j = 0; j < d && !done(); ++j)
            for (int k = 0; k < d; ++k) {
                std::map<int, Q> lhs, rhs;
                for (const auto& [p, c] : h.m[std::size_t(i) * d + j])
                    for (const auto& [z, w] : h.m[std::size_t(p) * d + k]) qvec_push(lhs, z, c * w);
                for (const auto& [p, c] : h.m[std::size_t(j) * d + k])
                    for (const auto& [z, w] : h.m[std::size_t(i) * d + p]) qvec_push(rhs, z, c * w);
                if (lhs != rhs) {
                    rep.fail("associativity", "(" + std::to_string(i) + "," + std::to_string(j) +
                                                  "," + std::to_string(k) + ")");
                    if (early_exit) break;
                }
            }

    // unit
    for (int i = 0; i < d && !done(); ++i) {
        QVec e{{i, Q(1)}};
        if (h.mul_vec(h.unit, e) != e) rep.fail("unit", "1*b_" + std::to_string(i));
        if (h.mul_vec(e, h.unit) != e) rep.fail("unit", "b_" + std::to_string(i) + "*1");
    }

    // coassociativity: compare triple tensors
    for (int i = 0; i < d && !done(); ++i) {
        std::map<long long, Q> lhs, rhs;
        for (const auto& [jk, c] : h.delta[i]) {
            int a = jk / d, b = jk % d;
            for (const auto& [pq, w] : h.delta[a]) {
                long long key = (long long)(pq / d) * d * d + (long long)(pq % d) * d + b;
                Q& slot = lhs[key];
                slot += c * w;
                if (slot == 0) lhs.erase(key);
            }
            for (const auto& [pq, w] : h.delta[b]) {
                long long key = (long long)a * d * d + (long long)(pq / d) * d + (pq % d);
                Q& slot = rhs[key];
                slot += c * w;
                if (slot == 0) rhs.erase(key);
            }
        }
        if (lhs != rhs) rep.fail("coassociativity", "b_" + std::to_string(i));
    }

    // counit
    for (int i = 0; i < d && !done(); ++i) {
        std::map<int, Q> left, right;
        for (const auto& [jk, c] : h.delta[i]) {
            qvec_push(left, jk % d, c * h.counit[jk / d]);
            qvec_push(right, jk / d, c * h.counit[jk % d]);
        }
        QVec e{{i, Q(1)}};
        if (from_map(left) != e) rep.fail("counit", "(eps (x) id) at b_" + std::to_string(i));
        if (from_map(right) != e) rep.fail("counit", "(id (x) eps) at b_" + std::to_string(i));
    }

    // bialgebra compatibility
    if (!done()) {
        // Delta(1) = 1 (x) 1
        PairVec du;
        for (const auto& [i, c] : h.unit)
            for (const auto& [jk, w] : h.delta[i]) qvec_push(du, jk, c * w);
        PairVec uu;
        for (const auto& [i, a] : h.unit)
            for (const auto& [j, b] : h.unit) qvec_push(uu, i * d + j, a * b);
        if (du != uu) rep.fail("bialgebra", "Delta(1) != 1 (x) 1");
        if (h.counit_of(h.unit) != 1) rep.fail("bialgebra", "eps(1) != 1");
    }
    for (int i = 0; i < d && !done(); ++i)
        for (int j = 0; j < d; ++j) {
            PairVec lhs;
            for (const auto& [z, c] : h.m[std::size_t(i) * d + j])
                for (const auto& [jk, w] : h.delta[z]) qvec_push(lhs, jk, c * w);
            PairVec rhs = pair_mul(h, delta_of_basis(h, i), delta_of_basis(h, j));
            if (lhs != rhs) {
                rep.fail("bialgebra", "Delta(b_" + std::to_string(i) + " b_" + std::to_string(j) +
                                          ") != Delta(b_i)Delta(b_j)");
                if (early_exit) break;
            }
            Q el = 0;
            for (const auto& [z, c] : h.m[std::size_t(i) * d + j]) el += c * h.counit[z];
            if (el != h.counit[i] * h.counit[j]) {
                rep.fail("bialgebra", "eps not multiplicative at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                if (early_exit) break;
            }
        }

    // antipode
    for (int i = 0; i < d && !done(); ++i) {
        std::map<int, Q> left, right;
        for (const auto& [jk, c] : h.delta[i]) {
            int a = jk / d, b = jk % d;
            for (const auto& [s, w] : h.antipode[a])
                for (const auto& [z, u] : h.m[std::size_t(s) * d + b]) qvec_push(left, z, c * w * u);
            for (const auto& [s, w] : h.antipode[b])
                for (const auto& [z, u] : h.m[std::size_t(a) * d + s]) qvec_push(right, z, c * w * u);
        }
        QVec target = qvec_scale(h.unit, h.counit[i]);
        if (from_map(left) != target) rep.fail("antipode", "m(S (x) id)Delta at b_" + std::to_string(i));
        if (from_map(right) != target) rep.fail("antipode", "m(id (x) S)Delta at b_" + std::to_string(i));
    }
    return rep;
}

HopfAlgebra group_algebra(const groups::CayleyGroup& g) {
    HopfAlgebra h;
    const int d = g.order();
    h.dim = d;
    h.m.assign(std::size_t(d) * d, {});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h.m[std::size_t(i) * d + j] = {{g.mul(i, j), Q(1)}};
    h.unit = {{g.identity(), Q(1)}};
    h.delta.assign(d, {});
    for (int i = 0; i < d; ++i) h.delta[i] = {{i * d + i, Q(1)}};
    h.counit.assign(d, Q(1));
    h.antipode.assign(d, {});
    for (int i = 0; i < d; ++i) h.antipode[i] = {{g.inv(i), Q(1)}};
    h.basis_names = g.element_names();
    return h;
}

HopfAlgebra dual_hopf(const HopfAlgebra& h) {
    h.check_shape();
    const int d = h.dim;
    HopfAlgebra k;
    k.dim = d;
    k.m.assign(std::size_t(d) * d, {});
    k.delta.assign(d, {});
    k.counit.assign(d, kZero);
    k.antipode.assign(d, {});

    std::vector<std::map<int, Q>> macc(std::size_t(d) * d);
    for (int i = 0; i < d; ++i)
        for (const auto& [jk, c] : h.delta[i]) qvec_push(macc[jk], i, c);
    for (std::size_t t = 0; t < macc.size(); ++t) k.m[t] = from_map(macc[t]);

    k.unit = sparsify(h.counit);

    std::vector<std::map<int, Q>> dacc(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const auto& [z, c] : h.m[std::size_t(i) * d + j]) qvec_push(dacc[z], i * d + j, c);
    for (int z = 0; z < d; ++z) k.delta[z] = from_map(dacc[z]);

    for (const auto& [i, c] : h.unit) k.counit[i] = c;

    std::vector<std::map<int, Q>> sacc(d);
    for (int i = 0; i < d; ++i)
        for (const auto& [z, c] : h.antipode[i]) qvec_push(sacc[z], i, c);
    for (int z = 0; z < d; ++z) k.antipode[z] = from_map(sacc[z]);

    k.basis_names.reserve(d);
    for (int i = 0; i < d; ++i)
        k.basis_names.push_back(h.basis_names.empty() ? "f" + std::to_string(i)
                                                      : "f(" + h.basis_names[i] + ")");
    return k;
}

HopfAlgebra dual_group_algebra(const groups::CayleyGroup& g) { return dual_hopf(group_algebra(g)); }

bool is_commutative(const HopfAlgebra& h) {
    for (int i = 0; i < h.dim; ++i)
        for (int j = i + 1; j < h.dim; ++j)
            if (h.m[std::size_t(i) * h.dim + j] != h.m[std::size_t(j) * h.dim + i]) return false;
    return true;
}

bool is_cocommutative(const HopfAlgebra& h) {
    const int d = h.dim;
    for (int i = 0; i < d; ++i) {
        std::map<int, Q> swapped;
        for (const auto& [jk, c] : h.delta[i]) qvec_push(swapped, (jk % d) * d + jk / d, c);
        if (from_map(swapped) != h.delta[i]) return false;
    }
    return true;
}

HopfAlgebra kac_bicrossed_candidate(const matched::MatchedPair& mp) {
    mp.check_shape();
    const auto& G = mp.G;
    const auto& Ga = mp.Gamma;
    const int ng = G.order(), ns = Ga.order();
    const int d = ng * ns;
    auto idx = [&](int s, int g) { return s * ng + g; };

    HopfAlgebra h;
    h.dim = d;
    h.m.assign(std::size_t(d) * d, {});
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g)
            for (int t = 0; t < ns; ++t)
                for (int x = 0; x < ng; ++x)
                    if (mp.lhd[s][g] == t)
                        h.m[std::size_t(idx(s, g)) * d + idx(t, x)] = {{idx(s, G.mul(g, x)), Q(1)}};
    h.unit = {};
    for (int s = 0; s < ns; ++s) h.unit.push_back({idx(s, G.identity()), Q(1)});
    std::sort(h.unit.begin(), h.unit.end());

    h.delta.assign(d, {});
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g) {
            std::map<int, Q> acc;
            for (int b = 0; b < ns; ++b) {
                int a = Ga.mul(s, Ga.inv(b)); // a*b = s
                qvec_push(acc, idx(a, mp.rhd[b][g]) * d + idx(b, g), Q(1));
            }
            h.delta[idx(s, g)] = from_map(acc);
        }

    h.counit.assign(d, kZero);
    for (int g = 0; g < ng; ++g) h.counit[idx(Ga.identity(), g)] = 1;

    h.antipode.assign(d, {});
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g)
            h.antipode[idx(s, g)] = {{idx(Ga.inv(mp.lhd[s][g]), G.inv(mp.rhd[s][g])), Q(1)}};

    h.basis_names.reserve(d);
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g) h.basis_names.push_back("e(" + Ga.name(s) + ")#" + G.name(g));
    return h;
}

HopfAlgebra kac_bicrossed(const matched::MatchedPair& mp) {
    ValidationReport mrep = matched::verify_matched_pair(mp);
    if (!mrep.ok) throw ValidationError("kac_bicrossed: invalid matched pair: " + mrep.summary());
    HopfAlgebra h = kac_bicrossed_candidate(mp);
    ValidationReport hrep = verify_hopf_axioms(h);
    if (!hrep.ok)
        throw ValidationError("kac_bicrossed: construction failed Hopf axioms: " + hrep.summary());
    return h;
}

KacSequence canonical_kac_sequence(const matched::MatchedPair& mp, const HopfAlgebra& h) {
    const int ng = mp.G.order(), ns = mp.Gamma.order();
    if (h.dim != ng * ns) throw ValidationError("canonical_kac_sequence: dimension mismatch");
    KacSequence seq{dual_group_algebra(mp.Gamma), QMatrix(h.dim, ns), group_algebra(mp.G),
                    QMatrix(ng, h.dim)};
    for (int s = 0; s < ns; ++s) seq.inj.at(s * ng + mp.G.identity(), s) = 1;
    for (int g = 0; g < ng; ++g) seq.proj.at(g, mp.Gamma.identity() * ng + g) = 1;
    return seq;
}

namespace {

QVec apply_qmatrix(const QMatrix& m, const QVec& x) {
    std::map<int, Q> acc;
    for (const auto& [j, c] : x)
        for (int i = 0; i < m.rows; ++i) qvec_push(acc, i, c * m.at(i, j));
    return from_map(acc);
}

// exact rational nullspace (columns) of an r x c matrix
std::vector<std::vector<Q>> qnullspace(const QMatrix& m) {
    const int r = m.rows, c = m.cols;
    std::vector<std::vector<Q>> rowsv(r, std::vector<Q>(c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) rowsv[i][j] = m.at(i, j);
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int piv = -1;
        for (int i = row; i < r; ++i)
            if (rowsv[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rowsv[piv], rowsv[row]);
        Q inv = 1 / rowsv[row][col];
        for (int j = col; j < c; ++j) rowsv[row][j] *= inv;
        for (int i = 0; i < r; ++i) {
            if (i == row) continue;
            Q f = rowsv[i][col];
            if (f == 0) continue;
            for (int j = col; j < c; ++j) rowsv[i][j] -= f * rowsv[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<char> is_pivot(c, 0);
    for (int p : pivot_cols) is_pivot[p] = 1;
    std::vector<std::vector<Q>> basis;
    for (int f = 0; f < c; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Q> v(c, kZero);
        v[f] = 1;
        for (int k = 0; k < int(pivot_cols.size()); ++k) v[pivot_cols[k]] = -rowsv[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_hopf_map(const HopfAlgebra& src, const HopfAlgebra& dst, const QMatrix& f,
                 ValidationReport& rep, const std::string& label) {
    bool ok = true;
    const int ds = src.dim;
    auto img = [&](int i) { return apply_qmatrix(f, QVec{{i, Q(1)}}); };
    std::vector<QVec> fi(ds);
    for (int i = 0; i < ds; ++i) fi[i] = img(i);

    if (apply_qmatrix(f, src.unit) != dst.unit) {
        rep.fail(label, "does not preserve unit");
        ok = false;
    }
    for (int i = 0; i < ds && ok; ++i)
        for (int j = 0; j < ds; ++j) {
            QVec lhs = apply_qmatrix(f, src.m[std::size_t(i) * ds + j]);
            QVec rhs = dst.mul_vec(fi[i], fi[j]);
            if (lhs != rhs) {
                rep.fail(label, "not an algebra map at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
                ok = false;
                break;
            }
        }
    for (int i = 0; i < ds && ok; ++i) {
        // (f (x) f) Delta_src(b_i) vs Delta_dst(f b_i)
        std::map<int, Q> lhs;
        for (const auto& [jk, c] : src.delta[i]) {
            const QVec& u = fi[jk / ds];
            const QVec& v = fi[jk % ds];
            for (const auto& [p, a] : u)
                for (const auto& [q, b] : v) qvec_push(lhs, p * dst.dim + q, c * a * b);
        }
        std::map<int, Q> rhs;
        for (const auto& [p, a] : fi[i])
            for (const auto& [jk, c] : dst.delta[p]) qvec_push(rhs, jk, a * c);
        if (lhs != rhs) {
            rep.fail(label, "not a coalgebra map at b_" + std::to_string(i));
            ok = false;
        }
        if (src.counit[i] != dst.counit_of(fi[i])) {
            rep.fail(label, "does not preserve counit at b_" + std::to_string(i));
            ok = false;
        }
        if (apply_qmatrix(f, src.antipode[i]) != dst.apply_antipode(fi[i])) {
            rep.fail(label, "does not commute with antipode at b_" + std::to_string(i));
            ok = false;
        }
    }
    return ok;
}

} // namespace

ValidationReport exact_sequence_check(const HopfAlgebra& h, const HopfAlgebra& sub,
                                      const QMatrix& inj, const HopfAlgebra& quot,
                                      const QMatrix& proj) {
    ValidationReport rep;
    if (inj.rows != h.dim || inj.cols != sub.dim || proj.rows != quot.dim || proj.cols != h.dim) {
        rep.fail("shape", "map dimensions do not match the algebras");
        return rep;
    }
    is_hopf_map(sub, h, inj, rep, "(a) i Hopf map");
    is_hopf_map(h, quot, proj, rep, "(a) pi Hopf map");
    if (qrank(inj) != sub.dim) rep.fail("(a) injectivity", "i has rank below dim H'");
    if (qrank(proj) != quot.dim) rep.fail("(a) surjectivity", "pi has rank below dim H''");

    const int d = h.dim;
    // (b) ker pi = H * i(H')^+
    QSpan ideal;
    for (int j = 0; j < sub.dim; ++j) {
        // i(x_j - eps(x_j) 1)
        QVec w = apply_qmatrix(inj, qvec_add(QVec{{j, Q(1)}}, qvec_scale(sub.unit, -sub.counit[j])));
        if (qvec_is_zero(w)) continue;
        for (int i = 0; i < d; ++i) ideal.add(dense(h.mul_vec(QVec{{i, Q(1)}}, w), d));
    }
    auto kernel = qnullspace(proj);
    bool b_ok = int(kernel.size()) == ideal.rank();
    for (const auto& v : kernel)
        if (!ideal.contains(v)) b_ok = false;
    if (!b_ok)
        rep.fail("(b) kernel", "ker pi != H i(H')+ (ranks " + std::to_string(kernel.size()) + " vs " +
                                   std::to_string(ideal.rank()) + ")");

    // (c) i(H') = co-invariants {x : (pi (x) id) Delta(x) = 1 (x) x}
    const int dq = quot.dim;
    QMatrix cond(dq * d, d);
    std::vector<Q> u_quot = dense(quot.unit, dq);
    for (int i = 0; i < d; ++i) {
        for (const auto& [jk, c] : h.delta[i]) {
            int a = jk / d, b = jk % d;
            for (int p = 0; p < dq; ++p)
                if (proj.at(p, a) != 0) cond.at(p * d + b, i) += c * proj.at(p, a);
        }
        for (int p = 0; p < dq; ++p) cond.at(p * d + i, i) -= u_quot[p];
    }
    auto coinv = qnullspace(cond);
    QSpan inj_span;
    for (int j = 0; j < sub.dim; ++j) {
        std::vector<Q> v(d);
        for (int i = 0; i < d; ++i) v[i] = inj.at(i, j);
        inj_span.add(v);
    }
    bool c_ok = int(coinv.size()) == inj_span.rank();
    for (const auto& v : coinv)
        if (!inj_span.contains(v)) c_ok = false;
    if (!c_ok)
        rep.fail("(c) coinvariants", "i(H') != coinvariants (ranks " + std::to_string(coinv.size()) +
                                         " vs " + std::to_string(inj_span.rank()) + ")");
    return rep;
}

ValidationReport verify_comodule(const HopfAlgebra& h, const QMatrix& coaction) {
    ValidationReport rep;
    const int d = h.dim;
    if (coaction.cols <= 0 || coaction.rows != coaction.cols * d) {
        rep.fail("shape", "coaction must be (v*d) x v");
        return rep;
    }
    const int v = coaction.cols;
    // counit: (id (x) eps) delta = id
    for (int j = 0; j < v; ++j) {
        std::vector<Q> out(v, kZero);
        for (int i = 0; i < v; ++i)
            for (int k = 0; k < d; ++k) out[i] += coaction.at(i * d + k, j) * h.counit[k];
        for (int i = 0; i < v; ++i)
            if (out[i] != (i == j ? 1 : 0)) {
                rep.fail("comodule-counit", "at v_" + std::to_string(j));
                break;
            }
    }
    // coassociativity on V (x) H (x) H
    for (int j = 0; j < v; ++j) {
        std::map<long long, Q> lhs, rhs;
        for (int p = 0; p < v; ++p)
            for (int k = 0; k < d; ++k) {
                Q c = coaction.at(p * d + k, j);
                if (c == 0) continue;
                for (int i = 0; i < v; ++i)
                    for (int a = 0; a < d; ++a) {
                        Q w = coaction.at(i * d + a, p);
                        if (w == 0) continue;
                        long long key = ((long long)i * d + a) * d + k;
                        Q& slot = lhs[key];
                        slot += c * w;
                        if (slot == 0) lhs.erase(key);
                    }
            }
        for (int i = 0; i < v; ++i)
            for (int c0 = 0; c0 < d; ++c0) {
                Q c = coaction.at(i * d + c0, j);
                if (c == 0) continue;
                for (const auto& [ab, w] : h.delta[c0]) {
                    long long key = ((long long)i * d + ab / d) * d + (ab % d);
                    Q& slot = rhs[key];
                    slot += c * w;
                    if (slot == 0) rhs.erase(key);
                }
            }
        if (lhs != rhs) rep.fail("comodule-coassociativity", "at v_" + std::to_string(j));
    }
    return rep;
}

QMatrix regular_coaction(const HopfAlgebra& h) {
    const int d = h.dim;
    QMatrix c(d * d, d);
    for (int j = 0; j < d; ++j)
        for (const auto& [ik, q] : h.delta[j]) c.at(ik, j) = q;
    return c;
}

QMatrix half_braiding_sigma(const HopfAlgebra& h, const QMatrix& coaction) {
    ValidationReport crep = verify_comodule(h, coaction);
    if (!crep.ok) throw ValidationError("half_braiding_sigma: invalid comodule: " + crep.summary());
    const int d = h.dim;
    const int v = coaction.cols;
    QMatrix sigma(v * d, d * v);
    for (int j = 0; j < v; ++j) {
        // delta^2(v_j): coefficients on (i, a, b) = v_i (x) b_a (x) b_b
        std::map<long long, Q> dd;
        for (int p = 0; p < v; ++p)
            for (int b = 0; b < d; ++b) {
                Q c = coaction.at(p * d + b, j);
                if (c == 0) continue;
                for (int i = 0; i < v; ++i)
                    for (int a = 0; a < d; ++a) {
                        Q w = coaction.at(i * d + a, p);
                        if (w != 0) {
                            long long key = ((long long)i * d + a) * d + b;
                            dd[key] += c * w;
                        }
                    }
            }
        for (int p = 0; p < d; ++p) {
            // sigma(b_p (x) v_j) = sum v_i (x) S(b_a) b_p b_b
            std::map<int, std::map<int, Q>> out; // i -> H coeffs
            for (const auto& [key, c] : dd) {
                if (c == 0) continue;
                int b = int(key % d);
                int a = int((key / d) % d);
                int i = int(key / (std::size_t(d) * d));
                QVec t = h.mul_vec(h.mul_vec(h.antipode[a], QVec{{p, Q(1)}}), QVec{{b, Q(1)}});
                for (const auto& [z, w] : t) qvec_push(out[i], z, c * w);
            }
            for (const auto& [i, vec] : out)
                for (const auto& [k, c] : vec) sigma.at(i * d + k, p * v + j) = c;
        }
    }
    return sigma;
}

std::pair<bool, bool> symmetric_central_algebra_test(const HopfAlgebra& h) {
    QMatrix sigma = half_braiding_sigma(h, regular_coaction(h));
    QMatrix sq = qmat_mul(sigma, sigma);
    bool sym = qmat_equal(sq, QMatrix::identity(h.dim * h.dim));
    return {sym, is_commutative(h)};
}

std::string factor_type_name(FactorType t) {
    switch (t) {
        case FactorType::commutative: return "commutative";
        case FactorType::cocommutative: return "cocommutative";
        case FactorType::both: return "commutative+cocommutative";
    }
    return "?";
}

namespace {

// left inverse from pivot rows of a full-column-rank matrix
struct CoordMap {
    QMatrix basis;           // d x k
    std::vector<int> rows;   // pivot row indices
    QMatrix inv;             // k x k inverse of basis restricted to pivot rows

    explicit CoordMap(const QMatrix& b) : basis(b) {
        const int ddim = b.rows, k = b.cols;
        // row-reduce a copy of b^T to find k independent rows of b
        QSpan span;
        for (int i = 0; i < ddim && int(rows.size()) < k; ++i) {
            std::vector<Q> v(k);
            for (int j = 0; j < k; ++j) v[j] = b.at(i, j);
            if (span.add(v)) rows.push_back(i);
        }
        if (int(rows.size()) != k) throw ValidationError("basis matrix does not have full column rank");
        // invert the k x k submatrix by Gauss-Jordan
        QMatrix m(k, 2 * k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) m.at(i, j) = b.at(rows[i], j);
            m.at(i, k + i) = 1;
        }
        for (int col = 0; col < k; ++col) {
            int piv = -1;
            for (int i = col; i < k; ++i)
                if (m.at(i, col) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw ValidationError("basis submatrix singular");
            if (piv != col)
                for (int j = 0; j < 2 * k; ++j) std::swap(m.at(piv, j), m.at(col, j));
            Q invp = 1 / m.at(col, col);
            for (int j = 0; j < 2 * k; ++j) m.at(col, j) *= invp;
            for (int i = 0; i < k; ++i) {
                if (i == col) continue;
                Q f = m.at(i, col);
                if (f == 0) continue;
                for (int j = 0; j < 2 * k; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        inv = QMatrix(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) inv.at(i, j) = m.at(i, k + j);
    }

    // coordinates of v in the basis; nullopt when v is outside the span
    std::optional<std::vector<Q>> coords(const std::vector<Q>& v) const {
        const int k = basis.cols;
        std::vector<Q> x(k, kZero);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) x[i] += inv.at(i, j) * v[rows[j]];
        // verify basis * x == v
        for (int i = 0; i < basis.rows; ++i) {
            Q s = 0;
            for (int j = 0; j < k; ++j)
                if (x[j] != 0) s += basis.at(i, j) * x[j];
            if (s != v[i]) return std::nullopt;
        }
        return x;
    }
};

} // namespace

HopfAlgebra subhopf_restrict(const HopfAlgebra& h, const QMatrix& basis) {
    h.check_shape();
    if (basis.rows != h.dim) throw ValidationError("subhopf_restrict: basis has wrong row count");
    const int d = h.dim, k = basis.cols;
    CoordMap cm(basis);
    auto col_vec = [&](int j) {
        QVec v;
        for (int i = 0; i < d; ++i)
            if (basis.at(i, j) != 0) v.push_back({i, basis.at(i, j)});
        return v;
    };
    std::vector<QVec> cols(k);
    for (int j = 0; j < k; ++j) cols[j] = col_vec(j);

    HopfAlgebra s;
    s.dim = k;
    s.m.assign(std::size_t(k) * k, {});
    s.delta.assign(k, {});
    s.counit.assign(k, kZero);
    s.antipode.assign(k, {});
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            auto c = cm.coords(dense(h.mul_vec(cols[i], cols[j]), d));
            if (!c) throw ValidationError("subhopf_restrict: not closed under multiplication");
            s.m[std::size_t(i) * k + j] = sparsify(*c);
        }
    auto cu = cm.coords(dense(h.unit, d));
    if (!cu) throw ValidationError("subhopf_restrict: unit not contained in subspace");
    s.unit = sparsify(*cu);
    for (int j = 0; j < k; ++j) {
        // Delta(col_j) must lie in span (x) span
        std::map<int, Q> acc; // pair (p,q) in sub coords
        std::map<long long, Q> check;
        for (const auto& [i, ci] : cols[j])
            for (const auto& [ab, c] : h.delta[i]) {
                long long key = ab;
                check[key] += ci * c;
            }
        // coordinates legwise: first leg
        std::map<int, std::vector<Q>> rows_by_a; // a -> dense vector over b
        for (const auto& [key, c] : check) {
            if (c == 0) continue;
            int a = int(key / d), b = int(key % d);
            auto& row = rows_by_a[a];
            if (row.empty()) row.assign(d, kZero);
            row[b] = c;
        }
        // build the d x d dense coefficient matrix D with D[a][b], compute C = L D L^T
        QMatrix D(d, d);
        for (const auto& [a, row] : rows_by_a)
            for (int b = 0; b < d; ++b) D.at(a, b) = row[b];
        // L = inv * select(rows): C[p][q] = sum_{i,j} L[p, rows[i_sel]] ...
        QMatrix Lsel(k, d);
        for (int p = 0; p < k; ++p)
            for (int i = 0; i < k; ++i) Lsel.at(p, cm.rows[i]) = cm.inv.at(p, i);
        QMatrix C = qmat_mul(qmat_mul(Lsel, D), [&] {
            QMatrix lt(d, k);
            for (int p = 0; p < k; ++p)
                for (int i = 0; i < d; ++i) lt.at(i, p) = Lsel.at(p, i);
            return lt;
        }());
        // verify basis * C * basis^T == D
        QMatrix bt(k, d);
        for (int i = 0; i < d; ++i)
            for (int j2 = 0; j2 < k; ++j2) bt.at(j2, i) = basis.at(i, j2);
        QMatrix back = qmat_mul(qmat_mul(basis, C), bt);
        if (!qmat_equal(back, D))
            throw ValidationError("subhopf_restrict: not closed under comultiplication");
        for (int p = 0; p < k; ++p)
            for (int q = 0; q < k; ++q) qvec_push(acc, p * k + q, C.at(p, q));
        s.delta[j] = from_map(acc);
        s.counit[j] = h.counit_of(cols[j]);
        auto sc = cm.coords(dense(h.apply_antipode(cols[j]), d));
        if (!sc) throw ValidationError("subhopf_restrict: not closed under antipode");
        s.antipode[j] = sparsify(*sc);
    }
    s.basis_names.reserve(k);
    for (int j = 0; j < k; ++j) s.basis_names.push_back("k" + std::to_string(j));
    return s;
}

HopfAlgebra quotient_hopf(const HopfAlgebra& h, const QMatrix& sub_basis) {
    h.check_shape();
    const int d = h.dim;
    if (sub_basis.rows != d) throw ValidationError("quotient_hopf: sub basis has wrong row count");

    // augmentation ideal generators of the subalgebra
    std::vector<QVec> plus;
    for (int j = 0; j < sub_basis.cols; ++j) {
        QVec col;
        for (int i = 0; i < d; ++i)
            if (sub_basis.at(i, j) != 0) col.push_back({i, sub_basis.at(i, j)});
        QVec w = qvec_add(col, qvec_scale(h.unit, -h.counit_of(col)));
        if (!qvec_is_zero(w)) plus.push_back(w);
    }
    QSpan ideal;
    for (int i = 0; i < d; ++i)
        for (const auto& w : plus) ideal.add(dense(h.mul_vec(QVec{{i, Q(1)}}, w), d));

    // two-sided check on the reduced spanning rows
    for (const auto& row : ideal.rows()) {
        QVec rv = sparsify(row);
        for (int c = 0; c < d; ++c)
            if (!ideal.contains(dense(h.mul_vec(rv, QVec{{c, Q(1)}}), d)))
                throw ValidationError("quotient_hopf: H sub+ is not a right ideal (not normal)");
        if (h.counit_of(rv) != 0)
            throw ValidationError("quotient_hopf: counit does not vanish on the ideal");
        if (!ideal.contains(dense(h.apply_antipode(rv), d)))
            throw ValidationError("quotient_hopf: ideal not stable under the antipode");
    }

    // complement coordinates: non-pivot columns of the reduced ideal
    std::vector<char> is_pivot(d, 0);
    for (int p : ideal.pivots()) is_pivot[p] = 1;
    std::vector<int> free_cols;
    for (int i = 0; i < d; ++i)
        if (!is_pivot[i]) free_cols.push_back(i);
    const int k = int(free_cols.size());
    if (k == 0) throw ValidationError("quotient_hopf: quotient is zero");

    auto project = [&](const QVec& v) {
        std::vector<Q> red = ideal.reduce(dense(v, d));
        QVec out;
        for (int c = 0; c < k; ++c)
            if (red[free_cols[c]] != 0) out.push_back({c, red[free_cols[c]]});
        return out;
    };
    std::vector<QVec> qcoord(d);
    for (int i = 0; i < d; ++i) qcoord[i] = project(QVec{{i, Q(1)}});

    // coideal condition: (q (x) q) Delta kills the ideal
    for (const auto& row : ideal.rows()) {
        std::map<int, Q> img;
        QVec rv = sparsify(row);
        for (const auto& [i, ci] : rv)
            for (const auto& [ab, c] : h.delta[i]) {
                for (const auto& [p, a2] : qcoord[ab / d])
                    for (const auto& [q2, b2] : qcoord[ab % d])
                        qvec_push(img, p * k + q2, ci * c * a2 * b2);
            }
        if (!img.empty())
            throw ValidationError("quotient_hopf: ideal is not a coideal (Delta does not descend)");
    }

    HopfAlgebra out;
    out.dim = k;
    out.m.assign(std::size_t(k) * k, {});
    out.delta.assign(k, {});
    out.counit.assign(k, kZero);
    out.antipode.assign(k, {});
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            out.m[std::size_t(i) * k + j] =
                project(h.mul_vec(QVec{{free_cols[i], Q(1)}}, QVec{{free_cols[j], Q(1)}}));
    out.unit = project(h.unit);
    for (int i = 0; i < k; ++i) {
        std::map<int, Q> acc;
        for (const auto& [ab, c] : h.delta[free_cols[i]])
            for (const auto& [p, a2] : qcoord[ab / d])
                for (const auto& [q2, b2] : qcoord[ab % d]) qvec_push(acc, p * k + q2, c * a2 * b2);
        out.delta[i] = from_map(acc);
        out.counit[i] = h.counit[free_cols[i]];
        out.antipode[i] = project(h.apply_antipode(QVec{{free_cols[i], Q(1)}}));
    }
    out.basis_names.reserve(k);
    for (int i = 0; i < k; ++i) out.basis_names.push_back("q" + std::to_string(i));
    return out;
}

SeriesCertificate verify_subnormal_series(const HopfAlgebra& h, const std::vector<QMatrix>& chain) {
    SeriesCertificate cert;
    if (chain.empty()) {
        cert.failure = "empty chain";
        return cert;
    }
    // the chain lists K_1 .. K_n in H coordinates; K_0 = H
    const QMatrix& last = chain.back();
    {
        QVec u = h.unit;
        bool unit_line = last.cols == 1;
        if (unit_line) {
            std::vector<Q> col(h.dim);
            for (int i = 0; i < h.dim; ++i) col[i] = last.at(i, 0);
            QSpan s;
            s.add(col);
            unit_line = s.contains(dense(u, h.dim)) && s.rank() == 1;
        }
        if (!unit_line) {
            cert.failure = "chain does not terminate at the unit line k";
            return cert;
        }
    }

    HopfAlgebra current = h;                      // K_i as an abstract Hopf algebra
    QMatrix current_basis = QMatrix::identity(h.dim); // K_i basis in H coordinates
    for (std::size_t step = 0; step < chain.size(); ++step) {
        // express the next term inside the current one
        std::optional<CoordMap> cm;
        try {
            cm.emplace(current_basis);
        } catch (const Error& e) {
            cert.failure = "step " + std::to_string(step) + ": invalid basis: " + e.what();
            return cert;
        }
        QMatrix next_in_current(current.dim, chain[step].cols);
        for (int j = 0; j < chain[step].cols; ++j) {
            std::vector<Q> v(h.dim);
            for (int i = 0; i < h.dim; ++i) v[i] = chain[step].at(i, j);
            auto c = cm->coords(v);
            if (!c) {
                cert.failure = "step " + std::to_string(step) + ": K_" + std::to_string(step + 1) +
                               " is not contained in K_" + std::to_string(step);
                return cert;
            }
            for (int i = 0; i < current.dim; ++i) next_in_current.at(i, j) = (*c)[i];
        }

        // Hopf subalgebra check
        HopfAlgebra next;
        try {
            next = subhopf_restrict(current, next_in_current);
        } catch (const Error& e) {
            cert.failure = "step " + std::to_string(step) + ": not a Hopf subalgebra: " + e.what();
            return cert;
        }

        // normality in the current term: both adjoint actions stabilize the subspace
        {
            QSpan sub_span;
            for (int j = 0; j < next_in_current.cols; ++j) {
                std::vector<Q> v(current.dim);
                for (int i = 0; i < current.dim; ++i) v[i] = next_in_current.at(i, j);
                sub_span.add(v);
            }
            const int dc = current.dim;
            for (int i = 0; i < dc; ++i)
                for (int j = 0; j < next_in_current.cols; ++j) {
                    QVec y;
                    for (int r = 0; r < dc; ++r)
                        if (next_in_current.at(r, j) != 0) y.push_back({r, next_in_current.at(r, j)});
                    std::map<int, Q> adl, adr;
                    for (const auto& [ab, c] : current.delta[i]) {
                        int a = ab / dc, b = ab % dc;
                        QVec l = current.mul_vec(current.mul_vec(QVec{{a, Q(1)}}, y),
                                                 current.antipode[b]);
                        for (const auto& [z, w] : l) qvec_push(adl, z, c * w);
                        QVec r = current.mul_vec(current.mul_vec(current.antipode[a], y),
                                                 QVec{{b, Q(1)}});
                        for (const auto& [z, w] : r) qvec_push(adr, z, c * w);
                    }
                    if (!sub_span.contains(dense(from_map(adl), dc)) ||
                        !sub_span.contains(dense(from_map(adr), dc))) {
                        cert.failure = "step " + std::to_string(step) + ": K_" +
                                       std::to_string(step + 1) + " is not normal in K_" +
                                       std::to_string(step);
                        return cert;
                    }
                }
        }

        // quotient factor and classification
        HopfAlgebra factor;
        try {
            factor = quotient_hopf(current, next_in_current);
        } catch (const Error& e) {
            cert.failure = "step " + std::to_string(step) + ": quotient failed: " + e.what();
            return cert;
        }
        ValidationReport frep = verify_hopf_axioms(factor);
        if (!frep.ok) {
            cert.failure = "step " + std::to_string(step) +
                           ": quotient is not a Hopf algebra: " + frep.summary();
            return cert;
        }
        bool comm = is_commutative(factor), cocomm = is_cocommutative(factor);
        if (!comm && !cocomm) {
            cert.failure = "step " + std::to_string(step) +
                           ": factor is neither commutative nor cocommutative";
            return cert;
        }
        cert.factors.push_back(comm && cocomm ? FactorType::both
                                              : (comm ? FactorType::commutative
                                                      : FactorType::cocommutative));

        current = std::move(next);
        current_basis = chain[step];
    }
    cert.ok = true;
    return cert;
}

SeriesCertificate upper_series_via_dual(const HopfAlgebra& h, const std::vector<QMatrix>& dual_chain) {
    return verify_subnormal_series(dual_hopf(h), dual_chain);
}

} // namespace crossext::hopf
