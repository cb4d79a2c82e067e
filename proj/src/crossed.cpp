#include "crossext/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "crossext/error.hpp"
#include "crossext/groups.hpp"

namespace crossext::crossed {

using linalg::CMatrix;
using linalg::cplx;
using linalg::Tolerance;

void CrossedActionData::check_shape() const {
    mp.check_shape();
    base.check_shape();
    const int n = base.size();
    if (int(deg.size()) != n) throw ValidationError("CrossedActionData: deg table has wrong size");
    for (int d : deg)
        if (d < 0 || d >= mp.Gamma.order())
            throw ValidationError("CrossedActionData: degree out of range");
    if (int(rho.size()) != mp.G.order())
        throw ValidationError("CrossedActionData: one permutation per G element required");
    for (const auto& p : rho) {
        if (int(p.size()) != n) throw ValidationError("CrossedActionData: rho row has wrong size");
        for (int v : p)
            if (v < 0 || v >= n) throw ValidationError("CrossedActionData: rho value out of range");
    }
}

bool CrossedActionData::is_pointed() const {
    const int ns = mp.Gamma.order();
    if (base.size() != ns) return false;
    for (int s = 0; s < ns; ++s)
        if (deg[s] != s) return false;
    if (base.unit != mp.Gamma.identity()) return false;
    for (int s = 0; s < ns; ++s) {
        if (base.dual[s] != mp.Gamma.inv(s)) return false;
        for (int t = 0; t < ns; ++t) {
            const auto& p = base.product(s, t);
            if (p.size() != 1 || p[0].first != mp.Gamma.mul(s, t) || p[0].second != 1) return false;
        }
    }
    return true;
}

ValidationReport verify_crossed_action(const CrossedActionData& d) {
    d.check_shape();
    ValidationReport rep = matched::verify_matched_pair(d.mp);
    rep.merge(rings::verify_based_ring(d.base));
    const int n = d.base.size();
    const int ng = d.mp.G.order();
    const int eg = d.mp.G.identity();

    // the Gamma-grading itself
    if (!rings::check_grading(d.base, rings::GradingMap{d.mp.Gamma, d.deg}))
        rep.fail("gamma-grading", "deg does not grade the base ring over Gamma");

    // rho[g] bijective
    for (int g = 0; g < ng; ++g) {
        std::vector<char> seen(n, 0);
        for (int x = 0; x < n; ++x)
            if (seen[d.rho[g][x]]++)
                rep.fail("rho-bijective", "rho^g not a permutation at g=" + std::to_string(g));
    }
    // right action: rho^g o rho^h = rho^{hg}
    bool action_witnessed = false;
    for (int g = 0; g < ng && !action_witnessed; ++g)
        for (int h = 0; h < ng && !action_witnessed; ++h)
            for (int x = 0; x < n; ++x)
                if (d.rho[g][d.rho[h][x]] != d.rho[d.mp.G.mul(h, g)][x]) {
                    rep.fail("rho-action", "rho^g rho^h != rho^{hg} at (g,h,x)=(" +
                                               std::to_string(g) + "," + std::to_string(h) + "," +
                                               std::to_string(x) + ")");
                    action_witnessed = true;
                    break;
                }
    for (int x = 0; x < n; ++x)
        if (d.rho[eg][x] != x) {
            rep.fail("rho-action", "rho^e is not the identity at x=" + std::to_string(x));
            break;
        }
    // unit fixed
    for (int g = 0; g < ng; ++g)
        if (d.rho[g][d.base.unit] != d.base.unit)
            rep.fail("rho-unit", "rho^g moves the unit at g=" + std::to_string(g));

    // degree rule deg(rho^g(x)) = deg(x) <| g
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < n; ++x)
            if (d.deg[d.rho[g][x]] != d.mp.lhd[d.deg[x]][g])
                rep.fail("rho-degree", "deg(rho^g(x)) != deg(x)<|g at (g,x)=(" + std::to_string(g) +
                                           "," + std::to_string(x) + ")");

    // twisted multiplicativity: products transport along rho
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int t = d.deg[y];
                int tg = d.mp.rhd[t][g];
                const auto& src = d.base.product(x, y);
                const auto& dst = d.base.product(d.rho[tg][x], d.rho[g][y]);
                std::vector<std::pair<int, int>> transported;
                for (auto [z, m] : src) transported.push_back({d.rho[g][z], m});
                std::sort(transported.begin(), transported.end());
                if (transported != dst) {
                    std::ostringstream os;
                    os << "(g,x,y)=(" << g << "," << x << "," << y << ")";
                    rep.fail("twisted-multiplicativity", os.str());
                }
            }
    return rep;
}

CrossedActionData pointed_crossed_from_matched_pair(const matched::MatchedPair& mp) {
    ValidationReport mrep = matched::verify_matched_pair(mp);
    if (!mrep.ok)
        throw ValidationError("pointed_crossed_from_matched_pair: invalid matched pair: " +
                              mrep.summary());
    CrossedActionData d{mp, rings::group_ring(mp.Gamma), {}, {}};
    d.deg.resize(mp.Gamma.order());
    for (int s = 0; s < mp.Gamma.order(); ++s) d.deg[s] = s;
    d.rho.assign(mp.G.order(), std::vector<int>(mp.Gamma.order()));
    for (int g = 0; g < mp.G.order(); ++g)
        for (int s = 0; s < mp.Gamma.order(); ++s) d.rho[g][s] = mp.lhd[s][g];
    return d;
}

int EquivariantObject::total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

int EquivariantObject::offset(int s) const {
    int o = 0;
    for (int i = 0; i < s; ++i) o += dims[i];
    return o;
}

ValidationReport validate_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                      const Tolerance& tol) {
    ValidationReport rep;
    const int ns = d.mp.Gamma.order(), ng = d.mp.G.order();
    if (int(x.dims.size()) != ns) {
        rep.fail("shape", "dims must have one entry per Gamma element");
        return rep;
    }
    for (int v : x.dims)
        if (v < 0) rep.fail("shape", "negative component dimension");
    const int n = x.total_dim();
    if (int(x.r.size()) != ng) {
        rep.fail("shape", "one structure matrix per G element required");
        return rep;
    }
    for (const auto& m : x.r)
        if (m.rows() != n || m.cols() != n) {
            rep.fail("shape", "structure matrix has wrong size");
            return rep;
        }
    double scale = 1.0;
    for (const auto& m : x.r) scale = std::max(scale, linalg::max_abs(m));

    if (!linalg::approx_equal(x.r[d.mp.G.identity()], CMatrix::identity(n), 1e-9 * scale))
        rep.fail("r-identity", "r(e) != id");

    // block support: degree s components land in degree s <| g
    for (int g = 0; g < ng; ++g)
        for (int s = 0; s < ns; ++s) {
            int sg = d.mp.lhd[s][g];
            for (int j = 0; j < x.dims[s]; ++j)
                for (int t = 0; t < ns; ++t) {
                    if (t == sg) continue;
                    for (int i = 0; i < x.dims[t]; ++i)
                        if (std::abs(x.r[g](x.offset(t) + i, x.offset(s) + j)) > 1e-9 * scale) {
                            rep.fail("r-blocks", "support outside s -> s<|g at g=" +
                                                     std::to_string(g) + ", s=" + std::to_string(s));
                            t = ns;
                            j = x.dims[s];
                            break;
                        }
                }
        }

    // composition r(g) r(h) = r(hg)
    for (int g = 0; g < ng; ++g)
        for (int h = 0; h < ng; ++h) {
            CMatrix lhs = linalg::matmul(x.r[g], x.r[h]);
            if (!linalg::approx_equal(lhs, x.r[d.mp.G.mul(h, g)], tol.round_eps * scale * scale)) {
                rep.fail("r-composition", "r(g)r(h) != r(hg) at (g,h)=(" + std::to_string(g) + "," +
                                              std::to_string(h) + ")");
            }
        }
    return rep;
}

EquivariantObject unit_object(const CrossedActionData& d) {
    EquivariantObject x;
    x.dims.assign(d.mp.Gamma.order(), 0);
    x.dims[d.mp.Gamma.identity()] = 1;
    x.r.assign(d.mp.G.order(), CMatrix::identity(1));
    return x;
}

EquivariantObject tensor_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                     const EquivariantObject& y) {
    const int ns = d.mp.Gamma.order(), ng = d.mp.G.order();
    EquivariantObject out;
    out.dims.assign(ns, 0);
    // block layout inside each target degree: pairs (t, s) in lexicographic order
    std::vector<std::vector<int>> pair_offset(ns, std::vector<int>(ns, -1));
    for (int t = 0; t < ns; ++t)
        for (int s = 0; s < ns; ++s) {
            if (x.dims[t] == 0 || y.dims[s] == 0) continue;
            int u = d.mp.Gamma.mul(t, s);
            pair_offset[t][s] = out.dims[u];
            out.dims[u] += x.dims[t] * y.dims[s];
        }
    const int n = out.total_dim();
    out.r.assign(ng, CMatrix(n, n));
    for (int g = 0; g < ng; ++g) {
        for (int t = 0; t < ns; ++t)
            for (int s = 0; s < ns; ++s) {
                if (pair_offset[t][s] < 0) continue;
                int u = d.mp.Gamma.mul(t, s);
                int sg = d.mp.rhd[s][g];       // s |> g twists the left factor
                int t2 = d.mp.lhd[t][sg];      // t <| (s |> g)
                int s2 = d.mp.lhd[s][g];       // s <| g
                int u2 = d.mp.Gamma.mul(t2, s2);
                // source block: rows of x at t, y at s; target block at (t2, s2)
                int src = out.offset(u) + pair_offset[t][s];
                int dst = out.offset(u2) + pair_offset[t2][s2];
                if (pair_offset[t2][s2] < 0)
                    throw Error("tensor_equivariant: target block missing");
                for (int i1 = 0; i1 < x.dims[t2]; ++i1)
                    for (int j1 = 0; j1 < x.dims[t]; ++j1) {
                        cplx a = x.r[sg](x.offset(t2) + i1, x.offset(t) + j1);
                        if (a == cplx(0.0)) continue;
                        for (int i2 = 0; i2 < y.dims[s2]; ++i2)
                            for (int j2 = 0; j2 < y.dims[s]; ++j2) {
                                cplx b = y.r[g](y.offset(s2) + i2, y.offset(s) + j2);
                                if (b == cplx(0.0)) continue;
                                out.r[g](dst + i1 * y.dims[s2] + i2, src + j1 * y.dims[s] + j2) =
                                    a * b;
                            }
                    }
            }
    }
    return out;
}

namespace {

// unknowns: degree-preserving block maps f_s: X_s -> Y_s; constraints
// f_{s<|g} rX(g)|_s = rY(g)|_s f_s for g in a generating set.
struct HomSystem {
    std::vector<int> block_offset; // per degree, offset into the unknown vector
    int unknowns = 0;
    CMatrix sys;
};

HomSystem hom_system(const CrossedActionData& d, const EquivariantObject& x,
                     const EquivariantObject& y) {
    const int ns = d.mp.Gamma.order();
    HomSystem hs;
    hs.block_offset.assign(ns, -1);
    for (int s = 0; s < ns; ++s) {
        if (x.dims[s] == 0 || y.dims[s] == 0) continue;
        hs.block_offset[s] = hs.unknowns;
        hs.unknowns += x.dims[s] * y.dims[s];
    }
    std::vector<int> gens = groups::minimal_generating_set(d.mp.G);
    if (gens.empty()) gens.push_back(d.mp.G.identity());
    int rows = 0;
    for (int s = 0; s < ns; ++s)
        for (int g : gens) {
            int sg = d.mp.lhd[s][g];
            rows += y.dims[sg] * x.dims[s];
        }
    hs.sys = CMatrix(rows, std::max(hs.unknowns, 1));
    int r = 0;
    for (int g : gens)
        for (int s = 0; s < ns; ++s) {
            int sg = d.mp.lhd[s][g];
            // equations indexed by (i in Y_{sg}, j in X_s)
            for (int i = 0; i < y.dims[sg]; ++i)
                for (int j = 0; j < x.dims[s]; ++j, ++r) {
                    // (f_{sg} rX)_{ij}: sum_q f_{sg}[i][q] rX(g)[off_x(sg)+q][off_x(s)+j]
                    if (hs.block_offset[sg] >= 0)
                        for (int q = 0; q < x.dims[sg]; ++q)
                            hs.sys(r, hs.block_offset[sg] + i * x.dims[sg] + q) +=
                                x.r[g](x.offset(sg) + q, x.offset(s) + j);
                    // -(rY f_s)_{ij}: sum_p rY(g)[off_y(sg)+i][off_y(s)+p] f_s[p][j]
                    if (hs.block_offset[s] >= 0)
                        for (int p = 0; p < y.dims[s]; ++p)
                            hs.sys(r, hs.block_offset[s] + p * x.dims[s] + j) -=
                                y.r[g](y.offset(sg) + i, y.offset(s) + p);
                }
        }
    return hs;
}

} // namespace

int hom_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                    const EquivariantObject& y, const Tolerance& tol) {
    HomSystem hs = hom_system(d, x, y);
    if (hs.unknowns == 0) return 0;
    return int(linalg::nullspace(hs.sys, tol).size());
}

EquivariantObject induced_object(const CrossedActionData& d, const std::vector<int>& orbit) {
    if (!d.is_pointed()) throw ValidationError("induced_object: crossed data must be pointed");
    const int ng = d.mp.G.order();
    const auto& G = d.mp.G;
    int base_pt = *std::min_element(orbit.begin(), orbit.end());
    std::vector<int> stab;
    for (int g = 0; g < ng; ++g)
        if (d.mp.lhd[base_pt][g] == base_pt) stab.push_back(g);
    const int k = int(stab.size());
    std::vector<int> stab_index(ng, -1);
    for (int i = 0; i < k; ++i) stab_index[stab[i]] = i;
    // coset representatives: smallest g carrying the base point to each s
    std::vector<int> rep(d.mp.Gamma.order(), -1);
    for (int g = 0; g < ng; ++g) {
        int s = d.mp.lhd[base_pt][g];
        if (rep[s] < 0) rep[s] = g;
    }
    EquivariantObject x;
    x.dims.assign(d.mp.Gamma.order(), 0);
    for (int s : orbit) {
        if (rep[s] < 0) throw ValidationError("induced_object: orbit is not a single <|-orbit");
        x.dims[s] = k;
    }
    const int n = x.total_dim();
    x.r.assign(ng, CMatrix(n, n));
    for (int g = 0; g < ng; ++g)
        for (int s : orbit) {
            int sg = d.mp.lhd[s][g];
            // h = rep(s) g rep(sg)^{-1} lies in the stabilizer
            int h = G.mul(rep[s], G.mul(g, G.inv(rep[sg])));
            if (stab_index[h] < 0) throw Error("induced_object: coset arithmetic failed");
            // block s -> sg is right multiplication by h on the stabilizer algebra
            for (int i = 0; i < k; ++i) {
                int target = stab_index[G.mul(stab[i], h)];
                x.r[g](x.offset(sg) + target, x.offset(s) + i) = 1.0;
            }
        }
    return x;
}

EquivariantObject regular_object(const CrossedActionData& d) {
    if (!d.is_pointed()) throw ValidationError("regular_object: crossed data must be pointed");
    const int ns = d.mp.Gamma.order(), ng = d.mp.G.order();
    std::vector<char> seen(ns, 0);
    EquivariantObject total;
    total.dims.assign(ns, 0);
    total.r.assign(ng, CMatrix(0, 0));
    std::vector<EquivariantObject> parts;
    for (int s = 0; s < ns; ++s) {
        if (seen[s]) continue;
        std::vector<int> orbit;
        for (int g = 0; g < ng; ++g) {
            int t = d.mp.lhd[s][g];
            if (!seen[t]) {
                seen[t] = 1;
                orbit.push_back(t);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        parts.push_back(induced_object(d, orbit));
    }
    // direct sum with per-degree concatenation in part order
    for (const auto& p : parts)
        for (int s = 0; s < ns; ++s) total.dims[s] += p.dims[s];
    const int n = total.total_dim();
    for (int g = 0; g < ng; ++g) total.r[g] = CMatrix(n, n);
    std::vector<int> placed(ns, 0);
    std::vector<std::vector<int>> part_offset(parts.size(), std::vector<int>(ns, 0));
    for (std::size_t pi = 0; pi < parts.size(); ++pi)
        for (int s = 0; s < ns; ++s) {
            part_offset[pi][s] = placed[s];
            placed[s] += parts[pi].dims[s];
        }
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const auto& p = parts[pi];
        for (int g = 0; g < ng; ++g)
            for (int s = 0; s < ns; ++s)
                for (int t = 0; t < ns; ++t)
                    for (int j = 0; j < p.dims[s]; ++j)
                        for (int i = 0; i < p.dims[t]; ++i) {
                            cplx v = p.r[g](p.offset(t) + i, p.offset(s) + j);
                            if (v != cplx(0.0))
                                total.r[g](total.offset(t) + part_offset[pi][t] + i,
                                           total.offset(s) + part_offset[pi][s] + j) = v;
                        }
    }
    return total;
}

namespace {

using CharKey = std::vector<std::pair<long long, long long>>;

// character of the associated module: trace of the degree-s diagonal block of
// r(g^{-1}), indexed over (s, g)
CharKey eq_char_key(const CrossedActionData& d, const EquivariantObject& x) {
    const int ns = d.mp.Gamma.order(), ng = d.mp.G.order();
    CharKey key;
    key.reserve(std::size_t(ns) * ng);
    for (int s = 0; s < ns; ++s)
        for (int g = 0; g < ng; ++g) {
            int gi = d.mp.G.inv(g);
            cplx t = 0.0;
            if (d.mp.lhd[s][gi] == s)
                for (int i = 0; i < x.dims[s]; ++i) t += x.r[gi](x.offset(s) + i, x.offset(s) + i);
            key.push_back({llround(t.real() * 1e6), llround(t.imag() * 1e6)});
        }
    return key;
}

std::vector<CMatrix> eq_commutant(const CrossedActionData& d, const EquivariantObject& x,
                                  const Tolerance& tol, std::vector<int>* offsets_out) {
    HomSystem hs = hom_system(d, x, x);
    if (offsets_out) *offsets_out = hs.block_offset;
    std::vector<CMatrix> out;
    if (hs.unknowns == 0) return out;
    for (const auto& v : linalg::nullspace(hs.sys, tol)) {
        // embed the block unknowns into a full matrix
        CMatrix f(x.total_dim(), x.total_dim());
        for (int s = 0; s < int(x.dims.size()); ++s) {
            if (hs.block_offset[s] < 0) continue;
            for (int i = 0; i < x.dims[s]; ++i)
                for (int j = 0; j < x.dims[s]; ++j)
                    f(x.offset(s) + i, x.offset(s) + j) =
                        v(hs.block_offset[s] + i * x.dims[s] + j, 0);
        }
        out.push_back(std::move(f));
    }
    return out;
}

struct EqSplitter {
    const CrossedActionData& d;
    const Tolerance& tol;
    std::mt19937_64 rng;
    std::vector<EquivariantObject> leaves;

    void split(const EquivariantObject& x) {
        if (x.total_dim() == 0) return;
        std::vector<CMatrix> comm = eq_commutant(d, x, tol, nullptr);
        if (comm.size() <= 1) {
            leaves.push_back(x);
            return;
        }
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const int ns = int(x.dims.size());
        for (int attempt = 0; attempt < 32; ++attempt) {
            CMatrix t(x.total_dim(), x.total_dim());
            for (const auto& c : comm) {
                cplx w(u(rng), u(rng));
                for (int i = 0; i < t.rows(); ++i)
                    for (int j = 0; j < t.cols(); ++j) t(i, j) += w * c(i, j);
            }
            // global eigenvalue clustering across the diagonal blocks
            std::vector<cplx> all_eigs;
            std::vector<std::vector<cplx>> block_eigs(ns);
            for (int s = 0; s < ns; ++s) {
                if (x.dims[s] == 0) continue;
                CMatrix blk(x.dims[s], x.dims[s]);
                for (int i = 0; i < x.dims[s]; ++i)
                    for (int j = 0; j < x.dims[s]; ++j) blk(i, j) = t(x.offset(s) + i, x.offset(s) + j);
                block_eigs[s] = linalg::eigenvalues(blk);
                all_eigs.insert(all_eigs.end(), block_eigs[s].begin(), block_eigs[s].end());
            }
            // cluster representatives, separated pairwise
            std::vector<cplx> reps;
            bool separable = true;
            {
                std::sort(all_eigs.begin(), all_eigs.end(), [](cplx a, cplx b) {
                    if (a.real() != b.real()) return a.real() < b.real();
                    return a.imag() < b.imag();
                });
                for (const cplx& e : all_eigs) {
                    bool fresh = true;
                    for (const cplx& r0 : reps)
                        if (std::abs(e - r0) <= tol.cluster_eps) fresh = false;
                    if (fresh) reps.push_back(e);
                }
                for (std::size_t a = 0; a < reps.size() && separable; ++a)
                    for (std::size_t b = a + 1; b < reps.size(); ++b)
                        if (std::abs(reps[a] - reps[b]) <= 2.0 * tol.cluster_eps) separable = false;
            }
            if (!separable || reps.size() < 2) continue;
            bool failed = false;
            std::vector<EquivariantObject> subs;
            for (const cplx& lambda : reps) {
                // per-degree generalized kernels form the graded subobject
                EquivariantObject sub;
                sub.dims.assign(ns, 0);
                std::vector<CMatrix> bases(ns);
                for (int s = 0; s < ns; ++s) {
                    if (x.dims[s] == 0) {
                        bases[s] = CMatrix(0, 0);
                        continue;
                    }
                    int mult = 0;
                    for (const cplx& e : block_eigs[s])
                        if (std::abs(e - lambda) <= tol.cluster_eps) ++mult;
                    CMatrix blk(x.dims[s], x.dims[s]);
                    for (int i = 0; i < x.dims[s]; ++i)
                        for (int j = 0; j < x.dims[s]; ++j)
                            blk(i, j) = t(x.offset(s) + i, x.offset(s) + j);
                    try {
                        bases[s] = mult == 0 ? CMatrix(x.dims[s], 0)
                                             : linalg::generalized_kernel(blk, lambda, mult, tol);
                    } catch (const NumericalError&) {
                        failed = true;
                    }
                    if (failed) break;
                    sub.dims[s] = mult;
                }
                if (failed) break;
                // restrict the structure maps: r'(g) block s->s<|g = Q_{s<|g}^H r(g) Q_s
                const int ng = d.mp.G.order();
                sub.r.assign(ng, CMatrix(sub.total_dim(), sub.total_dim()));
                for (int g = 0; g < ng; ++g)
                    for (int s = 0; s < ns; ++s) {
                        int sg = d.mp.lhd[s][g];
                        if (sub.dims[s] == 0 || sub.dims[sg] == 0) continue;
                        // lift block of r(g) from s to sg
                        CMatrix blk(x.dims[sg], x.dims[s]);
                        for (int i = 0; i < x.dims[sg]; ++i)
                            for (int j = 0; j < x.dims[s]; ++j)
                                blk(i, j) = x.r[g](x.offset(sg) + i, x.offset(s) + j);
                        CMatrix small = linalg::matmul(linalg::adjoint(bases[sg]),
                                                       linalg::matmul(blk, bases[s]));
                        for (int i = 0; i < sub.dims[sg]; ++i)
                            for (int j = 0; j < sub.dims[s]; ++j)
                                sub.r[g](sub.offset(sg) + i, sub.offset(s) + j) = small(i, j);
                    }
                subs.push_back(std::move(sub));
            }
            if (failed) continue;
            for (const auto& sub : subs) split(sub);
            return;
        }
        throw NumericalError("decompose_equivariant: unsplittable after 32 reseeds");
    }
};

} // namespace

EqDecomposition decompose_equivariant(const CrossedActionData& d, const EquivariantObject& x,
                                      std::uint64_t seed, const Tolerance& tol) {
    tol.validate();
    EqSplitter sp{d, tol, std::mt19937_64(seed), {}};
    sp.split(x);
    std::map<CharKey, std::pair<EquivariantObject, int>> grouped;
    for (auto& leaf : sp.leaves) {
        CharKey key = eq_char_key(d, leaf);
        auto it = grouped.find(key);
        if (it == grouped.end())
            grouped.emplace(key, std::make_pair(leaf, 1));
        else
            it->second.second += 1;
    }
    std::vector<std::pair<CharKey, std::pair<EquivariantObject, int>>> ordered(grouped.begin(),
                                                                               grouped.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        int da = a.second.first.total_dim(), db = b.second.first.total_dim();
        // primary: minimal supported degree (orbit anchor), then dim, then key
        auto min_deg = [](const EquivariantObject& o) {
            for (int s = 0; s < int(o.dims.size()); ++s)
                if (o.dims[s] > 0) return s;
            return int(o.dims.size());
        };
        int ma = min_deg(a.second.first), mb = min_deg(b.second.first);
        if (ma != mb) return ma < mb;
        if (da != db) return da < db;
        return a.first < b.first;
    });
    EqDecomposition out;
    int total = 0;
    for (auto& [key, sm] : ordered) {
        (void)key;
        total += sm.first.total_dim() * sm.second;
        out.simples.push_back(std::move(sm.first));
        out.multiplicities.push_back(sm.second);
    }
    if (total != x.total_dim())
        throw NumericalError("decompose_equivariant: dimensions do not add up");
    return out;
}

rings::BasedRing equivariantization_ring(const CrossedActionData& d, std::uint64_t seed,
                                         const Tolerance& tol) {
    ValidationReport vrep = verify_crossed_action(d);
    if (!vrep.ok)
        throw ValidationError("equivariantization_ring: invalid crossed action: " + vrep.summary());
    if (!d.is_pointed())
        throw ValidationError("equivariantization_ring: base ring must be Z[Gamma] (pointed data)");

    EqDecomposition reg = decompose_equivariant(d, regular_object(d), seed, tol);
    std::vector<EquivariantObject>& simples = reg.simples;
    const int k = int(simples.size());
    long long dimsq = 0;
    for (const auto& s : simples) dimsq += (long long)s.total_dim() * s.total_dim();
    const long long target = (long long)d.mp.G.order() * d.mp.Gamma.order();
    if (dimsq != target)
        throw NumericalError("equivariantization_ring: sum of squared dims " +
                             std::to_string(dimsq) + " != |G||Gamma| = " + std::to_string(target));

    std::vector<CharKey> keys;
    for (const auto& s : simples) keys.push_back(eq_char_key(d, s));

    // unit = trivial object
    int unit = -1;
    {
        CharKey trivial_key = eq_char_key(d, unit_object(d));
        for (int i = 0; i < k; ++i)
            if (keys[i] == trivial_key) unit = i;
    }
    if (unit < 0) throw NumericalError("equivariantization_ring: trivial object not among simples");

    std::vector<std::array<int, 4>> entries;
    std::vector<std::vector<int>> n_table(std::size_t(k) * k, std::vector<int>(k, 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            EquivariantObject prod = tensor_equivariant(d, simples[a], simples[b]);
            EqDecomposition dec = decompose_equivariant(d, prod, seed, tol);
            for (std::size_t p = 0; p < dec.simples.size(); ++p) {
                CharKey pk = eq_char_key(d, dec.simples[p]);
                int idx = -1;
                for (int q = 0; q < k; ++q)
                    if (keys[q] == pk) idx = q;
                if (idx < 0)
                    throw NumericalError(
                        "equivariantization_ring: product contains an unknown simple");
                n_table[std::size_t(a) * k + b][idx] = dec.multiplicities[p];
                entries.push_back({a, b, idx, dec.multiplicities[p]});
            }
        }

    std::vector<int> dual(k, -1);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            int m = n_table[std::size_t(a) * k + b][unit];
            if (m == 1) {
                if (dual[a] >= 0)
                    throw Error("equivariantization_ring: duality search found multiple candidates");
                dual[a] = b;
            } else if (m > 1)
                throw Error("equivariantization_ring: unit multiplicity > 1 in a product");
        }
        if (dual[a] < 0) throw Error("equivariantization_ring: duality search found no candidate");
    }

    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("S" + std::to_string(i));
    rings::BasedRing ring = rings::BasedRing::from_sparse(std::move(labels), unit, std::move(dual),
                                                          entries);
    ValidationReport rep = rings::verify_based_ring(ring);
    if (!rep.ok)
        throw Error("equivariantization_ring: extracted ring fails validation: " + rep.summary());
    return ring;
}

std::pair<rings::BasedRing, rings::GradingMap> dual_graded_ring(const CrossedActionData& d) {
    ValidationReport vrep = verify_crossed_action(d);
    if (!vrep.ok)
        throw ValidationError("dual_graded_ring: invalid crossed action: " + vrep.summary());
    const int ng = d.mp.G.order();
    const int nb = d.base.size();
    const int n = ng * nb;
    auto idx = [&](int g, int x) { return g * nb + x; };

    matched::BicrossedGroup bg = matched::bicrossed_group(d.mp);

    std::vector<std::array<int, 4>> entries;
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < nb; ++x)
            for (int h = 0; h < ng; ++h)
                for (int y = 0; y < nb; ++y) {
                    int t = d.deg[x];
                    int gh = d.mp.G.mul(g, d.mp.rhd[t][h]);
                    for (auto [z, m] : d.base.product(d.rho[h][x], y))
                        entries.push_back({idx(g, x), idx(h, y), idx(gh, z), m});
                }

    // duals by the rigidity search: the unique partner producing the unit
    const int unit = idx(d.mp.G.identity(), d.base.unit);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < nb; ++x)
            labels.push_back("k(" + d.mp.G.name(g) + ")&" + d.base.labels[x]);
    std::vector<int> dual(n, -1);
    {
        // collect unit coefficients from the entry list
        std::map<std::pair<int, int>, int> unit_mult;
        for (const auto& e : entries)
            if (e[2] == unit) unit_mult[{e[0], e[1]}] += e[3];
        for (const auto& [key, m] : unit_mult) {
            if (m == 1) {
                if (dual[key.first] >= 0)
                    throw Error("dual_graded_ring: duality search found multiple candidates");
                dual[key.first] = key.second;
            } else if (m > 1)
                throw Error("dual_graded_ring: unit multiplicity > 1");
        }
        for (int i = 0; i < n; ++i)
            if (dual[i] < 0) throw Error("dual_graded_ring: duality search found no candidate");
    }

    rings::BasedRing ring = rings::BasedRing::from_sparse(std::move(labels), unit, std::move(dual),
                                                          entries);
    ValidationReport rrep = rings::verify_based_ring(ring);
    if (!rrep.ok) throw Error("dual_graded_ring: ring fails validation: " + rrep.summary());

    rings::GradingMap grading{bg.group, {}};
    grading.deg.resize(n);
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < nb; ++x) grading.deg[idx(g, x)] = bg.pair_index(g, d.deg[x]);
    if (!rings::check_grading(ring, grading))
        throw Error("dual_graded_ring: grading fails check_grading");
    return {std::move(ring), std::move(grading)};
}

} // namespace crossext::crossed
