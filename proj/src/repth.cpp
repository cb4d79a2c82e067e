#include "crossext/repth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "crossext/error.hpp"

namespace crossext::repth {

using linalg::CMatrix;
using linalg::cplx;
using linalg::Tolerance;

namespace {

cplx to_cplx(const hopf::Q& q) { return cplx(q.get_d(), 0.0); }

CMatrix action_of_qvec(const HModule& m, const hopf::QVec& v) {
    CMatrix out(m.dim, m.dim);
    for (const auto& [i, c] : v) {
        double x = c.get_d();
        for (int r = 0; r < m.dim; ++r)
            for (int s = 0; s < m.dim; ++s) out(r, s) += x * m.action[i](r, s);
    }
    return out;
}

} // namespace

void HModule::check_shape(int algebra_dim) const {
    if (dim < 0) throw ValidationError("HModule: negative dimension");
    if (int(action.size()) != algebra_dim)
        throw ValidationError("HModule: one action matrix per algebra basis element required");
    for (const auto& a : action) {
        if (a.rows() != dim || a.cols() != dim)
            throw ValidationError("HModule: action matrix has wrong shape");
        a.check_finite();
    }
}

ValidationReport verify_module(const hopf::HopfAlgebra& h, const HModule& m, double rel_tol) {
    m.check_shape(h.dim);
    ValidationReport rep;
    double scale = 1.0;
    for (const auto& a : m.action) scale = std::max(scale, linalg::max_abs(a));
    // unit acts as the identity
    CMatrix u = action_of_qvec(m, h.unit);
    if (!linalg::approx_equal(u, CMatrix::identity(m.dim), rel_tol * scale))
        rep.fail("module-unit", "unit does not act as identity");
    // multiplicativity against structure constants
    for (int i = 0; i < h.dim; ++i)
        for (int j = 0; j < h.dim; ++j) {
            CMatrix lhs = linalg::matmul(m.action[i], m.action[j]);
            CMatrix rhs = action_of_qvec(m, h.m[std::size_t(i) * h.dim + j]);
            if (!linalg::approx_equal(lhs, rhs, rel_tol * scale * scale)) {
                rep.fail("module-mult", "rho(b_i)rho(b_j) != rho(b_i b_j) at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
                if (rep.witnesses.size() > 8) return rep;
            }
        }
    return rep;
}

HModule regular_module(const hopf::HopfAlgebra& h) {
    HModule m;
    m.dim = h.dim;
    m.action.assign(h.dim, CMatrix(h.dim, h.dim));
    for (int i = 0; i < h.dim; ++i)
        for (int j = 0; j < h.dim; ++j)
            for (const auto& [z, c] : h.m[std::size_t(i) * h.dim + j])
                m.action[i](z, j) += to_cplx(c);
    return m;
}

HModule trivial_module(const hopf::HopfAlgebra& h) {
    HModule m;
    m.dim = 1;
    m.action.assign(h.dim, CMatrix(1, 1));
    for (int i = 0; i < h.dim; ++i) m.action[i](0, 0) = to_cplx(h.counit[i]);
    return m;
}

HModule restrict_module(const hopf::HopfAlgebra& h, const hopf::QMatrix& sub_basis,
                        const HModule& m) {
    m.check_shape(h.dim);
    if (sub_basis.rows != h.dim) throw ValidationError("restrict_module: basis has wrong row count");
    // algebra closure check over the rationals
    hopf::QSpan span;
    std::vector<hopf::QVec> cols(sub_basis.cols);
    for (int j = 0; j < sub_basis.cols; ++j) {
        std::vector<hopf::Q> v(h.dim);
        for (int i = 0; i < h.dim; ++i) v[i] = sub_basis.at(i, j);
        span.add(v);
        for (int i = 0; i < h.dim; ++i)
            if (sub_basis.at(i, j) != 0) cols[j].push_back({i, sub_basis.at(i, j)});
    }
    {
        std::vector<hopf::Q> u(h.dim);
        for (const auto& [i, c] : h.unit) u[i] = c;
        if (!span.contains(u)) throw ValidationError("restrict_module: unit not in subalgebra");
    }
    for (int i = 0; i < sub_basis.cols; ++i)
        for (int j = 0; j < sub_basis.cols; ++j) {
            hopf::QVec p = h.mul_vec(cols[i], cols[j]);
            std::vector<hopf::Q> v(h.dim);
            for (const auto& [z, c] : p) v[z] = c;
            if (!span.contains(v))
                throw ValidationError("restrict_module: basis not closed under multiplication");
        }
    HModule out;
    out.dim = m.dim;
    out.action.reserve(sub_basis.cols);
    for (int j = 0; j < sub_basis.cols; ++j) out.action.push_back(action_of_qvec(m, cols[j]));
    return out;
}

HModule tensor_modules(const hopf::HopfAlgebra& h, const HModule& a, const HModule& b) {
    a.check_shape(h.dim);
    b.check_shape(h.dim);
    HModule out;
    out.dim = a.dim * b.dim;
    out.action.assign(h.dim, CMatrix(out.dim, out.dim));
    for (int i = 0; i < h.dim; ++i)
        for (const auto& [jk, c] : h.delta[i]) {
            CMatrix term = linalg::kron(a.action[jk / h.dim], b.action[jk % h.dim]);
            double x = c.get_d();
            for (int r = 0; r < out.dim; ++r)
                for (int s = 0; s < out.dim; ++s) out.action[i](r, s) += x * term(r, s);
        }
    return out;
}

std::vector<int> algebra_generators(const hopf::HopfAlgebra& h) {
    const int d = h.dim;
    std::vector<int> gens;
    hopf::QSpan span;
    auto add_closure = [&](hopf::QVec seed) {
        std::vector<hopf::QVec> frontier;
        std::vector<hopf::Q> dense(d);
        for (auto& q : dense) q = 0;
        for (const auto& [i, c] : seed) dense[i] = c;
        if (span.add(dense)) frontier.push_back(seed);
        while (!frontier.empty()) {
            std::vector<hopf::QVec> next;
            // multiply frontier against the whole current span (reduced rows)
            std::vector<hopf::QVec> current;
            for (const auto& row : span.rows()) {
                hopf::QVec v;
                for (int i = 0; i < d; ++i)
                    if (row[i] != 0) v.push_back({i, row[i]});
                current.push_back(std::move(v));
            }
            for (const auto& f : frontier)
                for (const auto& c : current)
                    for (const auto& p : {h.mul_vec(f, c), h.mul_vec(c, f)}) {
                        std::vector<hopf::Q> pv(d);
                        for (const auto& [z, q] : p) pv[z] = q;
                        if (span.add(pv)) {
                            hopf::QVec sp;
                            for (int i = 0; i < d; ++i)
                                if (pv[i] != 0) sp.push_back({i, pv[i]});
                            next.push_back(std::move(sp));
                        }
                    }
            frontier = std::move(next);
        }
    };
    add_closure(h.unit);
    while (span.rank() < d) {
        int pick = -1;
        for (int i = 0; i < d && pick < 0; ++i) {
            std::vector<hopf::Q> e(d);
            e[i] = 1;
            if (!span.contains(e)) pick = i;
        }
        gens.push_back(pick);
        add_closure({{pick, hopf::Q(1)}});
    }
    return gens;
}

std::vector<cplx> character(const HModule& m) {
    std::vector<cplx> chi;
    chi.reserve(m.action.size());
    for (const auto& a : m.action) chi.push_back(linalg::trace(a));
    return chi;
}

namespace {

// intertwiner system rows for f: M -> N with f rho_M(g) = rho_N(g) f
CMatrix intertwiner_system(const std::vector<CMatrix>& am, const std::vector<CMatrix>& an,
                           int dm, int dn) {
    const int unknowns = dn * dm;
    const int rows = int(am.size()) * dn * dm;
    CMatrix sys(rows, unknowns);
    int r = 0;
    for (std::size_t g = 0; g < am.size(); ++g) {
        const CMatrix& a = am[g];
        const CMatrix& b = an[g];
        for (int i = 0; i < dn; ++i)
            for (int j = 0; j < dm; ++j, ++r) {
                // (F A)_{ij} - (B F)_{ij} = sum_q F_{iq} A_{qj} - sum_p B_{ip} F_{pj}
                for (int q = 0; q < dm; ++q) sys(r, i * dm + q) += a(q, j);
                for (int p = 0; p < dn; ++p) sys(r, p * dm + j) -= b(i, p);
            }
    }
    return sys;
}

std::vector<CMatrix> commutant_basis(const std::vector<CMatrix>& gens_action, int dim,
                                     const Tolerance& tol) {
    CMatrix sys = intertwiner_system(gens_action, gens_action, dim, dim);
    auto vecs = linalg::nullspace(sys, tol);
    std::vector<CMatrix> basis;
    for (const auto& v : vecs) {
        CMatrix f(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) f(i, j) = v(i * dim + j, 0);
        basis.push_back(std::move(f));
    }
    return basis;
}

using CharKey = std::vector<std::pair<long long, long long>>;

CharKey char_key(const HModule& m) {
    CharKey key;
    key.reserve(m.action.size());
    for (const auto& a : m.action) {
        cplx t = linalg::trace(a);
        key.push_back({llround(t.real() * 1e6), llround(t.imag() * 1e6)});
    }
    return key;
}

struct Splitter {
    const hopf::HopfAlgebra& h;
    const std::vector<int>& gens;
    const Tolerance& tol;
    std::mt19937_64 rng;
    std::vector<HModule> leaves;

    // commutant from generator intertwiners, or right multiplications when
    // the module is visibly the left regular one
    std::vector<CMatrix> commutant(const HModule& m) {
        if (m.dim == h.dim) {
            HModule reg = regular_module(h);
            bool is_reg = true;
            for (int i = 0; i < h.dim && is_reg; ++i)
                if (!linalg::approx_equal(reg.action[i], m.action[i], 1e-9)) is_reg = false;
            if (is_reg) {
                std::vector<CMatrix> right(h.dim, CMatrix(h.dim, h.dim));
                for (int j = 0; j < h.dim; ++j)
                    for (int i = 0; i < h.dim; ++i)
                        for (const auto& [z, c] : h.m[std::size_t(i) * h.dim + j])
                            right[j](z, i) += to_cplx(c);
                return right;
            }
        }
        std::vector<CMatrix> ga;
        for (int g : gens) ga.push_back(m.action[g]);
        if (ga.empty()) ga.push_back(CMatrix::identity(m.dim));
        return commutant_basis(ga, m.dim, tol);
    }

    void split(const HModule& m) {
        if (m.dim == 0) return;
        std::vector<CMatrix> comm = commutant(m);
        if (comm.size() <= 1) {
            leaves.push_back(m);
            return;
        }
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int attempt = 0; attempt < 32; ++attempt) {
            CMatrix t(m.dim, m.dim);
            for (const auto& c : comm) {
                cplx w(u(rng), u(rng));
                for (int i = 0; i < m.dim; ++i)
                    for (int j = 0; j < m.dim; ++j) t(i, j) += w * c(i, j);
            }
            std::vector<linalg::EigenCluster> clusters;
            try {
                clusters = linalg::gen_eigensplit(t, tol, 0);
            } catch (const UnsplittableError&) {
                continue;
            }
            if (clusters.size() < 2) continue;
            for (const auto& cl : clusters) {
                HModule sub;
                sub.dim = cl.basis.cols();
                sub.action.reserve(m.action.size());
                for (const auto& a : m.action)
                    sub.action.push_back(linalg::restrict_to_subspace(a, cl.basis));
                split(sub);
            }
            return;
        }
        throw NumericalError("decompose_module: unsplittable after 32 reseeds");
    }
};

} // namespace

Decomposition decompose_module(const hopf::HopfAlgebra& h, const HModule& m, std::uint64_t seed,
                               const Tolerance& tol) {
    m.check_shape(h.dim);
    tol.validate();
    std::vector<int> gens = algebra_generators(h);
    Splitter sp{h, gens, tol, std::mt19937_64(seed), {}};
    sp.split(m);

    std::map<CharKey, std::pair<HModule, int>> grouped;
    for (auto& leaf : sp.leaves) {
        CharKey key = char_key(leaf);
        auto it = grouped.find(key);
        if (it == grouped.end())
            grouped.emplace(key, std::make_pair(leaf, 1));
        else
            it->second.second += 1;
    }
    std::vector<std::pair<CharKey, std::pair<HModule, int>>> ordered(grouped.begin(), grouped.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.first.dim != b.second.first.dim) return a.second.first.dim < b.second.first.dim;
        return a.first < b.first;
    });
    Decomposition out;
    int total = 0;
    for (auto& [key, sm] : ordered) {
        (void)key;
        total += sm.first.dim * sm.second;
        out.simples.push_back(std::move(sm.first));
        out.multiplicities.push_back(sm.second);
    }
    if (total != m.dim) throw NumericalError("decompose_module: dimensions do not add up");
    return out;
}

int hom_space(const hopf::HopfAlgebra& h, const HModule& m, const HModule& n,
              const Tolerance& tol) {
    m.check_shape(h.dim);
    n.check_shape(h.dim);
    if (m.dim == 0 || n.dim == 0) return 0;
    std::vector<int> gens = algebra_generators(h);
    std::vector<CMatrix> am, an;
    for (int g : gens) {
        am.push_back(m.action[g]);
        an.push_back(n.action[g]);
    }
    if (am.empty()) return m.dim * n.dim; // algebra spanned by the unit alone
    CMatrix sys = intertwiner_system(am, an, m.dim, n.dim);
    return int(linalg::nullspace(sys, tol).size());
}

namespace {

// solve the k x k Hermitian-positive system (X^H X) m = X^H chi
std::vector<double> expand_in_characters(const std::vector<std::vector<cplx>>& chars,
                                         const std::vector<cplx>& chi) {
    const int k = int(chars.size());
    const int d = int(chi.size());
    std::vector<std::vector<cplx>> g(k, std::vector<cplx>(k));
    std::vector<cplx> rhs(k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            cplx s = 0.0;
            for (int i = 0; i < d; ++i) s += std::conj(chars[a][i]) * chars[b][i];
            g[a][b] = s;
        }
        cplx s = 0.0;
        for (int i = 0; i < d; ++i) s += std::conj(chars[a][i]) * chi[i];
        rhs[a] = s;
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int i = col + 1; i < k; ++i)
            if (std::abs(g[i][col]) > std::abs(g[piv][col])) piv = i;
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        if (std::abs(g[col][col]) < 1e-12)
            throw NumericalError("character expansion: simple characters nearly dependent");
        for (int i = 0; i < k; ++i) {
            if (i == col) continue;
            cplx f = g[i][col] / g[col][col];
            if (f == cplx(0.0)) continue;
            for (int j = col; j < k; ++j) g[i][j] -= f * g[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) {
        cplx v = rhs[i] / g[i][i];
        if (std::abs(v.imag()) > 1e-6)
            throw NumericalError("character expansion: non-real multiplicity");
        out[i] = v.real();
    }
    return out;
}

int gate_to_int(double v, double round_eps, const char* what) {
    double r = std::round(v);
    if (std::abs(v - r) > round_eps)
        throw NumericalError(std::string(what) + ": multiplicity " + std::to_string(v) +
                             " fails the integrality gate");
    return int(r);
}

} // namespace

FusionData fusion_data_of_hopf(const hopf::HopfAlgebra& h, std::uint64_t seed,
                               const Tolerance& tol) {
    Decomposition dec = decompose_module(h, regular_module(h), seed, tol);
    FusionData fd;
    fd.simples = dec.simples;
    const int k = int(fd.simples.size());
    long long dimsq = 0;
    for (const auto& s : fd.simples) dimsq += (long long)s.dim * s.dim;
    if (dimsq != h.dim)
        throw NumericalError("fusion_data_of_hopf: sum of squared simple dims " +
                             std::to_string(dimsq) + " != dim " + std::to_string(h.dim) +
                             " (is the algebra semisimple?)");
    for (const auto& s : fd.simples) fd.characters.push_back(character(s));

    // unit: the simple with the counit character
    int unit = -1;
    for (int i = 0; i < k; ++i) {
        bool match = true;
        for (int b = 0; b < h.dim && match; ++b)
            if (std::abs(fd.characters[i][b] - to_cplx(h.counit[b])) > 1e-6) match = false;
        if (match) unit = i;
    }
    if (unit < 0) throw NumericalError("fusion_data_of_hopf: trivial module not found among simples");

    // structure constants from character expansion of tensor characters
    std::vector<std::array<int, 4>> entries;
    std::vector<std::vector<int>> n_table(std::size_t(k) * k, std::vector<int>(k, 0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            std::vector<cplx> chi(h.dim, 0.0);
            for (int i = 0; i < h.dim; ++i)
                for (const auto& [jk, c] : h.delta[i])
                    chi[i] += c.get_d() * fd.characters[a][jk / h.dim] *
                              fd.characters[b][jk % h.dim];
            std::vector<double> mults = expand_in_characters(fd.characters, chi);
            for (int p = 0; p < k; ++p) {
                int m = gate_to_int(mults[p], tol.round_eps, "fusion_data_of_hopf");
                if (m < 0) throw NumericalError("fusion_data_of_hopf: negative multiplicity");
                n_table[std::size_t(a) * k + b][p] = m;
                if (m > 0) entries.push_back({a, b, p, m});
            }
        }

    // duals: the unique partner with the unit in the product
    std::vector<int> dual(k, -1);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b)
            if (n_table[std::size_t(a) * k + b][unit] == 1) {
                if (dual[a] >= 0)
                    throw Error("fusion_data_of_hopf: duality search found multiple candidates");
                dual[a] = b;
            } else if (n_table[std::size_t(a) * k + b][unit] > 1)
                throw Error("fusion_data_of_hopf: duality search found multiplicity > 1 at unit");
        if (dual[a] < 0) throw Error("fusion_data_of_hopf: duality search found no candidate");
    }

    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("S" + std::to_string(i));
    fd.ring = rings::BasedRing::from_sparse(std::move(labels), unit, std::move(dual), entries);
    ValidationReport rep = rings::verify_based_ring(fd.ring);
    if (!rep.ok)
        throw Error("fusion_data_of_hopf: extracted ring fails validation: " + rep.summary());
    return fd;
}

rings::BasedRing fusion_ring_of_hopf(const hopf::HopfAlgebra& h, std::uint64_t seed,
                                     const Tolerance& tol) {
    return fusion_data_of_hopf(h, seed, tol).ring;
}

std::vector<int> kernel_simples(const hopf::HopfAlgebra& h, const hopf::QMatrix& sub_basis,
                                const FusionData& data, double rel_tol) {
    if (sub_basis.rows != h.dim) throw ValidationError("kernel_simples: basis has wrong row count");
    std::vector<int> out;
    for (int s = 0; s < int(data.simples.size()); ++s) {
        const HModule& m = data.simples[s];
        bool kernel = true;
        for (int j = 0; j < sub_basis.cols && kernel; ++j) {
            hopf::QVec col;
            for (int i = 0; i < h.dim; ++i)
                if (sub_basis.at(i, j) != 0) col.push_back({i, sub_basis.at(i, j)});
            CMatrix a = action_of_qvec(m, col);
            CMatrix target = linalg::scale(CMatrix::identity(m.dim), to_cplx(h.counit_of(col)));
            if (!linalg::approx_equal(a, target, rel_tol * (1.0 + linalg::max_abs(a))))
                kernel = false;
        }
        if (kernel) out.push_back(s);
    }
    return out;
}

AutGradingResult aut_grading(const AutGradingInput& input, const groups::CayleyGroup& g) {
    const int n = g.order();
    const int nsimples = int(input.sigma_blocks.size());
    if (int(input.invertible_blocks.size()) != n)
        throw ValidationError("aut_grading: invertible_blocks must list one simple per group element");
    for (int x : input.invertible_blocks)
        if (x < 0 || x >= nsimples) throw ValidationError("aut_grading: invertible block id out of range");

    std::vector<std::vector<int>> autos(nsimples);
    for (int s = 0; s < nsimples; ++s) {
        const auto& blocks = input.sigma_blocks[s];
        if (int(blocks.size()) != n)
            throw ValidationError("aut_grading: sigma block table has wrong length");
        std::vector<int> inv(n, -1);
        for (int x = 0; x < n; ++x) {
            int y = blocks[x];
            if (y < 0 || y >= n || inv[y] >= 0)
                throw ValidationError("aut_grading: block support of simple " + std::to_string(s) +
                                      " is not a bijection");
            inv[y] = x;
        }
        // the degree is the inverse of the block-support map
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (inv[g.mul(x, y)] != g.mul(inv[x], inv[y]))
                    throw ValidationError("aut_grading: degree of simple " + std::to_string(s) +
                                          " is not a group automorphism");
        autos[s] = inv;
    }

    // permutation group generated by the degrees, product = composition
    // applying the right factor first
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    index[id] = 0;
    elems.push_back(id);
    for (const auto& a : autos)
        if (index.emplace(a, int(elems.size())).second) elems.push_back(a);
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (std::size_t k2 = 0; k2 < elems.size(); ++k2) {
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i) comp[i] = elems[head][elems[k2][i]];
            if (index.emplace(comp, int(elems.size())).second) elems.push_back(comp);
        }
    const int m = int(elems.size());
    std::vector<int> mul(std::size_t(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i) comp[i] = elems[a][elems[b][i]];
            mul[std::size_t(a) * m + b] = index.at(comp);
        }
    std::vector<std::string> names;
    for (int a = 0; a < m; ++a) {
        std::ostringstream os;
        os << "aut[";
        for (int i = 0; i < n; ++i) os << (i ? " " : "") << elems[a][i];
        os << "]";
        names.push_back(os.str());
    }
    groups::CayleyGroup autgrp(m, std::move(mul), 0, std::move(names));

    AutGradingResult res{rings::GradingMap{autgrp, {}}, autos, {}};
    res.grading.deg.reserve(nsimples);
    for (int s = 0; s < nsimples; ++s) res.grading.deg.push_back(index.at(autos[s]));
    for (int s = 0; s < nsimples; ++s)
        if (autos[s] == id) res.neutral_support.push_back(s);

    if (input.ring) {
        const auto& ring = *input.ring;
        if (ring.size() != nsimples)
            throw ValidationError("aut_grading: ring size does not match simple count");
        if (!rings::check_grading(ring, res.grading))
            throw ValidationError("aut_grading: degrees fail check_grading against the ring");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int xa = input.invertible_blocks[a], xb = input.invertible_blocks[b];
                int xab = input.invertible_blocks[g.mul(a, b)];
                if (ring.mult(xa, xb, xab) != 1 || ring.product(xa, xb).size() != 1)
                    throw ValidationError("aut_grading: invertible blocks do not multiply as X_g X_h = X_{gh}");
            }
    }
    return res;
}

AutGradingInput vector_model_input(const groups::CayleyGroup& g) {
    const int n = g.order();
    AutGradingInput in;
    in.invertible_blocks.resize(n);
    for (int i = 0; i < n; ++i) in.invertible_blocks[i] = i;
    in.sigma_blocks.assign(n, std::vector<int>(n));
    for (int h = 0; h < n; ++h)
        for (int x = 0; x < n; ++x) in.sigma_blocks[h][x] = g.mul(g.inv(h), g.mul(x, h));
    in.ring = rings::group_ring(g);
    return in;
}

} // namespace crossext::repth
