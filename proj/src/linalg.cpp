#include "crossext/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace crossext::linalg {

void Tolerance::validate() const {
    if (!(pivot_eps > 0) || !(round_eps > 0) || !(cluster_eps > 0))
        throw ValidationError("tolerances must be strictly positive");
    if (round_eps < pivot_eps)
        throw ValidationError("round_eps must be >= pivot_eps");
}

CMatrix::CMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != std::size_t(rows) * cols)
        throw ValidationError("CMatrix: entry count does not match shape");
    check_finite();
}

void CMatrix::check_finite() const {
    for (const cplx& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("matmul: shape mismatch");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("add: shape mismatch");
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("sub: shape mismatch");
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

CMatrix scale(const CMatrix& a, cplx s) {
    CMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

cplx trace(const CMatrix& a) {
    cplx t = 0.0;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cplx& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double inf_norm(const CMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double r = 0.0;
        for (int j = 0; j < a.cols(); ++j) r += std::abs(a(i, j));
        m = std::max(m, r);
    }
    return m;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs(sub(a, b)) <= tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

namespace {

struct Elimination {
    CMatrix a;                 // echelon form
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
};

// Forward elimination with scaled partial pivoting. Pivot acceptance is
// relative to the matrix magnitude; the accepted/rejected gap is gated so a
// borderline rank decision surfaces as an error instead of a wrong answer.
Elimination eliminate(CMatrix a, const Tolerance& tol) {
    tol.validate();
    a.check_finite();
    const int r = a.rows(), c = a.cols();
    const double norm = max_abs(a);
    // rows whose magnitude sits below the pivot threshold are numerically
    // zero; flooring the scale keeps them from winning the scaled pivot race
    const double scale_floor = norm > 0 ? tol.pivot_eps * norm : 1.0;
    std::vector<double> row_scale(r, 1.0);
    for (int i = 0; i < r; ++i) {
        double s = 0.0;
        for (int j = 0; j < c; ++j) s = std::max(s, std::abs(a(i, j)));
        row_scale[i] = std::max(s, scale_floor);
    }

    Elimination e;
    double accepted_min = -1.0, rejected_max = -1.0;
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int piv = -1;
        double best = -1.0;
        for (int i = row; i < r; ++i) {
            double v = std::abs(a(i, col)) / row_scale[i];
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        double mag = std::abs(a(piv, col));
        double rel = norm > 0 ? mag / norm : 0.0;
        if (norm == 0.0 || rel <= tol.pivot_eps) {
            if (rel > rejected_max) rejected_max = rel;
            e.free_cols.push_back(col);
            continue;
        }
        if (accepted_min < 0 || rel < accepted_min) accepted_min = rel;
        if (piv != row)
            for (int j = 0; j < c; ++j) std::swap(a(row, j), a(piv, j));
        std::swap(row_scale[row], row_scale[piv]);
        cplx p = a(row, col);
        for (int i = row + 1; i < r; ++i) {
            cplx f = a(i, col) / p;
            if (f == cplx(0.0)) continue;
            a(i, col) = 0.0;
            for (int j = col + 1; j < c; ++j) a(i, j) -= f * a(row, j);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    for (int col = int(e.pivot_cols.size() + e.free_cols.size()); col < c; ++col)
        e.free_cols.push_back(col);

    if (accepted_min >= 0 && rejected_max >= 0 &&
        accepted_min - rejected_max < 10.0 * tol.pivot_eps) {
        std::ostringstream os;
        os << "degenerate rank: accepted pivot " << accepted_min << " vs rejected "
           << rejected_max << " (pivot_eps=" << tol.pivot_eps << ")";
        throw NumericalError(os.str());
    }
    e.a = std::move(a);
    return e;
}

} // namespace

std::vector<CMatrix> nullspace(const CMatrix& m, const Tolerance& tol) {
    Elimination e = eliminate(m, tol);
    const int c = m.cols();
    const int nr = int(e.pivot_cols.size());
    std::vector<CMatrix> basis;
    for (int f : e.free_cols) {
        CMatrix v(c, 1);
        v(f, 0) = 1.0;
        // back substitution over pivot rows above the free column
        for (int k = nr - 1; k >= 0; --k) {
            int pc = e.pivot_cols[k];
            if (pc > f) continue;
            cplx s = 0.0;
            for (int j = pc + 1; j < c; ++j) s += e.a(k, j) * v(j, 0);
            v(pc, 0) = -s / e.a(k, pc);
        }
        double n = 0.0;
        for (int i = 0; i < c; ++i) n += std::norm(v(i, 0));
        n = std::sqrt(n);
        for (int i = 0; i < c; ++i) v(i, 0) /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

CMatrix nullspace_matrix(const CMatrix& m, const Tolerance& tol) {
    auto cols = nullspace(m, tol);
    CMatrix k(m.cols(), int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < m.cols(); ++i) k(i, j) = cols[j](i, 0);
    return k;
}

int numerical_rank(const CMatrix& m, const Tolerance& tol) {
    return int(eliminate(m, tol).pivot_cols.size());
}

CMatrix orthonormalize(const CMatrix& cols, const Tolerance& tol) {
    CMatrix q = cols;
    for (int j = 0; j < q.cols(); ++j) {
        for (int rep = 0; rep < 2; ++rep)
            for (int k = 0; k < j; ++k) {
                cplx d = 0.0;
                for (int i = 0; i < q.rows(); ++i) d += std::conj(q(i, k)) * q(i, j);
                for (int i = 0; i < q.rows(); ++i) q(i, j) -= d * q(i, k);
            }
        double n = 0.0;
        for (int i = 0; i < q.rows(); ++i) n += std::norm(q(i, j));
        n = std::sqrt(n);
        if (n <= tol.pivot_eps * (1.0 + max_abs(cols)))
            throw NumericalError("orthonormalize: numerically dependent column");
        for (int i = 0; i < q.rows(); ++i) q(i, j) /= n;
    }
    return q;
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("eigenvalues: matrix not square");
    const int n = m.rows();
    if (n == 0) return {};
    Eigen::MatrixXcd em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = m(i, j);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(em, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NumericalError("eigenvalues: Schur decomposition failed");
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = schur.matrixT()(i, i);
    return out;
}

CMatrix generalized_kernel(const CMatrix& m, cplx lambda, int dim, const Tolerance& tol) {
    const int n = m.rows();
    CMatrix b = m;
    for (int i = 0; i < n; ++i) b(i, i) -= lambda;
    CMatrix k(n, 0);
    for (int iter = 0; iter <= n; ++iter) {
        CMatrix c = b;
        if (k.cols() > 0) {
            // project rows of b onto the orthogonal complement of the current kernel:
            // solves {x : b x in span(k)}
            CMatrix proj = matmul(k, matmul(adjoint(k), b));
            c = sub(b, proj);
        }
        CMatrix next = nullspace_matrix(c, tol);
        if (next.cols() == dim) return orthonormalize(next, tol);
        if (next.cols() > dim)
            throw NumericalError("generalized_kernel: kernel exceeds algebraic multiplicity");
        if (next.cols() <= k.cols())
            throw NumericalError("generalized_kernel: kernel chain stalled");
        k = orthonormalize(next, tol);
    }
    throw NumericalError("generalized_kernel: chain did not terminate");
}

std::vector<EigenCluster> gen_eigensplit(const CMatrix& m, const Tolerance& tol,
                                         std::uint64_t /*seed*/) {
    tol.validate();
    if (m.rows() != m.cols()) throw ValidationError("gen_eigensplit: matrix not square");
    const int n = m.rows();
    if (n == 0) return {};
    std::vector<cplx> eig = eigenvalues(m);

    // transitive clustering at cluster_eps
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(eig[i] - eig[j]) <= tol.cluster_eps) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    std::vector<int> root_of(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_of[r] < 0) {
            root_of[r] = int(groups.size());
            groups.emplace_back();
        }
        groups[root_of[r]].push_back(i);
    }

    // clusters must be cleanly separated, not merely not-merged
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b)
            for (int i : groups[a])
                for (int j : groups[b])
                    if (std::abs(eig[i] - eig[j]) <= 2.0 * tol.cluster_eps)
                        throw UnsplittableError("gen_eigensplit: clusters not separable");

    struct Raw {
        cplx mean;
        int mult;
    };
    std::vector<Raw> raw;
    for (auto& g : groups) {
        cplx mean = 0.0;
        for (int i : g) mean += eig[i];
        mean /= double(g.size());
        raw.push_back({mean, int(g.size())});
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
        if (x.mean.real() != y.mean.real()) return x.mean.real() < y.mean.real();
        return x.mean.imag() < y.mean.imag();
    });

    std::vector<EigenCluster> out;
    int total = 0;
    for (const Raw& r : raw) {
        out.push_back({r.mean, generalized_kernel(m, r.mean, r.mult, tol)});
        total += r.mult;
    }
    if (total != n) throw NumericalError("gen_eigensplit: multiplicities do not sum to dimension");
    return out;
}

CMatrix restrict_to_subspace(const CMatrix& a, const CMatrix& q) {
    return matmul(adjoint(q), matmul(a, q));
}

} // namespace crossext::linalg
