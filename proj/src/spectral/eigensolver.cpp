#include "heis/spectral/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/SparseLU>

namespace heis::spectral {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

double hermiticity_deviation(const SparseC& A) {
    SparseC D = A - SparseC(A.adjoint());
    double m = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
        for (SparseC::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

namespace {

VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(nd(rng), nd(rng));
    return v;
}

// Two passes of classical Gram-Schmidt against the first `cols` columns of V
// and against the locked vectors X.
void orthogonalize(VectorXcd& w, const MatrixXcd& V, Eigen::Index cols, const MatrixXcd& X) {
    for (int pass = 0; pass < 2; ++pass) {
        if (X.cols() > 0) w.noalias() -= X * (X.adjoint() * w);
        if (cols > 0) w.noalias() -= V.leftCols(cols) * (V.leftCols(cols).adjoint() * w);
    }
}

struct LanczosOutput {
    VectorXd theta;    // Ritz values of the inverse operator, descending
    MatrixXcd ritz;    // corresponding Ritz vectors
    std::size_t steps = 0;
};

// Lanczos for B = (A - sigma)^{-1} restricted to the complement of X. Stops
// once the `want` largest Ritz values have residual estimates below rtol.
template <class ApplyB>
LanczosOutput lanczos(ApplyB&& applyB, Eigen::Index n, std::size_t want, std::size_t max_basis, const MatrixXcd& X,
                      double rtol, std::mt19937_64& rng) {
    const Eigen::Index K = static_cast<Eigen::Index>(std::min<std::size_t>(max_basis, n - X.cols()));
    MatrixXcd V(n, K);
    std::vector<double> alpha, beta;  // beta[j] couples v_j and v_{j+1}
    VectorXcd v = random_vector(n, rng);
    orthogonalize(v, V, 0, X);
    v.normalize();
    V.col(0) = v;
    LanczosOutput out;
    Eigen::Index j = 0;
    const std::size_t check_every = 10;
    for (; j < K; ++j) {
        VectorXcd w = applyB(V.col(j));
        const double a = (V.col(j).adjoint() * w)(0).real();
        alpha.push_back(a);
        orthogonalize(w, V, j + 1, X);
        double b = w.norm();
        const bool last = (j + 1 == K);
        const bool check = last || (static_cast<std::size_t>(j + 1) >= want && ((j + 1) % check_every == 0));
        if (check) {
            const Eigen::Index m = j + 1;
            MatrixXd T = MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
            const VectorXd& th = es.eigenvalues();
            const std::size_t got = std::min<std::size_t>(want, m);
            bool ok = got == want;
            for (std::size_t r = 0; r < got && ok; ++r) {
                const Eigen::Index c = m - 1 - static_cast<Eigen::Index>(r);
                const double est = std::abs(b * es.eigenvectors()(m - 1, c));
                if (est > rtol * std::abs(th[c])) ok = false;
            }
            if (ok || last) {
                const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(m), std::max(want, got));
                out.theta.resize(keep);
                out.ritz.resize(n, keep);
                for (std::size_t r = 0; r < keep; ++r) {
                    const Eigen::Index c = m - 1 - static_cast<Eigen::Index>(r);
                    out.theta[r] = th[c];
                    out.ritz.col(r) = V.leftCols(m) * es.eigenvectors().col(c);
                }
                out.steps = static_cast<std::size_t>(m);
                return out;
            }
        }
        if (last) break;
        // Invariant subspace: continue with a fresh direction (zero coupling).
        if (b < 1e-12 * std::max(1.0, std::abs(a))) {
            w = random_vector(n, rng);
            orthogonalize(w, V, j + 1, X);
            b = 0.0;
            beta.push_back(0.0);
            V.col(j + 1) = w.normalized();
            continue;
        }
        beta.push_back(b);
        V.col(j + 1) = w / b;
    }
    return out;
}

double residual_norm(const SparseC& A, const VectorXcd& x, double lambda) {
    return (A * x - lambda * x).norm() / x.norm();
}

}  // namespace

EigenResult lowest_eigenpairs(const SparseC& A, std::size_t m, const EigenOptions& opt) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("lowest_eigenpairs: matrix must be square");
    if (m == 0 || static_cast<Eigen::Index>(m) >= n) throw std::invalid_argument("lowest_eigenpairs: need 0 < m < n");
    SparseC S = A;
    if (opt.shift != 0.0) {
        SparseC I(n, n);
        I.setIdentity();
        S = A - cplx(opt.shift) * I;
    }
    S.makeCompressed();
    Eigen::SparseLU<SparseC> lu;
    lu.analyzePattern(S);
    lu.factorize(S);
    if (lu.info() != Eigen::Success) throw std::runtime_error("lowest_eigenpairs: shifted matrix is singular");
    auto applyB = [&lu](const VectorXcd& v) -> VectorXcd { return lu.solve(v); };

    std::mt19937_64 rng(opt.seed);
    const std::size_t basis = opt.max_basis ? opt.max_basis : std::min<std::size_t>(n, 4 * m + 80);
    const double rtol = 1e-13;
    MatrixXcd none(n, 0);
    LanczosOutput lo = lanczos(applyB, n, m, basis, none, rtol, rng);

    EigenResult res;
    res.method = "shift-invert-lanczos";
    res.iterations = lo.steps;
    std::vector<double> lam;
    std::vector<VectorXcd> vec;
    for (Eigen::Index r = 0; r < lo.theta.size(); ++r) {
        lam.push_back(opt.shift + 1.0 / lo.theta[r]);
        vec.push_back(lo.ritz.col(r).normalized());
    }

    // Deflated verification: look for eigenvalues below the current m-th one
    // that the single-vector recursion missed (exact multiplicities).
    for (std::size_t pass = 0; pass < m && lam.size() >= m; ++pass) {
        MatrixXcd X(n, static_cast<Eigen::Index>(vec.size()));
        for (std::size_t i = 0; i < vec.size(); ++i) X.col(static_cast<Eigen::Index>(i)) = vec[i];
        Eigen::HouseholderQR<MatrixXcd> qr(X);
        MatrixXcd Q = qr.householderQ() * MatrixXcd::Identity(n, X.cols());
        LanczosOutput extra = lanczos(applyB, n, 1, std::min<std::size_t>(60, n - X.cols()), Q, rtol, rng);
        if (extra.theta.size() == 0) break;
        const double cand = opt.shift + 1.0 / extra.theta[0];
        const double top = *std::max_element(lam.begin(), lam.end());
        if (!(extra.theta[0] > 0.0) || cand >= top - 1e-10 * std::abs(top)) break;
        lam.push_back(cand);
        vec.push_back(extra.ritz.col(0).normalized());
        ++res.extra_found;
    }

    std::vector<std::size_t> order(lam.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lam[a] < lam[b]; });
    res.converged = lam.size() >= m;
    for (std::size_t r = 0; r < std::min(m, order.size()); ++r) {
        const std::size_t i = order[r];
        const double rq = (vec[i].adjoint() * (A * vec[i]))(0).real();
        res.values.push_back(rq);
        res.vectors.push_back(vec[i]);
        const double rn = residual_norm(A, vec[i], rq);
        res.residuals.push_back(rn);
        if (!(rn <= opt.tol)) res.converged = false;
    }
    return res;
}

EigenResult dense_lowest_eigenpairs(const SparseC& A, std::size_t m) {
    const Eigen::Index n = A.rows();
    if (static_cast<Eigen::Index>(m) > n) throw std::invalid_argument("dense_lowest_eigenpairs: m exceeds dimension");
    MatrixXcd D = MatrixXcd(A);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(D);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    EigenResult res;
    res.method = "dense";
    res.converged = true;
    for (std::size_t r = 0; r < m; ++r) {
        const Eigen::Index c = static_cast<Eigen::Index>(r);
        res.values.push_back(es.eigenvalues()[c]);
        res.vectors.push_back(es.eigenvectors().col(c));
        res.residuals.push_back(residual_norm(A, es.eigenvectors().col(c), es.eigenvalues()[c]));
    }
    return res;
}

}  // namespace heis::spectral
