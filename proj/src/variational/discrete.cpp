#include "heis/variational/discrete.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace heis::variational {

void zero_boundary(const BoxGrid& g, std::vector<double>& u) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.on_boundary(i)) u[i] = 0.0;
}

Discretization::Discretization(const KirchhoffProblem& prob, FieldConvention conv) : prob_(prob), conv_(conv) {
    const BoxGrid& g = prob_.grid;
    n_ = heisenberg_n(g);
    if (n_ != prob_.n) throw std::invalid_argument("problem grid dimension does not match n");
    ta_ = g.dim() - 1;
    const std::size_t N = g.size();
    w_.assign(N, 1.0);
    interior_.assign(N, 1);
    a_.resize(N);
    V_.resize(N);
    coef_.assign(2 * n_ * N, 0.0);
    HeisPoint xi = HeisPoint::zero(n_);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t ax = 0; ax < g.dim(); ++ax) {
            const std::size_t k = g.index_along(i, ax);
            const double h = g.spacing(ax);
            w_[i] *= (k == 0 || k + 1 == g.count(ax)) ? 0.5 * h : h;
        }
        interior_[i] = g.on_boundary(i) ? 0 : 1;
        if (interior_[i]) interior_list_.push_back(i);
        for (std::size_t j = 0; j < n_; ++j) {
            xi.x[j] = g.coord(i, j);
            xi.y[j] = g.coord(i, n_ + j);
        }
        xi.t = g.coord(i, ta_);
        a_[i] = prob_.nonlinearity.a(xi);
        V_[i] = prob_.V(xi);
        if (V_[i] < prob_.V.V0) throw std::invalid_argument("potential drops below V0");
        for (std::size_t j = 0; j < n_; ++j) {
            coef_[j * N + i] = conv_.twist() * xi.y[j];
            coef_[(n_ + j) * N + i] = -conv_.twist() * xi.x[j];
        }
    }
    // Diagonal of H for Jacobi preconditioning.
    Hdiag_.assign(N, 0.0);
    std::vector<double> e(N, 0.0), col(N);
    for (int d : {1, -1})
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            const std::size_t ax = c;  // x_1..x_n then y_1..y_n: component c differentiates axis c
            const double ih = 1.0 / g.spacing(ax), iht = 1.0 / g.spacing(ta_);
            for (std::size_t r = 0; r < N; ++r) {
                const double k = coef_[c * N + r];
                const double wr = 0.5 * w_[r];
                // Entry at the node itself.
                const double self = d > 0 ? (-ih - k * iht) : (ih + k * iht);
                Hdiag_[r] += wr * self * self;
                const std::size_t ia = g.index_along(r, ax), it = g.index_along(r, ta_);
                if (d > 0) {
                    if (ia + 1 < g.count(ax)) Hdiag_[r + g.stride(ax)] += wr * ih * ih;
                    if (it + 1 < g.count(ta_)) Hdiag_[r + g.stride(ta_)] += wr * k * k * iht * iht;
                } else {
                    if (ia > 0) Hdiag_[r - g.stride(ax)] += wr * ih * ih;
                    if (it > 0) Hdiag_[r - g.stride(ta_)] += wr * k * k * iht * iht;
                }
            }
        }
    for (std::size_t i = 0; i < N; ++i) Hdiag_[i] += w_[i] * V_[i];
}

void Discretization::check_support(const std::vector<double>& u) const {
    if (u.size() != size()) throw std::invalid_argument("field length does not match the problem grid");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!interior_[i] && u[i] != 0.0)
            throw std::invalid_argument("field must vanish on the boundary (Dirichlet truncation)");
}

void Discretization::apply_G(int d, std::size_t c, const std::vector<double>& u, std::vector<double>& out) const {
    const BoxGrid& g = prob_.grid;
    const std::size_t N = g.size();
    const std::size_t ax = c;
    const std::size_t sa = g.stride(ax), st = g.stride(ta_);
    const std::size_t na = g.count(ax), nt = g.count(ta_);
    const double ih = 1.0 / g.spacing(ax), iht = 1.0 / g.spacing(ta_);
    const double* k = &coef_[c * N];
    out.resize(N);
    for (std::size_t r = 0; r < N; ++r) {
        const std::size_t ia = (r / sa) % na, it = (r / st) % nt;
        const double ur = u[r];
        if (d > 0) {
            const double ua = ia + 1 < na ? u[r + sa] : 0.0;
            const double ut = it + 1 < nt ? u[r + st] : 0.0;
            out[r] = (ua - ur) * ih + k[r] * ((ut - ur) * iht);
        } else {
            const double ua = ia > 0 ? u[r - sa] : 0.0;
            const double ut = it > 0 ? u[r - st] : 0.0;
            out[r] = (ur - ua) * ih + k[r] * ((ur - ut) * iht);
        }
    }
}

void Discretization::apply_Gt_add(int d, std::size_t c, const std::vector<double>& y, std::vector<double>& out) const {
    const BoxGrid& g = prob_.grid;
    const std::size_t N = g.size();
    const std::size_t ax = c;
    const std::size_t sa = g.stride(ax), st = g.stride(ta_);
    const std::size_t na = g.count(ax), nt = g.count(ta_);
    const double ih = 1.0 / g.spacing(ax), iht = 1.0 / g.spacing(ta_);
    const double* k = &coef_[c * N];
    for (std::size_t r = 0; r < N; ++r) {
        const std::size_t ia = (r / sa) % na, it = (r / st) % nt;
        const double yr = y[r];
        if (d > 0) {
            out[r] -= yr * ih + k[r] * yr * iht;
            if (ia + 1 < na) out[r + sa] += yr * ih;
            if (it + 1 < nt) out[r + st] += k[r] * yr * iht;
        } else {
            out[r] += yr * ih + k[r] * yr * iht;
            if (ia > 0) out[r - sa] -= yr * ih;
            if (it > 0) out[r - st] -= k[r] * yr * iht;
        }
    }
}

double Discretization::grad_p_term(const std::vector<double>& u) const {
    const std::size_t N = size();
    const double p = prob_.p;
    std::vector<double> mag2(N), comp;
    double total = 0.0;
    for (int d : {1, -1}) {
        std::fill(mag2.begin(), mag2.end(), 0.0);
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            apply_G(d, c, u, comp);
            for (std::size_t r = 0; r < N; ++r) mag2[r] += comp[r] * comp[r];
        }
        double s = 0.0;
        if (p == 2.0) {
            for (std::size_t r = 0; r < N; ++r) s += w_[r] * mag2[r];
        } else {
            for (std::size_t r = 0; r < N; ++r) s += w_[r] * std::pow(mag2[r], 0.5 * p);
        }
        total += 0.5 * s;
    }
    return total;
}

std::vector<double> Discretization::grad_p_gradient(const std::vector<double>& u) const {
    const std::size_t N = size();
    const double p = prob_.p;
    std::vector<double> out(N, 0.0), mag2(N), scale(N), y(N);
    std::vector<std::vector<double>> comps(2 * n_);
    for (int d : {1, -1}) {
        std::fill(mag2.begin(), mag2.end(), 0.0);
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            apply_G(d, c, u, comps[c]);
            for (std::size_t r = 0; r < N; ++r) mag2[r] += comps[c][r] * comps[c][r];
        }
        // d/du of 1/2 sum w |G u|^p = 1/2 p G^T (w |G u|^(p-2) G u)
        for (std::size_t r = 0; r < N; ++r) {
            double wr = 0.5 * p * w_[r];
            if (p != 2.0) wr *= mag2[r] > 0.0 ? std::pow(mag2[r], 0.5 * (p - 2.0)) : 0.0;
            scale[r] = wr;
        }
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            for (std::size_t r = 0; r < N; ++r) y[r] = scale[r] * comps[c][r];
            apply_Gt_add(d, c, y, out);
        }
    }
    return out;
}

Discretization::Terms Discretization::terms(const std::vector<double>& u) const {
    check_support(u);
    Terms t;
    t.grad_p = grad_p_term(u);
    const double p = prob_.p, ps = prob_.p_star();
    const auto& nl = prob_.nonlinearity;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double au = std::abs(u[i]);
        t.potential_p += w_[i] * V_[i] * (p == 2.0 ? au * au : std::pow(au, p));
        t.F_integral += w_[i] * nl.F(a_[i], u[i]);
        t.critical += w_[i] * std::pow(au, ps);
    }
    return t;
}

double Discretization::energy(const Terms& t) const {
    return prob_.M.primitive(t.S()) / prob_.p - prob_.lambda * t.F_integral - t.critical / prob_.p_star();
}

double Discretization::energy(const std::vector<double>& u) const { return energy(terms(u)); }

std::vector<double> Discretization::euclidean_gradient(const std::vector<double>& u) const {
    const Terms t = terms(u);
    const double MS = prob_.M.M(t.S());
    const double p = prob_.p, ps = prob_.p_star();
    const auto& nl = prob_.nonlinearity;
    std::vector<double> g = grad_p_gradient(u);
    const double lam = prob_.lambda;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!interior_[i]) {
            g[i] = 0.0;
            continue;
        }
        const double ui = u[i], au = std::abs(ui);
        const double pot = p * w_[i] * V_[i] * (p == 2.0 ? ui : std::pow(au, p - 2.0) * ui);
        // (1/p) M(S) dS/du - lambda w f(u) - w |u|^(p*-2) u
        g[i] = MS * (g[i] + pot) / p - lam * (w_[i] * nl.f(a_[i], ui)) - w_[i] * (std::pow(au, ps - 2.0) * ui);
    }
    return g;
}

std::vector<double> Discretization::l2_gradient(const std::vector<double>& u) const {
    std::vector<double> g = euclidean_gradient(u);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = interior_[i] ? g[i] / w_[i] : 0.0;
    return g;
}

double Discretization::norm(const std::vector<double>& u) const {
    const Terms t = terms(u);
    return std::pow(t.S(), 1.0 / prob_.p);
}

std::vector<double> Discretization::apply_H(const std::vector<double>& x) const {
    const std::size_t N = size();
    std::vector<double> out(N, 0.0), comp, y(N);
    for (int d : {1, -1})
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            apply_G(d, c, x, comp);
            for (std::size_t r = 0; r < N; ++r) y[r] = 0.5 * w_[r] * comp[r];
            apply_Gt_add(d, c, y, out);
        }
    for (std::size_t i = 0; i < N; ++i) out[i] = interior_[i] ? out[i] + w_[i] * V_[i] * x[i] : 0.0;
    return out;
}

struct Discretization::Factor {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

Eigen::SparseMatrix<double> Discretization::assemble_H() const {
    const std::size_t N = size();
    std::vector<long> pos(N, -1);
    for (std::size_t k = 0; k < interior_list_.size(); ++k) pos[interior_list_[k]] = static_cast<long>(k);
    std::vector<Eigen::Triplet<double>> trip;
    // Column j of H is apply_H(e_j); each G row touches at most three nodes, so assemble row by row.
    const BoxGrid& g = prob_.grid;
    for (int d : {1, -1})
        for (std::size_t c = 0; c < 2 * n_; ++c) {
            const std::size_t ax = c;
            const double ih = 1.0 / g.spacing(ax), iht = 1.0 / g.spacing(ta_);
            for (std::size_t r = 0; r < N; ++r) {
                const double k = coef_[c * N + r];
                long idx[3] = {static_cast<long>(r), -1, -1};
                double val[3];
                const std::size_t ia = g.index_along(r, ax), it = g.index_along(r, ta_);
                if (d > 0) {
                    val[0] = -ih - k * iht;
                    if (ia + 1 < g.count(ax)) idx[1] = static_cast<long>(r + g.stride(ax));
                    val[1] = ih;
                    if (it + 1 < g.count(ta_)) idx[2] = static_cast<long>(r + g.stride(ta_));
                    val[2] = k * iht;
                } else {
                    val[0] = ih + k * iht;
                    if (ia > 0) idx[1] = static_cast<long>(r - g.stride(ax));
                    val[1] = -ih;
                    if (it > 0) idx[2] = static_cast<long>(r - g.stride(ta_));
                    val[2] = -k * iht;
                }
                const double wr = 0.5 * w_[r];
                for (int a = 0; a < 3; ++a) {
                    if (idx[a] < 0 || pos[idx[a]] < 0) continue;
                    for (int b = 0; b < 3; ++b) {
                        if (idx[b] < 0 || pos[idx[b]] < 0) continue;
                        trip.emplace_back(pos[idx[a]], pos[idx[b]], wr * val[a] * val[b]);
                    }
                }
            }
        }
    for (std::size_t k = 0; k < interior_list_.size(); ++k) {
        const std::size_t i = interior_list_[k];
        trip.emplace_back(static_cast<long>(k), static_cast<long>(k), w_[i] * V_[i]);
    }
    const auto M = static_cast<Eigen::Index>(interior_list_.size());
    Eigen::SparseMatrix<double> H(M, M);
    H.setFromTriplets(trip.begin(), trip.end());
    return H;
}

std::vector<double> Discretization::riesz(const std::vector<double>& g) const {
    if (!factor_) {
        auto f = std::make_shared<Factor>();
        f->ldlt.compute(assemble_H());
        if (f->ldlt.info() != Eigen::Success) throw std::runtime_error("Sobolev Gram matrix factorization failed");
        factor_ = f;
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(interior_list_.size()));
    for (std::size_t k = 0; k < interior_list_.size(); ++k) b[static_cast<Eigen::Index>(k)] = g[interior_list_[k]];
    const Eigen::VectorXd x = factor_->ldlt.solve(b);
    std::vector<double> out(size(), 0.0);
    for (std::size_t k = 0; k < interior_list_.size(); ++k) out[interior_list_[k]] = x[static_cast<Eigen::Index>(k)];
    return out;
}

std::vector<double> Discretization::riesz_cg(const std::vector<double>& g, double rtol, std::size_t max_iter) const {
    const std::size_t N = size();
    std::vector<double> x(N, 0.0), r(N), z(N), p(N);
    double bnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        r[i] = interior_[i] ? g[i] : 0.0;
        bnorm += r[i] * r[i];
    }
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) return x;
    double rz = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        z[i] = interior_[i] ? r[i] / Hdiag_[i] : 0.0;
        p[i] = z[i];
        rz += r[i] * z[i];
    }
    for (std::size_t it = 0; it < max_iter; ++it) {
        const std::vector<double> Hp = apply_H(p);
        double pHp = 0.0;
        for (std::size_t i = 0; i < N; ++i) pHp += p[i] * Hp[i];
        const double alpha = rz / pHp;
        double rn = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Hp[i];
            rn += r[i] * r[i];
        }
        if (std::sqrt(rn) <= rtol * bnorm) break;
        double rz_new = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            z[i] = interior_[i] ? r[i] / Hdiag_[i] : 0.0;
            rz_new += r[i] * z[i];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < N; ++i) p[i] = z[i] + beta * p[i];
    }
    return x;
}

}  // namespace heis::variational
