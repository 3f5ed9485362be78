#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "heis/fields.hpp"
#include "heis/variational/problem.hpp"

namespace heis::variational {

// Discrete J_lambda on the problem grid. The horizontal gradient uses the
// forward and backward one-sided stencils, |D_H u|^p := (|D+ u|^p + |D- u|^p)/2,
// and the A_p term is assembled with their exact transposes. Quadrature uses
// trapezoid product weights; boundary nodes are held at zero.
class Discretization {
public:
    explicit Discretization(const KirchhoffProblem& prob, FieldConvention conv = FieldConvention::hn());

    const KirchhoffProblem& problem() const { return prob_; }
    const BoxGrid& grid() const { return prob_.grid; }
    std::size_t size() const { return prob_.grid.size(); }
    const std::vector<double>& weights() const { return w_; }
    bool interior(std::size_t i) const { return interior_[i] != 0; }

    struct Terms {
        double grad_p = 0.0;       // ||D_H u||_p^p
        double potential_p = 0.0;  // ||u||_{p,V}^p
        double F_integral = 0.0;   // int F(xi, u)
        double critical = 0.0;     // int |u|^{p*}
        double S() const { return grad_p + potential_p; }
    };

    Terms terms(const std::vector<double>& u) const;
    double energy(const std::vector<double>& u) const;
    double energy(const Terms& t) const;
    // Euclidean gradient dJ/du_i (boundary entries zero).
    std::vector<double> euclidean_gradient(const std::vector<double>& u) const;
    // L^2 gradient g with sum_i w_i g_i v_i = dJ(u) v.
    std::vector<double> l2_gradient(const std::vector<double>& u) const;
    // Discrete HW^{1,p}_V norm S(u)^{1/p}.
    double norm(const std::vector<double>& u) const;

    // Gradient of ||D_H u||_p^p alone (Euclidean).
    std::vector<double> grad_p_gradient(const std::vector<double>& u) const;
    double grad_p_term(const std::vector<double>& u) const;

    // H = sum_d 1/2 G_d^T W G_d + W V on interior nodes (p = 2 form).
    std::vector<double> apply_H(const std::vector<double>& x) const;
    // Solves H r = g with a cached sparse Cholesky factorization of H (built on first use).
    std::vector<double> riesz(const std::vector<double>& g) const;
    // Same system by Jacobi-preconditioned CG.
    std::vector<double> riesz_cg(const std::vector<double>& g, double rtol = 1e-10, std::size_t max_iter = 5000) const;
    // H restricted to interior nodes, in interior numbering.
    Eigen::SparseMatrix<double> assemble_H() const;

    // One-sided component G^d_c u (d = +1 forward, -1 backward), c in [0, 2n).
    void apply_G(int d, std::size_t c, const std::vector<double>& u, std::vector<double>& out) const;
    // out += G^d_c^T y.
    void apply_Gt_add(int d, std::size_t c, const std::vector<double>& y, std::vector<double>& out) const;

    // Throws if u is nonzero on the boundary or has the wrong length.
    void check_support(const std::vector<double>& u) const;

private:
    KirchhoffProblem prob_;
    FieldConvention conv_;
    std::size_t n_, ta_;
    std::vector<double> w_, a_, V_;
    std::vector<double> coef_;  // per component c: vertical coefficient at each node
    std::vector<char> interior_;
    std::vector<double> Hdiag_;
    struct Factor;
    mutable std::shared_ptr<Factor> factor_;
    std::vector<std::size_t> interior_list_;
};

// Zeroes boundary nodes.
void zero_boundary(const BoxGrid& g, std::vector<double>& u);

}  // namespace heis::variational
