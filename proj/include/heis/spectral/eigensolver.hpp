#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "heis/grid.hpp"

namespace heis::spectral {

using SparseC = Eigen::SparseMatrix<cplx>;

struct EigenOptions {
    double shift = 0.0;          // sigma in (A - sigma)^{-1}; must lie below the wanted eigenvalues
    std::size_t max_basis = 0;   // 0 selects min(n, 4m + 80)
    double tol = 1e-8;           // required ||Av - lambda v|| / ||v||
    std::uint64_t seed = 20240607;
};

struct EigenResult {
    std::vector<double> values;  // ascending
    std::vector<Eigen::VectorXcd> vectors;
    std::vector<double> residuals;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t extra_found = 0;  // eigenvalues recovered by the deflated verification pass
    std::string method;
};

// Shift-invert Lanczos with full reorthogonalization for Hermitian A.
EigenResult lowest_eigenpairs(const SparseC& A, std::size_t m, const EigenOptions& opt = {});
// Dense Hermitian solve of the whole matrix; oracle for small problems.
EigenResult dense_lowest_eigenpairs(const SparseC& A, std::size_t m);

double hermiticity_deviation(const SparseC& A);

}  // namespace heis::spectral
