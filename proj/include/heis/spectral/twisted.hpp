#pragma once

#include <string>
#include <vector>

#include "heis/spectral/eigensolver.hpp"

namespace heis::spectral {

struct TwistedOperator {
    SparseC matrix;
    BoxGrid grid;
    double tau = 1.0;
    int angular_sign = 1;
    double hermiticity = 0.0;
    std::vector<std::string> warnings;
};

// Finite-difference matrix of twisted_laplacian (Dirichlet), replaced by its
// Hermitian part.
TwistedOperator assemble_twisted(double tau, const BoxGrid& grid, int angular_sign = +1);

Eigen::VectorXcd to_vector(const ScalarField& f);
ScalarField to_field(const BoxGrid& g, const Eigen::VectorXcd& v);

// <|z|^2> of a grid vector.
double second_moment(const BoxGrid& g, const Eigen::VectorXcd& v);

}  // namespace heis::spectral
