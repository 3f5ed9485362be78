#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "heis/hermite.hpp"

namespace heis::spectral {

// How e_{j,k,tau} is compared with the printed twisted Laplacian.
struct Convention {
    double s = 2.0;  // argument scaling: e(s q, s p)
    int angular_sign = 1;
    WignerShift shift = WignerShift::Symmetric;
};

struct ResidualResult {
    double relative = 0.0;     // ||L e - mu e|| / (mu ||e||), mu = kappa0 (2k+1)|tau|
    double printed_scale = 0.0;  // same numerator over (2k+1)|tau| ||e||
    double e_norm = 0.0;       // discrete l2 norm of the tabulated e
};

class DegenerateField : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConventionFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Equal-spaced Wigner quadrature used for tabulations on grid g.
WignerSpec residual_wigner_spec(unsigned j, unsigned k, double tau, WignerShift shift);

ResidualResult eigenfunction_residual(unsigned j, unsigned k, double tau, const BoxGrid& g, const Convention& c,
                                      double kappa0);
// Variant on an already tabulated field.
ResidualResult eigenfunction_residual(const ScalarField& e, unsigned k, double tau, int angular_sign, double kappa0);

struct CandidateResidual {
    Convention convention;
    double residual = 0.0;
};

struct SearchResult {
    Convention best;
    double residual = 0.0;
    bool sign_tie = false;  // both angular signs within 1e-9 relative (rotationally symmetric e)
    std::vector<CandidateResidual> table;
};

struct SearchOptions {
    std::vector<double> scales{0.5, 1.0, 2.0};
    std::vector<int> signs{1, -1};
    std::vector<WignerShift> shifts{WignerShift::Printed, WignerShift::Symmetric};
    double kappa0 = 4.0;
};

SearchResult convention_search(unsigned j, unsigned k, double tau, const BoxGrid& g, const SearchOptions& opt);

struct GramQuadrature {
    double box_half = 0.0;  // 0: 12/sqrt|tau|
    double spacing = 0.0;   // 0: 0.2/sqrt|tau|
    std::size_t wigner_nodes = 513;
};

struct GramResult {
    Eigen::MatrixXcd G;
    double max_deviation = 0.0;
    double max_tail = 0.0;
    std::vector<std::pair<unsigned, unsigned>> labels;  // (j, k) per row
};

// Inner products of e_{j,k,tau}, 0 <= j <= J, 0 <= k <= K.
GramResult gram_matrix(unsigned J, unsigned K, double tau, WignerShift shift = WignerShift::Symmetric,
                       const GramQuadrature& q = {});

}  // namespace heis::spectral
