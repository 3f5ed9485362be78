#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "heis/spectral/eigensolver.hpp"

namespace heis::spectral {

struct Cluster {
    double center = 0.0;
    double lo = 0.0, hi = 0.0;
    std::size_t size = 0;
    std::vector<std::size_t> members;  // indices into the input list
};

// Sorted values; a relative gap above `rel_gap` starts a new cluster.
std::vector<Cluster> cluster_by_gap(const std::vector<double>& sorted, double rel_gap = 0.10);

class StructureMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LandauFit {
    std::vector<Cluster> clusters;   // the fitted levels
    double kappa0 = 0.0;             // least squares
    double max_rel_deviation = 0.0;  // against kappa0 (2k+1)|tau|
    double spacing_deviation = 0.0;  // max |gap/mean gap - 1|
    std::optional<double> kappa0_adjudicated;  // candidate in {1, 4} within 2%
};

// Fits the lowest `levels` clusters to kappa0 (2k+1)|tau|. Throws
// StructureMismatch when fewer than 3 clusters exist or the gaps differ by
// more than 5%.
LandauFit landau_structure_fit(const std::vector<double>& eigs, double tau, std::size_t levels = 3);

// Indices of eigenvectors whose <|z|^2> is within `factor` of the smallest.
std::vector<std::size_t> localized_indices(const EigenResult& er, const BoxGrid& g, double factor = 4.5);

}  // namespace heis::spectral
