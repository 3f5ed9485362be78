#pragma once

#include <vector>

#include "heis/fields.hpp"
#include "heis/spectral/eigensolver.hpp"
#include "heis/spectral/landau.hpp"

namespace heis::spectral {

// Discrete eigenvectors of the tau = 1 twisted operator on a reference grid,
// grouped into Landau levels. Probes at other tau0 use the Heisenberg dilation
// of these (the finite-difference operator is dilation covariant).
struct ReferenceModes {
    BoxGrid grid;
    int angular_sign = 1;
    EigenResult eig;
    std::vector<Cluster> levels;                 // localized clusters, member indices point into eig
    std::vector<std::size_t> representative;     // most localized member per level
};

ReferenceModes reference_modes(const BoxGrid& grid2d, std::size_t n_eig, int angular_sign = 1,
                               const EigenOptions& opt = {});

struct WeylOptions {
    Variant variant = Variant::H3;
    double kappa0 = 4.0;
    bool limit_mode = false;      // lambda = 0: tau0_m = tau_start (m_start / m)^2
    double tau_start = 0.25;
    double tau0_override = 0.0;   // nonzero: keep this tau0 (off-ladder controls)
};

struct WeylProbeResult {
    double lambda = 0.0;
    unsigned k = 0;
    std::vector<double> widths;
    std::vector<double> residuals;
    std::vector<double> tau0;          // per width
    std::vector<double> sigma_t;       // physical envelope width per width
    double omega_sign = 1.0;           // vertical frequency = omega_sign * tau0
    bool relative = true;              // residual divided by lambda
    bool strictly_decreasing = false;
};

// u_m(z,t) = phi(z) g_m(t) e^{i omega t} with g_m a Gaussian of width m/|tau0|.
// grid3d is the reference box (|tau0| = 1 units): its horizontal axes must
// match the modes' grid and its vertical half-extent must be >= 8 m_max.
WeylProbeResult weyl_probe(double lambda, unsigned k, const std::vector<double>& widths, const BoxGrid& grid3d,
                           const ReferenceModes& modes, const WeylOptions& opt = {});

// ||(L - lambda) u|| (absolute) from the separable evaluation, for one envelope.
double weyl_residual_semianalytic(const Eigen::VectorXcd& phi, const BoxGrid& zgrid, double tau0, int angular_sign,
                                  const FieldConvention& c, double sigma, double lambda);
// Same quantity by applying the expanded sub-Laplacian on a 3-d grid.
double weyl_residual_fd3d(const Eigen::VectorXcd& phi, const BoxGrid& zgrid, double tau0, int angular_sign,
                          const FieldConvention& c, double sigma, double lambda, const Axis& taxis);

}  // namespace heis::spectral
