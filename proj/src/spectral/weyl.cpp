#include "heis/spectral/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/spectral/twisted.hpp"

namespace heis::spectral {

ReferenceModes reference_modes(const BoxGrid& grid2d, std::size_t n_eig, int angular_sign, const EigenOptions& opt) {
    ReferenceModes rm;
    rm.grid = grid2d;
    rm.angular_sign = angular_sign;
    const TwistedOperator op = assemble_twisted(1.0, grid2d, angular_sign);
    rm.eig = lowest_eigenpairs(op.matrix, n_eig, opt);
    const std::vector<std::size_t> loc = localized_indices(rm.eig, grid2d);
    std::vector<double> vals;
    for (std::size_t i : loc) vals.push_back(rm.eig.values[i]);
    rm.levels = cluster_by_gap(vals);
    for (auto& cl : rm.levels) {
        for (auto& m : cl.members) m = loc[m];
        std::size_t best = cl.members.front();
        double bm = 1e300;
        for (std::size_t m : cl.members) {
            const double mo = second_moment(grid2d, rm.eig.vectors[m]);
            if (mo < bm) {
                bm = mo;
                best = m;
            }
        }
        rm.representative.push_back(best);
    }
    return rm;
}

namespace {

BoxGrid dilated(const BoxGrid& g, double s) {
    std::vector<Axis> ax = g.axes();
    for (auto& a : ax) {
        a.lower *= s;
        a.upper *= s;
    }
    return BoxGrid(ax);
}

double vertical_frequency_sign(const FieldConvention& c, int angular_sign) {
    // Matching the g-coefficient with the twisted operator: 2 c omega = 4 tau0 s.
    return 2.0 * angular_sign / c.twist();
}

}  // namespace

double weyl_residual_semianalytic(const Eigen::VectorXcd& phi, const BoxGrid& zgrid, double tau0, int angular_sign,
                                  const FieldConvention& c, double sigma, double lambda) {
    if (zgrid.dim() != 2) throw std::invalid_argument("weyl probe: z-grid must be 2-d");
    const double omega = vertical_frequency_sign(c, angular_sign) * tau0;
    const double tw = c.twist();
    const ScalarField f = to_field(zgrid, phi);
    const ScalarField Lf = twisted_laplacian(f, tau0, angular_sign);
    const ScalarField dx = partial(f, 0), dy = partial(f, 1);
    const cplx I(0.0, 1.0);
    double n_phi = 0.0, n_res = 0.0, n_A = 0.0, n_B = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < zgrid.size(); ++i) {
        const double x = zgrid.coord(i, 0), y = zgrid.coord(i, 1);
        const double z2 = x * x + y * y;
        const cplx r = Lf[i] - lambda * f[i];
        const cplx A = -2.0 * I * omega * tw * tw * z2 * f[i] - 2.0 * tw * (y * dx[i] - x * dy[i]);
        const cplx B = -tw * tw * z2 * f[i];
        n_phi += std::norm(f[i]);
        n_res += std::norm(r);
        n_A += std::norm(A);
        n_B += std::norm(B);
        cross += (std::conj(r) * B).real();
    }
    const double s2 = sigma * sigma;
    // Gaussian moments relative to int g^2: g'^2 -> 1/(2 s^2), g''^2 -> 3/(4 s^4), g g'' -> -1/(2 s^2).
    const double total = n_res + n_A / (2.0 * s2) + 3.0 * n_B / (4.0 * s2 * s2) - cross / s2;
    return std::sqrt(std::max(total, 0.0) / n_phi);
}

double weyl_residual_fd3d(const Eigen::VectorXcd& phi, const BoxGrid& zgrid, double tau0, int angular_sign,
                          const FieldConvention& c, double sigma, double lambda, const Axis& taxis) {
    const double omega = vertical_frequency_sign(c, angular_sign) * tau0;
    const BoxGrid g({zgrid.axis(0), zgrid.axis(1), taxis});
    const std::size_t nt = taxis.count;
    ScalarField u(g);
    for (std::size_t i = 0; i < zgrid.size(); ++i)
        for (std::size_t k = 0; k < nt; ++k) {
            const double t = taxis.coord(k);
            u[i * nt + k] = phi[static_cast<Eigen::Index>(i)] * std::exp(-t * t / (2.0 * sigma * sigma)) *
                            std::polar(1.0, omega * t);
        }
    ScalarField Lu = sublaplacian_expanded(u, c, LaplacianSign::Positive);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        num += std::norm(Lu[i] - lambda * u[i]);
        den += std::norm(u[i]);
    }
    return std::sqrt(num / den);
}

WeylProbeResult weyl_probe(double lambda, unsigned k, const std::vector<double>& widths, const BoxGrid& grid3d,
                           const ReferenceModes& modes, const WeylOptions& opt) {
    if (lambda < 0.0) throw std::invalid_argument("weyl_probe: lambda must be nonnegative");
    if (widths.empty()) throw std::invalid_argument("weyl_probe: no envelope widths");
    for (std::size_t i = 1; i < widths.size(); ++i)
        if (!(widths[i] > widths[i - 1])) throw std::invalid_argument("weyl_probe: widths must be strictly increasing");
    if (grid3d.dim() != 3) throw std::invalid_argument("weyl_probe: expects a 3-d reference grid");
    if (!(grid3d.axis(0) == modes.grid.axis(0)) || !(grid3d.axis(1) == modes.grid.axis(1)))
        throw std::invalid_argument("weyl_probe: horizontal axes differ from the reference modes grid");
    const double T = std::min(-grid3d.axis(2).lower, grid3d.axis(2).upper);
    if (T < 8.0 * widths.back()) throw std::invalid_argument("weyl_probe: box too small for the widest envelope");
    if (k >= modes.levels.size()) throw std::invalid_argument("weyl_probe: level k not resolved by reference modes");
    const bool limit = opt.limit_mode || lambda == 0.0;
    if (!limit && !(opt.kappa0 > 0.0)) throw std::invalid_argument("weyl_probe: kappa0 must be positive");

    const FieldConvention c{opt.variant, 4.0};
    const Eigen::VectorXcd& phi_ref = modes.eig.vectors[modes.representative[k]];
    WeylProbeResult res;
    res.lambda = lambda;
    res.k = k;
    res.widths = widths;
    res.relative = !limit;
    res.omega_sign = vertical_frequency_sign(c, modes.angular_sign);
    for (double m : widths) {
        double tau0;
        if (limit) tau0 = opt.tau_start * std::pow(widths.front() / m, 2.0);
        else if (opt.tau0_override != 0.0) tau0 = opt.tau0_override;
        else tau0 = lambda / (opt.kappa0 * (2.0 * k + 1.0));
        const BoxGrid zg = dilated(modes.grid, 1.0 / std::sqrt(tau0));
        const double sigma = m / tau0;
        double r = weyl_residual_semianalytic(phi_ref, zg, tau0, modes.angular_sign, c, sigma, lambda);
        if (!limit) r /= lambda;
        res.tau0.push_back(tau0);
        res.sigma_t.push_back(sigma);
        res.residuals.push_back(r);
    }
    res.strictly_decreasing = true;
    for (std::size_t i = 1; i < res.residuals.size(); ++i)
        if (!(res.residuals[i] < res.residuals[i - 1])) res.strictly_decreasing = false;
    return res;
}

}  // namespace heis::spectral
