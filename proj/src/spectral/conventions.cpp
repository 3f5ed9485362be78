#include "heis/spectral/conventions.hpp"

#include <cmath>

#include "heis/fields.hpp"

namespace heis::spectral {

WignerSpec residual_wigner_spec(unsigned j, unsigned k, double tau, WignerShift shift) {
    return WignerSpec(j, k, tau, shift, 0.0, 1025);
}

ResidualResult eigenfunction_residual(const ScalarField& e, unsigned k, double tau, int angular_sign, double kappa0) {
    if (!(kappa0 > 0.0)) throw std::invalid_argument("eigenfunction_residual: kappa0 must be positive");
    const double enorm_sup = e.sup_norm();
    if (!(enorm_sup > 1e-12)) throw DegenerateField("eigenfunction_residual: tabulated e is below numerical noise");
    const ScalarField Le = twisted_laplacian(e, tau, angular_sign);
    const double level = (2.0 * k + 1.0) * std::abs(tau);
    const double mu = kappa0 * level;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        num += std::norm(Le[i] - mu * e[i]);
        den += std::norm(e[i]);
    }
    ResidualResult r;
    r.e_norm = std::sqrt(den);
    r.relative = std::sqrt(num) / (mu * r.e_norm);
    r.printed_scale = std::sqrt(num) / (level * r.e_norm);
    return r;
}

ResidualResult eigenfunction_residual(unsigned j, unsigned k, double tau, const BoxGrid& g, const Convention& c,
                                      double kappa0) {
    const WignerSpec spec = residual_wigner_spec(j, k, tau, c.shift);
    const ScalarField e = tabulate_special_hermite(spec, g, c.s);
    return eigenfunction_residual(e, k, tau, c.angular_sign, kappa0);
}

SearchResult convention_search(unsigned j, unsigned k, double tau, const BoxGrid& g, const SearchOptions& opt) {
    SearchResult res;
    for (WignerShift sh : opt.shifts)
        for (double s : opt.scales) {
            const ScalarField e = tabulate_special_hermite(residual_wigner_spec(j, k, tau, sh), g, s);
            for (int sign : opt.signs) {
                const ResidualResult r = eigenfunction_residual(e, k, tau, sign, opt.kappa0);
                res.table.push_back({Convention{s, sign, sh}, r.relative});
            }
        }
    if (res.table.empty()) throw std::invalid_argument("convention_search: empty candidate set");
    // Smallest residual; near-ties resolved toward the printed angular sign.
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.table.size(); ++i) {
        const double a = res.table[i].residual, b = res.table[best].residual;
        if (a < b * (1.0 - 1e-9)) {
            best = i;
        } else if (a <= b * (1.0 + 1e-9) && res.table[i].convention.angular_sign == 1 &&
                   res.table[best].convention.angular_sign != 1) {
            best = i;
        }
    }
    res.best = res.table[best].convention;
    res.residual = res.table[best].residual;
    for (const auto& cand : res.table)
        if (cand.convention.s == res.best.s && cand.convention.shift == res.best.shift &&
            cand.convention.angular_sign != res.best.angular_sign &&
            std::abs(cand.residual - res.residual) <= 1e-9 * res.residual)
            res.sign_tie = true;
    if (res.residual > 0.5) throw NoConventionFound("convention_search: every candidate residual exceeds 0.5");
    return res;
}

GramResult gram_matrix(unsigned J, unsigned K, double tau, WignerShift shift, const GramQuadrature& q) {
    if (J > 4 || K > 4) throw std::invalid_argument("gram_matrix: J, K <= 4 at desk scale");
    if (tau == 0.0) throw std::invalid_argument("gram_matrix: tau must be nonzero");
    const double st = std::sqrt(std::abs(tau));
    const double half = q.box_half > 0.0 ? q.box_half : 12.0 / st;
    const double h = q.spacing > 0.0 ? q.spacing : 0.2 / st;
    const std::size_t count = 2 * static_cast<std::size_t>(std::ceil(half / h)) + 1;
    const double B = h * static_cast<double>(count - 1) / 2.0;
    const BoxGrid g = BoxGrid::cube(2, B, count);
    GramResult res;
    std::vector<ScalarField> fields;
    for (unsigned j = 0; j <= J; ++j)
        for (unsigned k = 0; k <= K; ++k) {
            double tail = 0.0;
            fields.push_back(tabulate_special_hermite(WignerSpec(j, k, tau, shift, 0.0, q.wigner_nodes), g, 1.0, &tail));
            res.max_tail = std::max(res.max_tail, tail);
            res.labels.emplace_back(j, k);
        }
    // Edge values of the tabulation must be negligible for the box to be valid.
    for (const auto& f : fields)
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.on_boundary(i) && std::norm(f[i]) > kTailTolerance)
                throw QuadratureTailError("gram_matrix: tabulation does not decay at the box edge", std::norm(f[i]));
    const Eigen::Index n = static_cast<Eigen::Index>(fields.size());
    res.G.resize(n, n);
    const double w = g.cell_volume();
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            cplx s = 0.0;
            const auto& fa = fields[static_cast<std::size_t>(a)];
            const auto& fb = fields[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < g.size(); ++i) s += fa[i] * std::conj(fb[i]);
            res.G(a, b) = s * w;
            const double target = a == b ? 1.0 : 0.0;
            res.max_deviation = std::max(res.max_deviation, std::abs(res.G(a, b) - target));
        }
    return res;
}

}  // namespace heis::spectral
