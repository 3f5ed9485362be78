#include "heis/spectral/report.hpp"

namespace heis::spectral {

using nlohmann::json;

json to_json(const BoxGrid& g) {
    json axes = json::array();
    for (const auto& a : g.axes()) axes.push_back({{"lower", a.lower}, {"upper", a.upper}, {"count", a.count}});
    return {{"dim", g.dim()}, {"axes", axes}};
}

json to_json(const Convention& c, double kappa0) {
    return {{"angular_sign", c.angular_sign},
            {"scaling_s", c.s},
            {"wigner_shift", wigner_shift_name(c.shift)},
            {"kappa0", kappa0},
            {"dz_convention", "d/dz = d_x - i d_y (no 1/2 factor)"}};
}

json to_json(const SpectralReport& r) {
    json clusters = json::array();
    for (std::size_t k = 0; k < r.fit.clusters.size(); ++k) {
        const auto& c = r.fit.clusters[k];
        clusters.push_back({{"k", k}, {"center", c.center}, {"size", c.size}, {"lo", c.lo}, {"hi", c.hi}});
    }
    json res = json::array();
    for (const auto& row : r.residuals)
        res.push_back({{"j", row.j}, {"k", row.k}, {"h", row.h}, {"relative", row.relative},
                       {"printed_scale", row.printed_scale}});
    json rt = json::object();
    for (const auto& [k, v] : r.runtimes) rt[k] = v;
    json fit = {{"kappa0_fit", r.fit.kappa0},
                {"max_rel_deviation", r.fit.max_rel_deviation},
                {"spacing_deviation", r.fit.spacing_deviation},
                {"clusters", clusters}};
    fit["kappa0_adjudicated"] = r.fit.kappa0_adjudicated ? json(*r.fit.kappa0_adjudicated) : json(nullptr);
    return {{"schema", "heis.spectral_report"},
            {"schema_version", kSpectralReportSchema},
            {"tau", r.tau},
            {"grid", to_json(r.grid)},
            {"eigenvalues", r.eigenvalues},
            {"eigen_residuals", r.eig_residuals},
            {"localized_indices", r.localized},
            {"landau_fit", fit},
            {"conventions", to_json(r.convention, r.fit.kappa0_adjudicated.value_or(r.fit.kappa0))},
            {"search_residual", r.search_residual},
            {"eigenfunction_residuals", res},
            {"runtimes_s", rt},
            {"notes", r.notes}};
}

json to_json(const WeylProbeResult& w) {
    return {{"lambda", w.lambda},
            {"k", w.k},
            {"widths", w.widths},
            {"residuals", w.residuals},
            {"tau0", w.tau0},
            {"sigma_t", w.sigma_t},
            {"omega_sign", w.omega_sign},
            {"relative", w.relative},
            {"strictly_decreasing", w.strictly_decreasing}};
}

json to_json(const GramResult& g) {
    json labels = json::array();
    for (const auto& [j, k] : g.labels) labels.push_back({j, k});
    return {{"size", g.G.rows()}, {"max_deviation", g.max_deviation}, {"max_tail", g.max_tail}, {"labels", labels}};
}

}  // namespace heis::spectral
