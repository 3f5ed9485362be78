#include "heis/spectral/landau.hpp"

#include <algorithm>
#include <cmath>

#include "heis/spectral/twisted.hpp"

namespace heis::spectral {

std::vector<Cluster> cluster_by_gap(const std::vector<double>& sorted, double rel_gap) {
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double v = sorted[i];
        if (i > 0 && v < sorted[i - 1]) throw std::invalid_argument("cluster_by_gap: values must be sorted");
        const bool fresh = out.empty() || (v - out.back().hi) > rel_gap * std::abs(out.back().hi);
        if (fresh) out.push_back(Cluster{v, v, v, 0, {}});
        Cluster& c = out.back();
        c.hi = v;
        c.members.push_back(i);
        c.size = c.members.size();
        c.center += (v - c.center) / static_cast<double>(c.size);
    }
    return out;
}

LandauFit landau_structure_fit(const std::vector<double>& eigs, double tau, std::size_t levels) {
    if (tau == 0.0) throw std::invalid_argument("landau_structure_fit: tau must be nonzero");
    if (levels < 3) throw std::invalid_argument("landau_structure_fit: need at least 3 levels");
    std::vector<double> s = eigs;
    std::sort(s.begin(), s.end());
    std::vector<Cluster> all = cluster_by_gap(s);
    if (all.size() < levels) throw StructureMismatch("fewer eigenvalue clusters than requested levels");
    LandauFit fit;
    fit.clusters.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(levels));
    const double at = std::abs(tau);

    std::vector<double> gaps;
    for (std::size_t k = 1; k < levels; ++k) gaps.push_back(fit.clusters[k].center - fit.clusters[k - 1].center);
    double mean_gap = 0.0;
    for (double g : gaps) mean_gap += g / static_cast<double>(gaps.size());
    for (double g : gaps) fit.spacing_deviation = std::max(fit.spacing_deviation, std::abs(g / mean_gap - 1.0));
    if (fit.spacing_deviation > 0.05) throw StructureMismatch("eigenvalue clusters are not equally spaced within 5%");

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < levels; ++k) {
        const double b = (2.0 * k + 1.0) * at;
        num += fit.clusters[k].center * b;
        den += b * b;
    }
    fit.kappa0 = num / den;
    for (std::size_t k = 0; k < levels; ++k) {
        const double pred = fit.kappa0 * (2.0 * k + 1.0) * at;
        fit.max_rel_deviation = std::max(fit.max_rel_deviation, std::abs(fit.clusters[k].center - pred) / pred);
    }
    double best = 1e300;
    for (double cand : {1.0, 4.0}) {
        const double d = std::abs(fit.kappa0 / cand - 1.0);
        if (d <= 0.02 && d < best) {
            best = d;
            fit.kappa0_adjudicated = cand;
        }
    }
    return fit;
}

std::vector<std::size_t> localized_indices(const EigenResult& er, const BoxGrid& g, double factor) {
    std::vector<double> mom;
    for (const auto& v : er.vectors) mom.push_back(second_moment(g, v));
    std::vector<std::size_t> idx;
    if (mom.empty()) return idx;
    const double mn = *std::min_element(mom.begin(), mom.end());
    for (std::size_t i = 0; i < mom.size(); ++i)
        if (mom[i] <= factor * mn) idx.push_back(i);
    return idx;
}

}  // namespace heis::spectral
