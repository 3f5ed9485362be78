#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "heis/spectral/conventions.hpp"
#include "heis/spectral/landau.hpp"
#include "heis/spectral/weyl.hpp"

namespace heis::spectral {

inline constexpr int kSpectralReportSchema = 1;

struct ResidualRow {
    unsigned j = 0, k = 0;
    double h = 0.0;
    double relative = 0.0;
    double printed_scale = 0.0;
};

struct SpectralReport {
    double tau = 1.0;
    BoxGrid grid;
    std::vector<double> eigenvalues;       // ascending, as computed
    std::vector<double> eig_residuals;
    std::vector<std::size_t> localized;    // indices into eigenvalues used for the ladder
    LandauFit fit;
    Convention convention;                 // adjudicated
    double search_residual = 0.0;
    std::vector<ResidualRow> residuals;
    std::vector<std::pair<std::string, double>> runtimes;
    std::vector<std::string> notes;
};

nlohmann::json to_json(const BoxGrid& g);
nlohmann::json to_json(const Convention& c, double kappa0);
nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const WeylProbeResult& w);
nlohmann::json to_json(const GramResult& g);

}  // namespace heis::spectral
