#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "csv.hpp"

namespace heis::cli {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string limit;  // human-readable tolerance, e.g. "<= 0.005"
};

struct CampaignResult {
    std::string kind;
    nlohmann::json report;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, CsvTable>> tables;  // file stem -> table
    std::vector<std::pair<std::string, std::string>> extra_files;  // written by the campaign itself
    bool validation_failed = false;
    bool ok() const;
};

struct RunOptions {
    nlohmann::json config = nlohmann::json::object();
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<std::size_t>> grid;
    std::optional<double> tau;
    std::optional<double> lambda;
};

const std::vector<std::string>& verbs();

// Runs one campaign; throws ConfigError for malformed configs.
CampaignResult run_campaign(const std::string& verb, const RunOptions& opt);

// Writes <out>/<kind>_report.json, <kind>_summary.txt and <kind>_<table>.csv.
void write_outputs(const CampaignResult& r, const std::string& out_dir);
std::string summary_text(const CampaignResult& r);

// Output directory: explicit flag, then config "output_dir", then $HEIS_OUT_DIR, then ./heis_out.
std::string resolve_out_dir(const std::string& flag, const nlohmann::json& config);

}  // namespace heis::cli
