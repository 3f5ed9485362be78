#pragma once

#include <json.hpp>

#include "heis/variational/solver.hpp"

namespace heis::variational {

inline constexpr int kSolveReportSchema = 1;

// Problem block of a config file; missing keys keep the desk defaults.
KirchhoffProblem problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KirchhoffProblem& p);
nlohmann::json to_json(const ValidationReport& v);
nlohmann::json to_json(const RayScan& r);
nlohmann::json to_json(const GeometryCertificate& g);
nlohmann::json to_json(const FSResult& f);
nlohmann::json to_json(const MPResult& r);
nlohmann::json to_json(const PSSummary& s);

}  // namespace heis::variational
