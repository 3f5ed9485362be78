#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heis/grid.hpp"
#include "heis/variational/discrete.hpp"

namespace heis::variational {

// ---- Folland-Stein constant ----

struct FSResult {
    double value = 0.0;            // best quotient found
    double start_quotient = 0.0;
    RealField field;
    std::vector<double> quotients; // accepted iterates, non-increasing
    bool monotone = true;
    bool stagnated = false;        // stalled before reaching the tolerance
    bool converged = false;
    std::size_t iterations = 0;
};

struct FSOptions {
    std::size_t budget = 300;
    double tol = 1e-7;  // relative quotient change per step
    std::uint64_t seed = 1;
};

// Minimizes ||D_H u||_p^p / ||u||_{p*}^p over fields vanishing on the boundary of `grid`.
FSResult folland_stein_constant(const BoxGrid& grid, double p, const FSOptions& opt = {});
// The quotient itself, for any field.
double folland_stein_quotient(const Discretization& d, const std::vector<double>& u);

// ---- threshold ----

// Non-degenerate: (1/theta - 1/p*)(m0 C)^(p*/(p*-p)).
// Degenerate: (1/theta - 1/p*)(m_coef C^kappa)^(p*/(p*-p kappa)); m_coef defaults to m0 when
// positive and to m1 otherwise.
double mp_threshold(const KirchhoffProblem& prob, double C, std::optional<double> m_coef = std::nullopt);

// ---- ray scan ----

struct RayScan {
    std::vector<double> t, J;
    double t_peak = 0.0, J_peak = 0.0;
    double t_negative = 0.0;
    bool tail_strictly_decreasing = false;
};

// v0 must have unit discrete norm. Samples t in [0, t_max] at steps+1 points.
RayScan ray_scan(const Discretization& d, const std::vector<double>& v0, double t_max, std::size_t steps);

// Gaussian bump centred at the origin, zero on the boundary, scaled to unit norm.
std::vector<double> unit_bump(const Discretization& d, double width = 1.0);

// ---- generic mountain pass ----

struct Objective {
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;  // Euclidean
    // Descent direction r for a gradient g (Riesz map); defaults to identity.
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> precondition;
    std::function<double(const Eigen::VectorXd&)> norm;  // defaults to Euclidean
};

struct MPOptions {
    std::size_t nodes = 16;       // interior path nodes m
    double tol_rel = 1e-6;        // stop when grad <= tol_rel * initial grad
    double tol_abs = 0.0;         // or grad <= tol_abs
    std::size_t max_iter = 2000;
    double armijo = 1e-4;
    double initial_step = 1.0;
    double max_step = 1.0;        // cap on the step along the descent direction
    double max_move = 0.25;       // cap on |step| relative to |u| of the moved node
    double merge_fraction = 1e-3; // merge nodes closer than this fraction of |e|
    // Move the max node to the energy peak along its ray from 0 before each step, and measure
    // line-search trials at their ray peaks.
    bool ray_peak = true;
    double ray_span = 3.0;        // peak search on t in [0, ray_span]
};

struct MPLogEntry {
    std::size_t iteration = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
    double norm = 0.0;
    double step = 0.0;
    std::size_t path_nodes = 0;
};

struct GenericMPResult {
    Eigen::VectorXd u;
    double energy = 0.0;
    double grad_norm = 0.0;
    double grad_norm0 = 0.0;
    std::vector<MPLogEntry> log;
    bool converged = false;
    bool stagnated = false;
    std::size_t iterations = 0;
    std::size_t merges = 0, insertions = 0;
    std::string diagnostics;
};

GenericMPResult mountain_pass(const Objective& obj, const Eigen::VectorXd& e, const MPOptions& opt = {});

// ---- Kirchhoff mountain pass ----

struct MPResult {
    RealField u;
    double energy = 0.0;
    double grad_norm = 0.0;
    double grad_norm0 = 0.0;
    double norm = 0.0;
    std::vector<std::size_t> iterations;
    std::vector<double> energies, grad_norms, norms;
    double e_norm = 0.0;
    std::optional<double> threshold;
    std::optional<double> fs_constant;
    bool converged = false;
    bool stagnated = false;
    bool reduced_1e4 = false;
    bool positive_norm = false;
    bool positive_energy = false;
    std::string diagnostics;
};

Objective make_objective(const Discretization& d);
MPResult mountain_pass_solve(const Discretization& d, const std::vector<double>& e, const MPOptions& opt = {});

// ---- geometry certificate ----

struct GeometryRow {
    double rho = 0.0;
    double min_energy = 0.0;
    double max_energy = 0.0;
};

struct GeometryCertificate {
    bool ok = false;
    double rho = 0.0;
    double alpha = 0.0;
    std::vector<GeometryRow> table;
    std::string diagnostics;
};

struct GeometryOptions {
    std::size_t samples = 24;
    double rho_max = 1.0;
    std::size_t levels = 12;  // rho_max * 2^-k, k < levels
    std::uint64_t seed = 7;
};

// Random smooth bump superposition, zero on the boundary, scaled to discrete norm rho.
std::vector<double> random_sphere_field(const Discretization& d, double rho, std::uint64_t seed);
GeometryCertificate mp_geometry_check(const Discretization& d, const GeometryOptions& opt = {});

// ---- Palais-Smale monitor ----

struct PSOptions {
    std::size_t tail = 5;
    double cauchy_tol = 1e-8;  // relative spread of the last `tail` energies
    double tol_rel = 1e-4;
    double bound_factor = 2.0; // norms <= bound_factor * |e|
};

struct PSSummary {
    bool energy_cauchy = false;
    bool gradient_to_tol = false;
    bool bounded = false;
    bool below_threshold = false;
    double final_energy = 0.0, threshold = 0.0;
    double energy_spread = 0.0;
    std::string notes;
    bool converged() const { return energy_cauchy && gradient_to_tol && bounded; }
};

PSSummary ps_monitor(const MPResult& r, const PSOptions& opt = {});

}  // namespace heis::variational
