#pragma once

#include <string>
#include <vector>

#include "heis/geometry.hpp"
#include "heis/grid.hpp"

namespace heis::variational {

// M(t) = m0 + b t^(kappa-1)  (NonDegenerate)  or  m1 t^(kappa-1)  (Degenerate).
struct KirchhoffM {
    enum class Kind { NonDegenerate, Degenerate };
    Kind kind = Kind::NonDegenerate;
    double m0 = 1.0, b = 1.0, m1 = 1.0, kappa = 1.5;

    static KirchhoffM non_degenerate(double m0, double b, double kappa);
    static KirchhoffM degenerate(double m1, double kappa);

    double M(double t) const;
    // Closed-form primitive int_0^t M(s) ds.
    double primitive(double t) const;
};

// Bounded weight a(xi): constant a0, or a0 / (1 + (r(xi)/ell)^2) in the Koranyi gauge.
struct Profile {
    enum class Kind { Constant, KoranyiRadial };
    Kind kind = Kind::Constant;
    double base = 1.0;
    double ell = 1.0;
    double operator()(const HeisPoint& xi) const;
};

// Potential V(xi): constant V0, or V0 + v2 r(xi)^2.
struct Potential {
    enum class Kind { Constant, KoranyiQuadratic };
    Kind kind = Kind::Constant;
    double V0 = 1.0;
    double v2 = 0.0;
    double operator()(const HeisPoint& xi) const;
};

// f(xi, t) = a(xi) |t|^(r_g - 2) t,  F(xi, t) = a(xi) |t|^r_g / r_g.
struct GrowthNonlinearity {
    Profile a;
    double r_g = 3.5;
    double theta = 3.5;

    GrowthNonlinearity() = default;
    GrowthNonlinearity(Profile a_, double r_g_, double theta_);
    double f(double a_xi, double t) const;
    double F(double a_xi, double t) const;
};

struct KirchhoffProblem {
    std::size_t n = 1;
    double p = 2.0;
    double lambda = 50.0;
    KirchhoffM M = KirchhoffM::non_degenerate(1.0, 1.0, 1.5);
    GrowthNonlinearity nonlinearity;
    Potential V;
    BoxGrid grid = BoxGrid::cube(3, 4.0, 33);

    double Q() const { return 2.0 * static_cast<double>(n) + 2.0; }
    double p_star() const { return Q() * p / (Q() - p); }
    // n = 1, p = 2, kappa = 1.5, r_g = theta = 3.5, m0 = b = 1, V = 1, lambda = 50, [-4,4]^3 / 33^3.
    static KirchhoffProblem desk();
};

struct ValidationItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
};

ValidationReport validate_exponents(const KirchhoffProblem& prob);

}  // namespace heis::variational
