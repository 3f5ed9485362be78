#include "heis/variational/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heis::variational {

KirchhoffM KirchhoffM::non_degenerate(double m0, double b, double kappa) {
    if (!(m0 > 0.0) || b < 0.0 || kappa < 1.0)
        throw std::invalid_argument("NonDegenerate Kirchhoff function needs m0 > 0, b >= 0, kappa >= 1");
    KirchhoffM k;
    k.kind = Kind::NonDegenerate;
    k.m0 = m0;
    k.b = b;
    k.kappa = kappa;
    return k;
}

KirchhoffM KirchhoffM::degenerate(double m1, double kappa) {
    if (!(m1 > 0.0) || !(kappa > 1.0))
        throw std::invalid_argument("Degenerate Kirchhoff function needs m1 > 0, kappa > 1");
    KirchhoffM k;
    k.kind = Kind::Degenerate;
    k.m0 = 0.0;
    k.b = 0.0;
    k.m1 = m1;
    k.kappa = kappa;
    return k;
}

double KirchhoffM::M(double t) const {
    if (t < 0.0) throw std::domain_error("Kirchhoff function evaluated at negative argument");
    if (kind == Kind::NonDegenerate) return b == 0.0 ? m0 : m0 + b * std::pow(t, kappa - 1.0);
    return m1 * std::pow(t, kappa - 1.0);
}

double KirchhoffM::primitive(double t) const {
    if (t < 0.0) throw std::domain_error("Kirchhoff primitive evaluated at negative argument");
    if (kind == Kind::NonDegenerate) return b == 0.0 ? m0 * t : m0 * t + b * std::pow(t, kappa) / kappa;
    return m1 * std::pow(t, kappa) / kappa;
}

double Profile::operator()(const HeisPoint& xi) const {
    if (kind == Kind::Constant) return base;
    const double r = koranyi_norm(xi) / ell;
    return base / (1.0 + r * r);
}

double Potential::operator()(const HeisPoint& xi) const {
    if (kind == Kind::Constant) return V0;
    const double r = koranyi_norm(xi);
    return V0 + v2 * r * r;
}

GrowthNonlinearity::GrowthNonlinearity(Profile a_, double r_g_, double theta_) : a(a_), r_g(r_g_), theta(theta_) {
    if (a.base < 0.0) throw std::invalid_argument("nonlinearity weight must be nonnegative");
    if (!(theta > 0.0) || theta > r_g)
        throw std::invalid_argument("Ambrosetti-Rabinowitz inequality needs 0 < theta <= r_g");
}

double GrowthNonlinearity::f(double a_xi, double t) const { return a_xi * std::pow(std::abs(t), r_g - 2.0) * t; }

double GrowthNonlinearity::F(double a_xi, double t) const { return a_xi * std::pow(std::abs(t), r_g) / r_g; }

KirchhoffProblem KirchhoffProblem::desk() { return KirchhoffProblem{}; }

bool ValidationReport::all_pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

ValidationReport validate_exponents(const KirchhoffProblem& prob) {
    ValidationReport rep;
    const double p = prob.p, Q = prob.Q();
    auto add = [&rep](std::string name, bool ok, double lhs, double rhs) {
        std::ostringstream os;
        os.precision(10);
        os << lhs << " vs " << rhs;
        rep.items.push_back({std::move(name), ok, os.str()});
    };
    add("p > 1", p > 1.0, p, 1.0);
    add("p < Q", p < Q, p, Q);
    const double ps = p < Q ? prob.p_star() : INFINITY;
    const double kappa = prob.M.kappa;
    const double rg = prob.nonlinearity.r_g, th = prob.nonlinearity.theta;
    add("kappa >= 1", kappa >= 1.0, kappa, 1.0);
    add("kappa < p*/p", kappa < ps / p, kappa, ps / p);
    add("p kappa < r_g", p * kappa < rg, p * kappa, rg);
    add("r_g < p*", rg < ps, rg, ps);
    add("p kappa < theta", p * kappa < th, p * kappa, th);
    add("theta < p*", th < ps, th, ps);
    add("theta <= r_g", th <= rg, th, rg);
    add("lambda > 0", prob.lambda > 0.0, prob.lambda, 0.0);
    add("V0 > 0", prob.V.V0 > 0.0, prob.V.V0, 0.0);
    add("grid dimension = 2n+1", prob.grid.dim() == 2 * prob.n + 1, static_cast<double>(prob.grid.dim()),
        2.0 * prob.n + 1.0);
    return rep;
}

}  // namespace heis::variational
