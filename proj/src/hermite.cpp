#include "heis/hermite.hpp"

#include <cmath>
#include <numbers>

namespace heis {

double hermite_poly(unsigned k, double x) {
    double h0 = 1.0;
    if (k == 0) return h0;
    double h1 = 2.0 * x;
    for (unsigned m = 1; m < k; ++m) {
        const double h2 = 2.0 * x * h1 - 2.0 * m * h0;
        h0 = h1;
        h1 = h2;
    }
    if (!std::isfinite(h1)) throw std::overflow_error("hermite_poly: overflow for this (k, x)");
    return h1;
}

void hermite_fn_all(unsigned kmax, double x, std::vector<double>& out) {
    out.resize(kmax + 1);
    out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (kmax == 0) return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (unsigned m = 1; m < kmax; ++m)
        out[m + 1] = x * std::sqrt(2.0 / (m + 1)) * out[m] - std::sqrt(static_cast<double>(m) / (m + 1)) * out[m - 1];
}

double hermite_fn(unsigned k, double x) {
    double e0 = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (k == 0) return e0;
    double e1 = std::sqrt(2.0) * x * e0;
    for (unsigned m = 1; m < k; ++m) {
        const double e2 = x * std::sqrt(2.0 / (m + 1)) * e1 - std::sqrt(static_cast<double>(m) / (m + 1)) * e0;
        e0 = e1;
        e1 = e2;
    }
    return e1;
}

double hermite_fn_scaled(unsigned k, double tau, double x) {
    if (tau == 0.0) throw std::invalid_argument("hermite_fn_scaled: tau must be nonzero");
    const double a = std::abs(tau);
    return std::sqrt(std::sqrt(a)) * hermite_fn(k, std::sqrt(a) * x);
}

namespace {

double trapezoid_weight(const Quadrature1D& q, std::size_t i) {
    const double h = q.spacing();
    return (i == 0 || i + 1 == q.nodes) ? 0.5 * h : h;
}

void check_quadrature(const Quadrature1D& q) {
    if (q.nodes < 3 || !(q.half_width > 0.0)) throw std::invalid_argument("invalid quadrature rule");
}

}  // namespace

std::vector<cplx> fourier_transform_1d(const Profile1D& f, const std::vector<double>& xi, const Quadrature1D& q,
                                       double* tail) {
    check_quadrature(q);
    std::vector<cplx> fx(q.nodes);
    for (std::size_t i = 0; i < q.nodes; ++i) fx[i] = f(q.node(i));
    const double guard = std::max(std::abs(fx.front()), std::abs(fx.back()));
    if (tail) *tail = guard;
    if (!(guard < kTailTolerance))
        throw QuadratureTailError("fourier_transform_1d: profile does not decay at the quadrature bounds", guard);
    const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    std::vector<cplx> out(xi.size());
    for (std::size_t m = 0; m < xi.size(); ++m) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < q.nodes; ++i)
            s += trapezoid_weight(q, i) * std::polar(1.0, -xi[m] * q.node(i)) * fx[i];
        out[m] = pref * s;
    }
    return out;
}

double wigner_shift_factor(WignerShift s) { return s == WignerShift::Printed ? 2.0 : 0.5; }

const char* wigner_shift_name(WignerShift s) { return s == WignerShift::Printed ? "printed" : "symmetric"; }

cplx fourier_wigner(const Profile1D& f, const Profile1D& g, double tau, double q, double p, const Quadrature1D& quad,
                    WignerShift shift, double* tail) {
    if (tau == 0.0) throw std::invalid_argument("fourier_wigner: tau must be nonzero");
    check_quadrature(quad);
    const double c = wigner_shift_factor(shift) * p;
    const auto integrand = [&](double y) { return f(y - c) * std::conj(g(y + c)); };
    const cplx lo = integrand(-quad.half_width), hi = integrand(quad.half_width);
    const double guard = std::max(std::abs(lo), std::abs(hi));
    if (tail) *tail = guard;
    if (!(guard < kTailTolerance))
        throw QuadratureTailError("fourier_wigner: integrand does not decay at the quadrature bounds", guard);
    cplx s = 0.0;
    for (std::size_t i = 0; i < quad.nodes; ++i) {
        const double y = quad.node(i);
        s += trapezoid_weight(quad, i) * std::polar(1.0, tau * q * y) * integrand(y);
    }
    return std::sqrt(std::abs(tau) / (2.0 * std::numbers::pi)) * s;
}

double WignerSpec::default_half_width(double tau) { return std::max(10.0, 10.0 / std::sqrt(std::abs(tau))); }

WignerSpec::WignerSpec(unsigned j_, unsigned k_, double tau_, WignerShift shift_, double L_, std::size_t N_)
    : j(j_), k(k_), tau(tau_), L(L_ > 0.0 ? L_ : default_half_width(tau_)), N(N_), shift(shift_) {
    if (tau == 0.0) throw std::invalid_argument("WignerSpec: tau must be nonzero");
    if (N < 64) throw std::invalid_argument("WignerSpec: need at least 64 quadrature nodes");
    const double guard = std::abs(hermite_fn_scaled(j, tau, L) * hermite_fn_scaled(k, tau, L));
    if (!(guard < kTailTolerance)) throw QuadratureTailError("WignerSpec: half-width L too small for this tau", guard);
}

cplx special_hermite(const WignerSpec& spec, double q, double p) {
    const unsigned j = spec.j, k = spec.k;
    const double tau = spec.tau;
    const Profile1D f = [j, tau](double y) { return cplx(hermite_fn_scaled(j, tau, y)); };
    const Profile1D g = [k, tau](double y) { return cplx(hermite_fn_scaled(k, tau, y)); };
    return fourier_wigner(f, g, tau, q, p, spec.quadrature(), spec.shift);
}

ScalarField tabulate_special_hermite(const WignerSpec& spec, const BoxGrid& g, double arg_scale, double* max_tail) {
    if (g.dim() != 2) throw std::invalid_argument("tabulate_special_hermite: expects a 2-d grid");
    const Quadrature1D quad = spec.quadrature();
    const std::size_t Nq = g.count(0), Np = g.count(1);
    const double tau = spec.tau;
    const double sa = std::sqrt(std::abs(tau));
    const double amp = std::sqrt(sa);
    const double pref = std::sqrt(std::abs(tau) / (2.0 * std::numbers::pi));
    const double h = quad.spacing();
    const unsigned kmax = std::max(spec.j, spec.k);
    std::vector<double> ea, eb;
    std::vector<cplx> F(quad.nodes);
    double worst = 0.0;
    ScalarField out(g);
    for (std::size_t ip = 0; ip < Np; ++ip) {
        const double c = wigner_shift_factor(spec.shift) * arg_scale * g.axis(1).coord(ip);
        for (std::size_t i = 0; i < quad.nodes; ++i) {
            const double y = quad.node(i);
            hermite_fn_all(kmax, sa * (y - c), ea);
            hermite_fn_all(kmax, sa * (y + c), eb);
            F[i] = amp * amp * ea[spec.j] * eb[spec.k] * ((i == 0 || i + 1 == quad.nodes) ? 0.5 * h : h);
        }
        const double guard = std::max(std::abs(F.front()), std::abs(F.back())) / (0.5 * h);
        worst = std::max(worst, guard);
        if (!(guard < kTailTolerance))
            throw QuadratureTailError("tabulate_special_hermite: integrand does not decay at the bounds", guard);
        for (std::size_t iq = 0; iq < Nq; ++iq) {
            const double theta = tau * arg_scale * g.axis(0).coord(iq);
            const cplx step = std::polar(1.0, theta * h);
            cplx phase = std::polar(1.0, theta * quad.node(0));
            cplx s = 0.0;
            for (std::size_t i = 0; i < quad.nodes; ++i) {
                s += phase * F[i];
                phase *= step;
            }
            out[iq * Np + ip] = pref * s;
        }
    }
    if (max_tail) *max_tail = worst;
    return out;
}

}  // namespace heis
