#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heis/hermite.hpp"

using namespace heis;

namespace {

// Rodrigues: H_k = (-1)^k e^{x^2} (d/dx)^k e^{-x^2}. Carries P with
// (d/dx)^k e^{-x^2} = P_k(x) e^{-x^2}, P_{k+1} = P_k' - 2x P_k.
double hermite_rodrigues(unsigned k, double x) {
    std::vector<double> P{1.0};
    for (unsigned m = 0; m < k; ++m) {
        std::vector<double> Q(P.size() + 1, 0.0);
        for (std::size_t i = 1; i < P.size(); ++i) Q[i - 1] += static_cast<double>(i) * P[i];
        for (std::size_t i = 0; i < P.size(); ++i) Q[i + 1] -= 2.0 * P[i];
        P = std::move(Q);
    }
    double v = 0.0;
    for (std::size_t i = P.size(); i-- > 0;) v = v * x + P[i];
    return (k % 2 ? -1.0 : 1.0) * v;
}

double trapezoid(const std::function<double(double)>& f, double L, std::size_t N) {
    const double h = 2.0 * L / static_cast<double>(N - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (i == 0 || i + 1 == N ? 0.5 : 1.0) * f(-L + h * i);
    return s * h;
}

const double kInvRoot2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

}  // namespace

TEST_CASE("Hermite polynomials") {
    CHECK(hermite_poly(0, 3.7) == 1.0);
    CHECK(hermite_poly(1, -1.25) == -2.5);
    CHECK(hermite_poly(2, 1.0) == 2.0);
    for (unsigned k = 0; k <= 12; ++k)
        for (double x : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
            const double r = hermite_rodrigues(k, x);
            CHECK(hermite_poly(k, x) == doctest::Approx(r).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("Hermite functions") {
    CHECK(hermite_fn(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
    CHECK(hermite_fn(0, 0.0) == doctest::Approx(0.7511255).epsilon(1e-7));
    for (unsigned k = 0; k <= 8; ++k) {
        const double nrm = trapezoid([k](double x) { return hermite_fn(k, x) * hermite_fn(k, x); }, 20.0, 4001);
        CHECK(std::abs(nrm - 1.0) < 1e-10);
        for (double x : {0.3, 1.1, 2.7, 5.0}) CHECK(std::abs(hermite_fn(k, -x) - (k % 2 ? -1 : 1) * hermite_fn(k, x)) <= 1e-14);
        // closed form (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}
        const double c = 1.0 / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0) * std::sqrt(std::numbers::pi));
        for (double x : {-1.7, 0.2, 2.2})
            CHECK(hermite_fn(k, x) == doctest::Approx(c * hermite_rodrigues(k, x) * std::exp(-x * x / 2)).epsilon(1e-12));
    }
    for (unsigned k = 0; k < 4; ++k)
        for (unsigned m = k + 1; m < 5; ++m)
            CHECK(std::abs(trapezoid([k, m](double x) { return hermite_fn(k, x) * hermite_fn(m, x); }, 20.0, 4001)) < 1e-10);
    std::vector<double> all;
    hermite_fn_all(6, 0.83, all);
    REQUIRE(all.size() == 7);
    for (unsigned k = 0; k <= 6; ++k) CHECK(all[k] == doctest::Approx(hermite_fn(k, 0.83)).epsilon(1e-14));
}

TEST_CASE("scaled Hermite functions") {
    for (unsigned k = 0; k < 5; ++k) CHECK(hermite_fn_scaled(k, 1.0, 0.77) == doctest::Approx(hermite_fn(k, 0.77)).epsilon(1e-15));
    CHECK(hermite_fn_scaled(0, 4.0, 0.0) == doctest::Approx(std::sqrt(2.0) * std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
    for (double tau : {0.5, -2.0, 4.0})
        for (unsigned k = 0; k < 5; ++k) {
            const double nrm = trapezoid([=](double x) { return std::pow(hermite_fn_scaled(k, tau, x), 2); }, 25.0, 8001);
            CHECK(std::abs(nrm - 1.0) < 1e-10);
        }
}

TEST_CASE("Fourier transform") {
    const Quadrature1D q{12.0, 1201};
    const std::vector<double> xi{-3.0, -1.0, 0.0, 0.5, 2.0};
    const auto f = [](double x) { return cplx(std::exp(-x * x / 2)); };
    const auto F = fourier_transform_1d(f, xi, q);
    for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(F[i] - std::exp(-xi[i] * xi[i] / 2)) < 1e-10);

    const auto g = [](double x) { return cplx(x * std::exp(-x * x), std::exp(-(x - 1) * (x - 1))); };
    const cplx a(0.4, 1.3), b(-2.0, 0.1);
    const auto lhs = fourier_transform_1d([&](double x) { return a * f(x) + b * g(x); }, xi, q);
    const auto G = fourier_transform_1d(g, xi, q);
    for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(lhs[i] - (a * F[i] + b * G[i])) < 1e-12);

    // Plancherel on a fine frequency grid
    std::vector<double> w;
    for (int i = 0; i <= 1200; ++i) w.push_back(-12.0 + 0.02 * i);
    const auto Gw = fourier_transform_1d(g, w, q);
    double n1 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) n1 += (i == 0 || i + 1 == w.size() ? 0.5 : 1.0) * std::norm(Gw[i]);
    n1 *= 0.02;
    const double n0 = trapezoid([&](double x) { return std::norm(g(x)); }, 12.0, 1201);
    CHECK(std::abs(std::sqrt(n1) - std::sqrt(n0)) < 1e-8);

    CHECK_THROWS_AS(fourier_transform_1d([](double) { return cplx(1.0); }, xi, q), QuadratureTailError);
}

TEST_CASE("Fourier-Wigner transform") {
    const Quadrature1D q{12.0, 1201};
    const Profile1D e0 = [](double x) { return cplx(hermite_fn(0, x)); };
    CHECK(std::abs(fourier_wigner(e0, e0, 1.0, 0.0, 0.0, q) - kInvRoot2Pi) < 1e-12);
    for (auto [qq, pp] : std::vector<std::pair<double, double>>{{0.5, 0.0}, {-1.0, 0.3}, {2.0, -0.2}, {0.0, 0.5}, {3.0, 0.1}}) {
        const double exact = kInvRoot2Pi * std::exp(-qq * qq / 4 - 4 * pp * pp);
        CHECK(std::abs(fourier_wigner(e0, e0, 1.0, qq, pp, q) - exact) < 1e-8);
    }
    const Profile1D f = [](double x) { return cplx(std::exp(-x * x) * (1 + x)); };
    const Profile1D g = [](double x) { return cplx(std::exp(-(x - 0.5) * (x - 0.5)), 0.3 * x * std::exp(-x * x)); };
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.5, 1.5), T(0.3, 2.5);
    for (int s = 0; s < 10; ++s) {
        const double qq = U(rng), pp = U(rng), tau = (s % 2 ? -1 : 1) * T(rng);
        for (auto shift : {WignerShift::Printed, WignerShift::Symmetric}) {
            const cplx lhs = fourier_wigner(f, g, tau, qq, pp, q, shift);
            const cplx rhs = std::sqrt(std::abs(tau)) * fourier_wigner(f, g, 1.0, tau * qq, pp, q, shift);
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("special Hermite functions") {
    const Quadrature1D q{12.0, 1201};
    const WignerSpec s00(0, 0, 1.0);
    for (auto [qq, pp] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.2}, {-0.5, -0.4}})
        CHECK(std::abs(special_hermite(s00, qq, pp) - kInvRoot2Pi * std::exp(-qq * qq / 4 - 4 * pp * pp)) < 1e-8);
    for (unsigned j = 0; j < 3; ++j)
        for (unsigned k = 0; k < 3; ++k) {
            const WignerSpec s(j, k, 1.0);
            const Profile1D ej = [j](double x) { return cplx(hermite_fn(j, x)); };
            const Profile1D ek = [k](double x) { return cplx(hermite_fn(k, x)); };
            for (auto [qq, pp] : std::vector<std::pair<double, double>>{{0.7, 0.1}, {-1.2, 0.35}})
                CHECK(std::abs(special_hermite(s, qq, pp) - fourier_wigner(ej, ek, 1.0, qq, pp, q)) < 1e-8);
        }
    CHECK_THROWS(WignerSpec(0, 0, 0.0));
}
