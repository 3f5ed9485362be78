#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "heis/field_io.hpp"
#include "heis/fields.hpp"

using namespace heis;

namespace {

// Hn fields built from raw derivatives: X = d_x + 2y d_t, Y = d_y - 2x d_t (n = 1).
Polynomial X_oracle(const Polynomial& u) { return u.derivative(0) + 2.0 * u.derivative(2).times_variable(1); }
Polynomial Y_oracle(const Polynomial& u) { return u.derivative(1) - 2.0 * u.derivative(2).times_variable(0); }

double max_interior(const ScalarField& a, const ScalarField& b, double box) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool inside = true;
        for (std::size_t ax = 0; ax < a.dim(); ++ax) inside = inside && std::abs(a.grid().coord(i, ax)) <= box + 1e-12;
        if (inside) m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::vector<Polynomial> monomials(std::size_t vars, int max_degree) {
    std::vector<Polynomial> out;
    std::vector<int> e(vars, 0);
    while (true) {
        int deg = 0;
        for (int v : e) deg += v;
        if (deg <= max_degree) out.push_back(Polynomial::monomial(e));
        std::size_t a = 0;
        while (a < vars && ++e[a] > max_degree) e[a++] = 0;
        if (a == vars) break;
    }
    return out;
}

}  // namespace

TEST_CASE("polynomial-mode fields") {
    const auto c = FieldConvention::hn();
    const auto one = Polynomial::constant(3, 1.0);
    const auto x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1), t = Polynomial::variable(3, 2);
    CHECK(apply_X(0, one, c).is_zero());
    CHECK(apply_Y(0, one, c).is_zero());
    CHECK((apply_X(0, x, c) - one).is_zero());
    CHECK((apply_X(0, t, c) - 2.0 * y).is_zero());
    CHECK((apply_Y(0, t, c) + 2.0 * x).is_zero());
    CHECK((apply_T(t, c) - 4.0 * one).is_zero());
    for (const auto& u : monomials(3, 3)) {
        CHECK((apply_X(0, u, c) - X_oracle(u)).is_zero(1e-14));
        CHECK((apply_Y(0, u, c) - Y_oracle(u)).is_zero(1e-14));
    }
    // Zbar annihilates z = x + i y
    const Polynomial z = x + cplx(0, 1) * y;
    CHECK(apply_Zbar(z, c).is_zero());
    CHECK_FALSE(apply_Z(z, c).is_zero());
}

TEST_CASE("commutators") {
    const BoxGrid nodes = BoxGrid::cube(3, 2.0, 5);
    const auto t = Polynomial::variable(3, 2);
    const auto xyt = Polynomial::monomial({1, 1, 1});
    CHECK(commutator_check(0, 0, t, FieldConvention::hn(), nodes) == 0.0);
    CHECK(commutator_check(0, 0, xyt, FieldConvention::hn(), nodes) <= 1e-12);
    CHECK(commutator_check(0, 0, xyt, FieldConvention::h3(), nodes) <= 1e-12);
    // the H3 sign is the opposite one
    CHECK(FieldConvention::hn().commutator_sign() == -1.0);
    CHECK(FieldConvention::h3().commutator_sign() == 1.0);

    const BoxGrid nodes5 = BoxGrid::cube(5, 1.5, 3);
    for (const auto& u : monomials(5, 3)) {
        REQUIRE(commutator_check(0, 1, u, FieldConvention::hn(), nodes5) <= 1e-12);
        REQUIRE(commutator_check(1, 0, u, FieldConvention::hn(), nodes5) <= 1e-12);
        REQUIRE(commutator_check(1, 1, u, FieldConvention::hn(), nodes5) <= 1e-12);
        REQUIRE(commutator_check_XX(0, 1, u, FieldConvention::hn(), nodes5) <= 1e-12);
        REQUIRE(commutator_check_YY(0, 1, u, FieldConvention::hn(), nodes5) <= 1e-12);
    }
}

TEST_CASE("grid fields on polynomials") {
    const auto c = FieldConvention::hn();
    const BoxGrid g = BoxGrid::cube(3, 2.0, 17);
    const ScalarField one(g, 1.0);
    const auto x = Polynomial::variable(3, 0).sample(g);
    const auto t = Polynomial::variable(3, 2).sample(g);
    CHECK(max_interior(apply_X(0, one, c), ScalarField(g), 1.75) == 0.0);
    CHECK(max_interior(apply_X(0, x, c), one, 1.75) < 1e-13);
    CHECK(max_interior(apply_X(0, t, c), (2.0 * Polynomial::variable(3, 1)).sample(g), 1.75) < 1e-13);
    CHECK(max_interior(apply_Y(0, t, c), (-2.0 * Polynomial::variable(3, 0)).sample(g), 1.75) < 1e-13);
    CHECK(max_interior(apply_T(t, c), ScalarField(g, 4.0), 1.75) < 1e-13);

    const auto grad = horizontal_gradient(one, c);
    for (const auto& comp : grad.components) CHECK(max_interior(comp, ScalarField(g), 1.75) == 0.0);
    const auto gx = horizontal_gradient(x, c);
    CHECK(max_interior(gx.components[0], one, 1.75) < 1e-13);
    CHECK(max_interior(gx.components[1], ScalarField(g), 1.75) < 1e-13);

    HorizontalField<cplx> F{{x, ScalarField(g)}};
    CHECK(max_interior(horizontal_divergence(F, c), one, 1.75) < 1e-13);
    HorizontalField<cplx> Z{{ScalarField(g), ScalarField(g)}};
    CHECK(horizontal_divergence(Z, c).sup_norm() == 0.0);

    CHECK(max_interior(sublaplacian(one, c, LaplacianSign::Positive), ScalarField(g), 1.5) == 0.0);
    for (double p : {1.5, 2.0, 4.0}) CHECK(max_interior(p_sublaplacian(one, p, c).value, ScalarField(g), 1.5) == 0.0);
}

TEST_CASE("pointwise norm") {
    const BoxGrid g = BoxGrid::cube(3, 1.0, 5);
    const auto u = Polynomial::monomial({1, 0, 1}).sample(g);
    const auto F = horizontal_gradient(u, FieldConvention::hn());
    const auto N = pointwise_norm(F);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(N[i] >= 0.0);
        const bool zero = std::abs(F.components[0][i]) == 0.0 && std::abs(F.components[1][i]) == 0.0;
        CHECK((N[i] == 0.0) == zero);
    }
}

TEST_CASE("sublaplacian on a Gaussian") {
    const auto c = FieldConvention::hn();
    auto gauss = [](const std::vector<double>& q) { return cplx(std::exp(-0.5 * (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]))); };
    std::vector<double> gaps;
    for (std::size_t N : {31u, 61u}) {
        const BoxGrid g = BoxGrid::cube(3, 3.0, N);
        const auto u = ScalarField::sample(g, gauss);
        const auto a = sublaplacian(u, c, LaplacianSign::Positive);
        const auto b = sublaplacian_expanded(u, c, LaplacianSign::Positive);
        gaps.push_back(max_interior(a, b, 2.0));
        // divergence of the gradient is the geometer-sign sublaplacian
        const auto d = horizontal_divergence(horizontal_gradient(u, c), c);
        CHECK(max_interior(d, sublaplacian(u, c, LaplacianSign::Geometer), 3.0) < 1e-12);
        // p = 2 p-sublaplacian is the same operator
        CHECK(max_interior(p_sublaplacian(u, 2.0, 0.0, c).value, sublaplacian(u, c, LaplacianSign::Geometer), 3.0) == 0.0);
        // positivity of <Lu, u> for the real Gaussian
        cplx ip = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) ip += a[i] * std::conj(u[i]);
        CHECK(ip.real() > 0.0);
    }
    CHECK(gaps[0] / gaps[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("Z and Zbar") {
    const auto c = FieldConvention::hn();
    const BoxGrid g = BoxGrid::cube(3, 2.0, 9);
    const ScalarField one(g, 1.0);
    CHECK(max_interior(apply_Z(one, c), ScalarField(g), 1.5) == 0.0);
    CHECK(max_interior(apply_Zbar(one, c), ScalarField(g), 1.5) == 0.0);
}

TEST_CASE("twisted laplacian") {
    const double alpha = 0.7, tau = 1.3;
    std::vector<double> errs, ang;
    for (std::size_t N : {81u, 161u}) {
        const BoxGrid g = BoxGrid::cube(2, 4.0, N);
        CHECK(twisted_laplacian(ScalarField(g), tau).sup_norm() == 0.0);
        auto gauss = [&](const std::vector<double>& q) { return cplx(std::exp(-alpha * (q[0] * q[0] + q[1] * q[1]))); };
        const auto u = ScalarField::sample(g, gauss);
        const auto exact = ScalarField::sample(g, [&](const std::vector<double>& q) {
            const double r2 = q[0] * q[0] + q[1] * q[1];
            return (4 * alpha - 4 * alpha * alpha * r2 + 4 * tau * tau * r2) * gauss(q);
        });
        errs.push_back(max_interior(twisted_laplacian(u, tau, +1), exact, 3.5));
        // the angular term of a radial function is pure truncation error
        ang.push_back(max_interior(twisted_laplacian(u, tau, +1), twisted_laplacian(u, tau, -1), 4.0));
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(ang[0] / ang[1] == doctest::Approx(4.0).epsilon(0.1));

    // linearity, and tau -> -tau with conjugation
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N(0.0, 1.0);
    const BoxGrid g = BoxGrid::cube(2, 2.0, 21);
    ScalarField a(g), b(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        a[i] = {N(rng), N(rng)};
        b[i] = {N(rng), N(rng)};
    }
    const cplx s(0.3, -1.1);
    auto lin = twisted_laplacian(a + s * b, tau) - twisted_laplacian(a, tau) - s * twisted_laplacian(b, tau);
    CHECK(lin.sup_norm() < 1e-11);
    ScalarField ac = a;
    for (auto& v : ac.values()) v = std::conj(v);
    auto lhs = twisted_laplacian(ac, -tau);
    auto rhs = twisted_laplacian(a, tau);
    for (auto& v : rhs.values()) v = std::conj(v);
    CHECK((lhs - rhs).sup_norm() < 1e-12);
    CHECK_THROWS(twisted_laplacian(a, 0.0));
}

TEST_CASE("p-sublaplacian against the symbolic expansion") {
    const auto c = FieldConvention::hn();
    const Polynomial u = Polynomial::variable(3, 0) + Polynomial::monomial({0, 1, 1}) + 0.5 * Polynomial::monomial({2, 0, 0});
    const Polynomial Xu = X_oracle(u), Yu = Y_oracle(u);
    const Polynomial g2 = Xu * Xu + Yu * Yu;
    const Polynomial exact = X_oracle(g2 * Xu) + Y_oracle(g2 * Yu);
    std::vector<double> errs;
    for (std::size_t N : {21u, 41u}) {
        const BoxGrid g = BoxGrid::cube(3, 1.0, N);
        const auto r = p_sublaplacian(u.sample(g), 4.0, 0.0, c);
        errs.push_back(max_interior(r.value, exact.sample(g), 0.5));
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));
    CHECK_THROWS(p_sublaplacian(ScalarField(BoxGrid::cube(3, 1.0, 5)), 1.0, 0.0, c));
}

TEST_CASE("principal symbol") {
    CHECK(symbol_L(HeisPoint::h1(0, 0, 0), {1, 0, 0}) == 1.0);
    CHECK(symbol_L(HeisPoint::h1(0.4, -3, 2), {0, 0, 0}) == 0.0);
    CHECK(symbol_L(HeisPoint::h1(1, 2, 0), {4, -2, 1}) == 0.0);
    const auto k0 = null_covector(HeisPoint::h1(0, 0, 0), 1.0);
    CHECK(k0.xi == 0.0);
    CHECK(k0.eta == 0.0);
    CHECK(k0.gamma == 1.0);
    const auto k1 = null_covector(HeisPoint::h1(1, 2, 0), 1.0);
    CHECK(k1.xi == 4.0);
    CHECK(k1.eta == -2.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    for (int s = 0; s < 1000; ++s) {
        const auto pt = HeisPoint::h1(U(rng), U(rng), U(rng));
        double gam = U(rng);
        if (gam == 0.0) gam = 1.0;
        REQUIRE(symbol_L(pt, null_covector(pt, gam)) == 0.0);
    }
    CHECK_THROWS(null_covector(HeisPoint::h1(0, 0, 0), 0.0));
}

TEST_CASE("field container round trip") {
    const BoxGrid g({Axis{-1.0, 2.0, 5}, Axis{0.0, 1.0, 3}});
    ScalarField u(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = {0.1 * i, -0.3 * i * i};
    std::stringstream ss;
    write_field(ss, u);
    const auto v = read_field(ss);
    CHECK(v.grid() == g);
    CHECK(v.values() == u.values());

    RealField r(g);
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::sqrt(2.0) * i;
    std::stringstream sr;
    write_field(sr, r);
    const std::string bytes = sr.str();
    CHECK(bytes.substr(0, 7) == "HEISFLD");
    const auto back = read_real_field(sr);
    CHECK(back.values() == r.values());

    std::stringstream bad("NOTAFIELD");
    CHECK_THROWS(read_field(bad));
}
