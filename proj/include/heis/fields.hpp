#pragma once

#include <array>
#include <vector>

#include "heis/geometry.hpp"
#include "heis/grid.hpp"
#include "heis/polynomial.hpp"

namespace heis {

enum class Variant { H3, Hn };

// H3: X = d_x - 2y d_t, Y = d_y + 2x d_t   ([X,Y] = +T)
// Hn: X_j = d_xj + 2y_j d_t, Y_j = d_yj - 2x_j d_t   ([X_j,Y_j] = -T)
struct FieldConvention {
    Variant variant = Variant::Hn;
    double vertical_scale = 4.0;  // T = vertical_scale * d_t

    static FieldConvention hn() { return {Variant::Hn, 4.0}; }
    static FieldConvention h3() { return {Variant::H3, 4.0}; }
    // c in X_j = d_xj + c y_j d_t, Y_j = d_yj - c x_j d_t.
    double twist() const { return variant == Variant::Hn ? 2.0 : -2.0; }
    // s with [X_j, Y_j] = s T.
    double commutator_sign() const { return -2.0 * twist() / vertical_scale; }
};

const char* variant_name(Variant v);

enum class LaplacianSign { Positive, Geometer };

template <class T>
struct HorizontalField {
    std::vector<BasicField<T>> components;  // X_1..X_n then Y_1..Y_n coefficients
    std::size_t n() const { return components.size() / 2; }
};

// Finite-difference building blocks: centred first differences and compact
// second differences, zero ghost values outside the box.
template <class T> BasicField<T> partial(const BasicField<T>& u, std::size_t axis);
template <class T> BasicField<T> second_partial(const BasicField<T>& u, std::size_t axis);
// Pointwise product with the coordinate along `axis`.
template <class T> BasicField<T> times_coord(const BasicField<T>& u, std::size_t axis);

template <class T> BasicField<T> apply_X(std::size_t j, const BasicField<T>& u, const FieldConvention& c);
template <class T> BasicField<T> apply_Y(std::size_t j, const BasicField<T>& u, const FieldConvention& c);
template <class T> BasicField<T> apply_T(const BasicField<T>& u, const FieldConvention& c);

// Exact-derivative (polynomial) mode; variables ordered x_1..x_n, y_1..y_n, t.
Polynomial apply_X(std::size_t j, const Polynomial& u, const FieldConvention& c);
Polynomial apply_Y(std::size_t j, const Polynomial& u, const FieldConvention& c);
Polynomial apply_T(const Polynomial& u, const FieldConvention& c);
Polynomial apply_Z(const Polynomial& u, const FieldConvention& c);
Polynomial apply_Zbar(const Polynomial& u, const FieldConvention& c);

// max over grid nodes of |[X_j,Y_k]u - s delta_jk T u|, s the convention's sign.
double commutator_check(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                        const BoxGrid& nodes);
// Same for [X_j,X_k] and [Y_j,Y_k], which vanish.
double commutator_check_XX(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                           const BoxGrid& nodes);
double commutator_check_YY(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                           const BoxGrid& nodes);

template <class T> HorizontalField<T> horizontal_gradient(const BasicField<T>& u, const FieldConvention& c);
template <class T> BasicField<T> horizontal_divergence(const HorizontalField<T>& F, const FieldConvention& c);
template <class T> RealField pointwise_norm(const HorizontalField<T>& F);

// Composition of the first-order stencils: -(sum X_j^2 + Y_j^2) for Positive.
template <class T> BasicField<T> sublaplacian(const BasicField<T>& u, const FieldConvention& c, LaplacianSign s);
// Expanded second-order form with compact stencils:
// sum (d_xx + d_yy) + 2c(y d_x - x d_y) d_t + c^2 |z|^2 d_tt.
template <class T>
BasicField<T> sublaplacian_expanded(const BasicField<T>& u, const FieldConvention& c, LaplacianSign s);

// Z = X - iY = d_z + i c zbar d_t, Zbar = X + iY (n = 1, d_z = d_x - i d_y).
ScalarField apply_Z(const ScalarField& u, const FieldConvention& c);
ScalarField apply_Zbar(const ScalarField& u, const FieldConvention& c);
// -1/2 (Z Zbar + Zbar Z) u.
ScalarField hans_lewy_form(const ScalarField& u, const FieldConvention& c);

// -Laplacian + 4 tau^2 |y|^2 + 4 i tau s (y1 d_2 - y2 d_1) on a 2-d grid.
ScalarField twisted_laplacian(const ScalarField& u, double tau, int angular_sign = +1);

template <class T>
struct PLaplacianResult {
    BasicField<T> value;
    std::vector<std::size_t> singular_nodes;
};

// div_H((|D_H u|^2 + eps)^((p-2)/2) D_H u).
template <class T>
PLaplacianResult<T> p_sublaplacian(const BasicField<T>& u, double p, double eps_reg, const FieldConvention& c);

struct Covector {
    double xi = 0.0, eta = 0.0, gamma = 0.0;
};

// Principal symbol in H3 coordinates: (xi - 2y gamma)^2 + (eta + 2x gamma)^2.
double symbol_L(const HeisPoint& pt, const Covector& k);
Covector null_covector(const HeisPoint& pt, double gamma);

}  // namespace heis

namespace heis {

// Default regularization: 1e-12 for p < 2, none otherwise.
template <class T>
PLaplacianResult<T> p_sublaplacian(const BasicField<T>& u, double p, const FieldConvention& c) {
    return p_sublaplacian(u, p, p < 2.0 ? 1e-12 : 0.0, c);
}

}  // namespace heis
