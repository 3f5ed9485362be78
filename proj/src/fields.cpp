#include "heis/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace heis {

const char* variant_name(Variant v) { return v == Variant::Hn ? "Hn" : "H3"; }

namespace {

// Decomposes the grid into (outer, along, inner) blocks for an axis.
struct AxisLoop {
    std::size_t outer, count, inner;
    AxisLoop(const BoxGrid& g, std::size_t axis) : count(g.count(axis)), inner(g.stride(axis)) {
        outer = g.size() / (count * inner);
    }
};

void require_axis(const BoxGrid& g, std::size_t axis) {
    if (axis >= g.dim()) throw std::invalid_argument("axis out of range");
}

std::size_t t_axis(const BoxGrid& g) { return g.dim() - 1; }

}  // namespace

template <class T>
BasicField<T> partial(const BasicField<T>& u, std::size_t axis) {
    const BoxGrid& g = u.grid();
    require_axis(g, axis);
    BasicField<T> out(g);
    const AxisLoop L(g, axis);
    const double inv2h = 0.5 / g.spacing(axis);
    const auto& v = u.values();
    auto& o = out.values();
    for (std::size_t a = 0; a < L.outer; ++a)
        for (std::size_t i = 0; i < L.count; ++i) {
            const std::size_t base = (a * L.count + i) * L.inner;
            for (std::size_t b = 0; b < L.inner; ++b) {
                const std::size_t idx = base + b;
                const T fwd = (i + 1 < L.count) ? v[idx + L.inner] : T{};
                const T bwd = (i > 0) ? v[idx - L.inner] : T{};
                o[idx] = (fwd - bwd) * inv2h;
            }
        }
    return out;
}

template <class T>
BasicField<T> second_partial(const BasicField<T>& u, std::size_t axis) {
    const BoxGrid& g = u.grid();
    require_axis(g, axis);
    BasicField<T> out(g);
    const AxisLoop L(g, axis);
    const double h = g.spacing(axis);
    const double inv_h2 = 1.0 / (h * h);
    const auto& v = u.values();
    auto& o = out.values();
    for (std::size_t a = 0; a < L.outer; ++a)
        for (std::size_t i = 0; i < L.count; ++i) {
            const std::size_t base = (a * L.count + i) * L.inner;
            for (std::size_t b = 0; b < L.inner; ++b) {
                const std::size_t idx = base + b;
                const T fwd = (i + 1 < L.count) ? v[idx + L.inner] : T{};
                const T bwd = (i > 0) ? v[idx - L.inner] : T{};
                o[idx] = (fwd - 2.0 * v[idx] + bwd) * inv_h2;
            }
        }
    return out;
}

template <class T>
BasicField<T> times_coord(const BasicField<T>& u, std::size_t axis) {
    const BoxGrid& g = u.grid();
    require_axis(g, axis);
    BasicField<T> out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = u[i] * g.coord(i, axis);
    return out;
}

template <class T>
BasicField<T> apply_X(std::size_t j, const BasicField<T>& u, const FieldConvention& c) {
    const std::size_t n = heisenberg_n(u.grid());
    if (j >= n) throw std::invalid_argument("apply_X: index j out of range");
    BasicField<T> out = partial(u, j);
    BasicField<T> dt = times_coord(partial(u, t_axis(u.grid())), n + j);
    dt *= T(c.twist());
    return out += dt;
}

template <class T>
BasicField<T> apply_Y(std::size_t j, const BasicField<T>& u, const FieldConvention& c) {
    const std::size_t n = heisenberg_n(u.grid());
    if (j >= n) throw std::invalid_argument("apply_Y: index j out of range");
    BasicField<T> out = partial(u, n + j);
    BasicField<T> dt = times_coord(partial(u, t_axis(u.grid())), j);
    dt *= T(-c.twist());
    return out += dt;
}

template <class T>
BasicField<T> apply_T(const BasicField<T>& u, const FieldConvention& c) {
    heisenberg_n(u.grid());
    BasicField<T> out = partial(u, t_axis(u.grid()));
    out *= T(c.vertical_scale);
    return out;
}

// Polynomial mode.

namespace {

std::size_t poly_n(const Polynomial& u) {
    if (u.vars() < 3 || u.vars() % 2 == 0)
        throw std::invalid_argument("polynomial must live on a (2n+1)-dimensional space");
    return (u.vars() - 1) / 2;
}

}  // namespace

Polynomial apply_X(std::size_t j, const Polynomial& u, const FieldConvention& c) {
    const std::size_t n = poly_n(u);
    if (j >= n) throw std::invalid_argument("apply_X: index j out of range");
    return u.derivative(j) + cplx(c.twist()) * u.derivative(2 * n).times_variable(n + j);
}

Polynomial apply_Y(std::size_t j, const Polynomial& u, const FieldConvention& c) {
    const std::size_t n = poly_n(u);
    if (j >= n) throw std::invalid_argument("apply_Y: index j out of range");
    return u.derivative(n + j) + cplx(-c.twist()) * u.derivative(2 * n).times_variable(j);
}

Polynomial apply_T(const Polynomial& u, const FieldConvention& c) {
    const std::size_t n = poly_n(u);
    return cplx(c.vertical_scale) * u.derivative(2 * n);
}

Polynomial apply_Z(const Polynomial& u, const FieldConvention& c) {
    if (poly_n(u) != 1) throw std::invalid_argument("apply_Z: defined on H_1 only");
    return apply_X(0, u, c) - cplx(0.0, 1.0) * apply_Y(0, u, c);
}

Polynomial apply_Zbar(const Polynomial& u, const FieldConvention& c) {
    if (poly_n(u) != 1) throw std::invalid_argument("apply_Zbar: defined on H_1 only");
    return apply_X(0, u, c) + cplx(0.0, 1.0) * apply_Y(0, u, c);
}

namespace {

double max_over_nodes(const Polynomial& p, const BoxGrid& nodes) {
    if (nodes.dim() != p.vars()) throw std::invalid_argument("node grid dimension mismatch");
    double m = 0.0;
    std::vector<double> pt(nodes.dim());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t a = 0; a < nodes.dim(); ++a) pt[a] = nodes.coord(i, a);
        m = std::max(m, std::abs(p(pt)));
    }
    return m;
}

}  // namespace

double commutator_check(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                        const BoxGrid& nodes) {
    Polynomial lhs = apply_X(j, apply_Y(k, u, c), c) - apply_Y(k, apply_X(j, u, c), c);
    if (j == k) lhs -= cplx(c.commutator_sign()) * apply_T(u, c);
    return max_over_nodes(lhs, nodes);
}

double commutator_check_XX(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                           const BoxGrid& nodes) {
    return max_over_nodes(apply_X(j, apply_X(k, u, c), c) - apply_X(k, apply_X(j, u, c), c), nodes);
}

double commutator_check_YY(std::size_t j, std::size_t k, const Polynomial& u, const FieldConvention& c,
                           const BoxGrid& nodes) {
    return max_over_nodes(apply_Y(j, apply_Y(k, u, c), c) - apply_Y(k, apply_Y(j, u, c), c), nodes);
}

template <class T>
HorizontalField<T> horizontal_gradient(const BasicField<T>& u, const FieldConvention& c) {
    const std::size_t n = heisenberg_n(u.grid());
    HorizontalField<T> F;
    F.components.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) F.components.push_back(apply_X(j, u, c));
    for (std::size_t j = 0; j < n; ++j) F.components.push_back(apply_Y(j, u, c));
    return F;
}

template <class T>
BasicField<T> horizontal_divergence(const HorizontalField<T>& F, const FieldConvention& c) {
    if (F.components.empty() || F.components.size() % 2 != 0)
        throw std::invalid_argument("horizontal field needs 2n components");
    const BoxGrid& g = F.components[0].grid();
    for (const auto& comp : F.components)
        if (!(comp.grid() == g)) throw std::invalid_argument("horizontal field components on different grids");
    const std::size_t n = heisenberg_n(g);
    if (F.n() != n) throw std::invalid_argument("horizontal field has wrong number of components");
    BasicField<T> out(g);
    for (std::size_t j = 0; j < n; ++j) {
        out += apply_X(j, F.components[j], c);
        out += apply_Y(j, F.components[n + j], c);
    }
    return out;
}

template <class T>
RealField pointwise_norm(const HorizontalField<T>& F) {
    RealField out(F.components.at(0).grid());
    for (const auto& comp : F.components)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += std::norm(comp[i]);
    for (auto& v : out.values()) v = std::sqrt(v);
    return out;
}

template <class T>
BasicField<T> sublaplacian(const BasicField<T>& u, const FieldConvention& c, LaplacianSign s) {
    const std::size_t n = heisenberg_n(u.grid());
    BasicField<T> out(u.grid());
    for (std::size_t j = 0; j < n; ++j) {
        out += apply_X(j, apply_X(j, u, c), c);
        out += apply_Y(j, apply_Y(j, u, c), c);
    }
    if (s == LaplacianSign::Positive) out *= T(-1.0);
    return out;
}

template <class T>
BasicField<T> sublaplacian_expanded(const BasicField<T>& u, const FieldConvention& c, LaplacianSign s) {
    const BoxGrid& g = u.grid();
    const std::size_t n = heisenberg_n(g);
    const std::size_t ta = t_axis(g);
    const double tw = c.twist();
    BasicField<T> out(g);
    const BasicField<T> ut = partial(u, ta);
    const BasicField<T> utt = second_partial(u, ta);
    for (std::size_t j = 0; j < n; ++j) {
        out += second_partial(u, j);
        out += second_partial(u, n + j);
        BasicField<T> mixed_x = times_coord(partial(ut, j), n + j);
        BasicField<T> mixed_y = times_coord(partial(ut, n + j), j);
        mixed_x -= mixed_y;
        mixed_x *= T(2.0 * tw);
        out += mixed_x;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        double z2 = 0.0;
        for (std::size_t a = 0; a < 2 * n; ++a) {
            const double x = g.coord(i, a);
            z2 += x * x;
        }
        out[i] += tw * tw * z2 * utt[i];
    }
    if (s == LaplacianSign::Positive) out *= T(-1.0);
    return out;
}

ScalarField apply_Z(const ScalarField& u, const FieldConvention& c) {
    if (heisenberg_n(u.grid()) != 1) throw std::invalid_argument("apply_Z: defined on H_1 only");
    const BoxGrid& g = u.grid();
    const ScalarField ux = partial(u, 0), uy = partial(u, 1), ut = partial(u, 2);
    const cplx I(0.0, 1.0);
    ScalarField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx zbar(g.coord(i, 0), -g.coord(i, 1));
        out[i] = ux[i] - I * uy[i] + I * c.twist() * zbar * ut[i];
    }
    return out;
}

ScalarField apply_Zbar(const ScalarField& u, const FieldConvention& c) {
    if (heisenberg_n(u.grid()) != 1) throw std::invalid_argument("apply_Zbar: defined on H_1 only");
    const BoxGrid& g = u.grid();
    const ScalarField ux = partial(u, 0), uy = partial(u, 1), ut = partial(u, 2);
    const cplx I(0.0, 1.0);
    ScalarField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx z(g.coord(i, 0), g.coord(i, 1));
        out[i] = ux[i] + I * uy[i] - I * c.twist() * z * ut[i];
    }
    return out;
}

ScalarField hans_lewy_form(const ScalarField& u, const FieldConvention& c) {
    ScalarField out = apply_Z(apply_Zbar(u, c), c);
    out += apply_Zbar(apply_Z(u, c), c);
    out *= cplx(-0.5);
    return out;
}

ScalarField twisted_laplacian(const ScalarField& u, double tau, int angular_sign) {
    if (tau == 0.0) throw std::invalid_argument("twisted_laplacian: tau must be nonzero");
    if (u.dim() != 2) throw std::invalid_argument("twisted_laplacian: expects a 2-d field");
    if (angular_sign != 1 && angular_sign != -1) throw std::invalid_argument("angular_sign must be +1 or -1");
    const BoxGrid& g = u.grid();
    const ScalarField d1 = partial(u, 0), d2 = partial(u, 1);
    const ScalarField l1 = second_partial(u, 0), l2 = second_partial(u, 1);
    const cplx ang(0.0, 4.0 * tau * angular_sign);
    ScalarField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double y1 = g.coord(i, 0), y2 = g.coord(i, 1);
        out[i] = -(l1[i] + l2[i]) + 4.0 * tau * tau * (y1 * y1 + y2 * y2) * u[i] + ang * (y1 * d2[i] - y2 * d1[i]);
    }
    return out;
}

template <class T>
PLaplacianResult<T> p_sublaplacian(const BasicField<T>& u, double p, double eps_reg, const FieldConvention& c) {
    if (!(p > 1.0)) throw std::invalid_argument("p_sublaplacian: p must exceed 1");
    if (eps_reg < 0.0) throw std::invalid_argument("p_sublaplacian: eps_reg must be nonnegative");
    HorizontalField<T> F = horizontal_gradient(u, c);
    PLaplacianResult<T> res;
    const std::size_t N = u.size();
    for (std::size_t i = 0; i < N; ++i) {
        double g2 = 0.0;
        for (const auto& comp : F.components) g2 += std::norm(comp[i]);
        double w = 1.0;
        if (p != 2.0) {
            const double base = g2 + eps_reg;
            if (base == 0.0) {
                if (p < 2.0) res.singular_nodes.push_back(i);
                w = 0.0;
            } else {
                w = std::pow(base, 0.5 * (p - 2.0));
            }
        }
        for (auto& comp : F.components) comp[i] *= w;
    }
    res.value = horizontal_divergence(F, c);
    return res;
}

double symbol_L(const HeisPoint& pt, const Covector& k) {
    if (pt.n() != 1) throw std::invalid_argument("symbol_L: defined on H_1 (H3 coordinates)");
    const double a = k.xi - 2.0 * pt.y[0] * k.gamma;
    const double b = k.eta + 2.0 * pt.x[0] * k.gamma;
    return a * a + b * b;
}

Covector null_covector(const HeisPoint& pt, double gamma) {
    if (gamma == 0.0) throw std::invalid_argument("null_covector: gamma must be nonzero");
    if (pt.n() != 1) throw std::invalid_argument("null_covector: defined on H_1 (H3 coordinates)");
    return {2.0 * pt.y[0] * gamma, -2.0 * pt.x[0] * gamma, gamma};
}

#define HEIS_INSTANTIATE(T)                                                                              \
    template BasicField<T> partial(const BasicField<T>&, std::size_t);                                  \
    template BasicField<T> second_partial(const BasicField<T>&, std::size_t);                           \
    template BasicField<T> times_coord(const BasicField<T>&, std::size_t);                              \
    template BasicField<T> apply_X(std::size_t, const BasicField<T>&, const FieldConvention&);          \
    template BasicField<T> apply_Y(std::size_t, const BasicField<T>&, const FieldConvention&);          \
    template BasicField<T> apply_T(const BasicField<T>&, const FieldConvention&);                       \
    template HorizontalField<T> horizontal_gradient(const BasicField<T>&, const FieldConvention&);      \
    template BasicField<T> horizontal_divergence(const HorizontalField<T>&, const FieldConvention&);    \
    template RealField pointwise_norm(const HorizontalField<T>&);                                       \
    template BasicField<T> sublaplacian(const BasicField<T>&, const FieldConvention&, LaplacianSign);   \
    template BasicField<T> sublaplacian_expanded(const BasicField<T>&, const FieldConvention&,          \
                                                 LaplacianSign);                                        \
    template PLaplacianResult<T> p_sublaplacian(const BasicField<T>&, double, double, const FieldConvention&);

HEIS_INSTANTIATE(double)
HEIS_INSTANTIATE(cplx)

#undef HEIS_INSTANTIATE

}  // namespace heis
