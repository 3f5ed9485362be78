#include "heis/grid.hpp"

#include <cmath>

namespace heis {

BoxGrid::BoxGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("BoxGrid: need at least one axis");
    for (const auto& a : axes_) {
        if (a.count < 3) throw std::invalid_argument("BoxGrid: grid too small (< 3 nodes per axis)");
        if (a.count % 2 == 0) throw std::invalid_argument("BoxGrid: node counts must be odd");
        if (!(a.upper > a.lower)) throw std::invalid_argument("BoxGrid: upper bound must exceed lower bound");
    }
    strides_.assign(axes_.size(), 1);
    for (std::size_t a = axes_.size() - 1; a > 0; --a) strides_[a - 1] = strides_[a] * axes_[a].count;
    size_ = strides_[0] * axes_[0].count;
}

BoxGrid BoxGrid::cube(std::size_t dim, double half, std::size_t count) {
    return BoxGrid(std::vector<Axis>(dim, Axis{-half, half, count}));
}

bool BoxGrid::on_boundary(std::size_t idx) const {
    for (std::size_t a = 0; a < dim(); ++a) {
        const std::size_t i = index_along(idx, a);
        if (i == 0 || i + 1 == axes_[a].count) return true;
    }
    return false;
}

double BoxGrid::cell_volume() const {
    double v = 1.0;
    for (const auto& a : axes_) v *= a.spacing();
    return v;
}

template <class T>
double BasicField<T>::lp_norm(double p) const {
    double s = 0.0;
    for (const auto& v : values_) s += std::pow(std::abs(v), p);
    return std::pow(s * grid_.cell_volume(), 1.0 / p);
}

template class BasicField<double>;
template class BasicField<cplx>;

ScalarField to_complex(const RealField& f) {
    ScalarField out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    return out;
}

RealField real_part(const ScalarField& f) {
    RealField out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
    return out;
}

std::size_t heisenberg_n(const BoxGrid& g) {
    if (g.dim() < 3 || g.dim() % 2 == 0)
        throw std::invalid_argument("expected a (2n+1)-dimensional grid");
    return (g.dim() - 1) / 2;
}

}  // namespace heis
