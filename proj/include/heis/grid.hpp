#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heis {

using cplx = std::complex<double>;

struct Axis {
    double lower = -1.0;
    double upper = 1.0;
    std::size_t count = 3;

    double spacing() const { return (upper - lower) / static_cast<double>(count - 1); }
    double coord(std::size_t i) const { return lower + spacing() * static_cast<double>(i); }
    bool operator==(const Axis&) const = default;
};

// Uniform tensor grid; row-major with the last axis fastest.
class BoxGrid {
public:
    BoxGrid() = default;
    explicit BoxGrid(std::vector<Axis> axes);
    // Symmetric box [-half, half]^dim with `count` nodes per axis.
    static BoxGrid cube(std::size_t dim, double half, std::size_t count);

    std::size_t dim() const { return axes_.size(); }
    std::size_t size() const { return size_; }
    const Axis& axis(std::size_t a) const { return axes_.at(a); }
    const std::vector<Axis>& axes() const { return axes_; }
    double spacing(std::size_t a) const { return axes_[a].spacing(); }
    std::size_t stride(std::size_t a) const { return strides_[a]; }
    std::size_t count(std::size_t a) const { return axes_[a].count; }

    // Index along axis a of the node with linear index idx.
    std::size_t index_along(std::size_t idx, std::size_t a) const {
        return (idx / strides_[a]) % axes_[a].count;
    }
    double coord(std::size_t idx, std::size_t a) const { return axes_[a].coord(index_along(idx, a)); }
    bool on_boundary(std::size_t idx) const;
    // Product of spacings.
    double cell_volume() const;

    bool operator==(const BoxGrid& o) const { return axes_ == o.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

template <class T>
class BasicField {
public:
    using value_type = T;

    BasicField() = default;
    explicit BasicField(BoxGrid g, T fill = T{}) : grid_(std::move(g)), values_(grid_.size(), fill) {}
    BasicField(BoxGrid g, std::vector<T> v) : grid_(std::move(g)), values_(std::move(v)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("field value count does not match grid size");
    }

    // Samples f(coords) at every node; coords has grid.dim() entries.
    template <class F>
    static BasicField sample(const BoxGrid& g, F&& f) {
        BasicField out(g);
        std::vector<double> c(g.dim());
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t a = 0; a < g.dim(); ++a) c[a] = g.coord(i, a);
            out.values_[i] = f(c);
        }
        return out;
    }

    const BoxGrid& grid() const { return grid_; }
    std::size_t dim() const { return grid_.dim(); }
    std::size_t size() const { return values_.size(); }
    std::vector<T>& values() { return values_; }
    const std::vector<T>& values() const { return values_; }
    T& operator[](std::size_t i) { return values_[i]; }
    const T& operator[](std::size_t i) const { return values_[i]; }

    BasicField& operator+=(const BasicField& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    BasicField& operator-=(const BasicField& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    BasicField& operator*=(T s) {
        for (auto& v : values_) v *= s;
        return *this;
    }
    friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
    friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
    friend BasicField operator*(T s, BasicField a) { return a *= s; }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }
    // Riemann-sum L^p norm (cell volume weights).
    double lp_norm(double p) const;

    void check_same(const BasicField& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("fields live on different grids");
    }

private:
    BoxGrid grid_;
    std::vector<T> values_;
};

using ScalarField = BasicField<cplx>;
using RealField = BasicField<double>;

ScalarField to_complex(const RealField& f);
RealField real_part(const ScalarField& f);

// n of H_n for a (2n+1)-dimensional grid; throws otherwise.
std::size_t heisenberg_n(const BoxGrid& g);

}  // namespace heis
