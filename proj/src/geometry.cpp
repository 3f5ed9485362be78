#include "heis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

HeisPoint::HeisPoint(std::vector<double> x_, std::vector<double> y_, double t_)
    : x(std::move(x_)), y(std::move(y_)), t(t_) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("HeisPoint: x and y must both have n >= 1 entries");
}

HeisPoint HeisPoint::zero(std::size_t n) {
    if (n == 0) throw std::invalid_argument("HeisPoint: n must be >= 1");
    return HeisPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0);
}

HeisPoint HeisPoint::h1(double x, double y, double t) { return HeisPoint({x}, {y}, t); }

double HeisPoint::z_norm_sq() const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] + y[i] * y[i];
    return s;
}

GroupParams::GroupParams(std::size_t n_) : n(n_), Q(2 * n_ + 2) {
    if (n_ == 0) throw std::invalid_argument("GroupParams: n must be >= 1");
}

static void require_same_n(const HeisPoint& a, const HeisPoint& b) {
    if (a.n() != b.n() || a.x.size() != a.y.size() || b.x.size() != b.y.size())
        throw std::invalid_argument("Heisenberg points of different dimension");
}

HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b) {
    require_same_n(a, b);
    HeisPoint r = a;
    double twist = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i) {
        r.x[i] += b.x[i];
        r.y[i] += b.y[i];
        twist += a.y[i] * b.x[i] - a.x[i] * b.y[i];
    }
    r.t = a.t + b.t + 2.0 * twist;
    return r;
}

HeisPoint group_inv(const HeisPoint& a) {
    HeisPoint r = a;
    for (auto& v : r.x) v = -v;
    for (auto& v : r.y) v = -v;
    r.t = -r.t;
    return r;
}

double koranyi_norm(const HeisPoint& a) {
    const double z2 = a.z_norm_sq();
    return std::pow(z2 * z2 + a.t * a.t, 0.25);
}

double koranyi_dist(const HeisPoint& a, const HeisPoint& b) {
    return koranyi_norm(group_mul(group_inv(a), b));
}

HeisPoint dilate(double s, const HeisPoint& a) {
    if (!(s > 0.0)) throw std::invalid_argument("dilate: s must be positive");
    HeisPoint r = a;
    for (auto& v : r.x) v *= s;
    for (auto& v : r.y) v *= s;
    r.t *= s * s;
    return r;
}

bool in_ball(const HeisPoint& center, double R, const HeisPoint& a) {
    if (!(R > 0.0)) throw std::invalid_argument("in_ball: radius must be positive");
    return koranyi_dist(a, center) < R;
}

double max_abs_diff(const HeisPoint& a, const HeisPoint& b) {
    require_same_n(a, b);
    double m = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.n(); ++i) {
        m = std::max(m, std::abs(a.x[i] - b.x[i]));
        m = std::max(m, std::abs(a.y[i] - b.y[i]));
    }
    return m;
}

}  // namespace heis
