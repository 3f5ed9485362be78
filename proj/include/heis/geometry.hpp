#pragma once

#include <cstddef>
#include <vector>

namespace heis {

// Point (x, y, t) of H_n; x and y hold n coordinates each.
struct HeisPoint {
    std::vector<double> x;
    std::vector<double> y;
    double t = 0.0;

    HeisPoint() = default;
    HeisPoint(std::vector<double> x_, std::vector<double> y_, double t_);
    static HeisPoint zero(std::size_t n);
    // H_1 shorthand.
    static HeisPoint h1(double x, double y, double t);

    std::size_t n() const { return x.size(); }
    double z_norm_sq() const;
    bool operator==(const HeisPoint&) const = default;
};

struct GroupParams {
    std::size_t n;
    std::size_t Q;
    explicit GroupParams(std::size_t n_);
};

HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b);
HeisPoint group_inv(const HeisPoint& a);
double koranyi_norm(const HeisPoint& a);
double koranyi_dist(const HeisPoint& a, const HeisPoint& b);
HeisPoint dilate(double s, const HeisPoint& a);
bool in_ball(const HeisPoint& center, double R, const HeisPoint& a);

// Largest componentwise difference; used by property checks.
double max_abs_diff(const HeisPoint& a, const HeisPoint& b);

}  // namespace heis
