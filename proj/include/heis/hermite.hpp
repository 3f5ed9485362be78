#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "heis/grid.hpp"

namespace heis {

// Physicists' Hermite polynomial by the three-term recurrence.
double hermite_poly(unsigned k, double x);
// L^2-normalized Hermite function by the normalized recurrence.
double hermite_fn(unsigned k, double x);
// |tau|^(1/4) e_k(sqrt|tau| x).
double hermite_fn_scaled(unsigned k, double tau, double x);
// e_0..e_kmax at x in one pass.
void hermite_fn_all(unsigned kmax, double x, std::vector<double>& out);

using Profile1D = std::function<cplx(double)>;

// Trapezoid rule on [-half_width, half_width] with `nodes` points.
struct Quadrature1D {
    double half_width = 10.0;
    std::size_t nodes = 513;
    double spacing() const { return 2.0 * half_width / static_cast<double>(nodes - 1); }
    double node(std::size_t i) const { return -half_width + spacing() * static_cast<double>(i); }
};

class QuadratureTailError : public std::runtime_error {
public:
    QuadratureTailError(const std::string& what, double tail) : std::runtime_error(what), tail_(tail) {}
    double tail() const { return tail_; }

private:
    double tail_;
};

inline constexpr double kTailTolerance = 1e-14;

// (1/sqrt(2 pi)) int e^{-i x xi} f(x) dx at each xi; `tail` receives the
// boundary integrand magnitude.
std::vector<cplx> fourier_transform_1d(const Profile1D& f, const std::vector<double>& xi, const Quadrature1D& q,
                                       double* tail = nullptr);

// Printed: f(y - 2p) conj g(y + 2p). Symmetric: f(y - p/2) conj g(y + p/2).
enum class WignerShift { Printed, Symmetric };
double wigner_shift_factor(WignerShift s);
const char* wigner_shift_name(WignerShift s);

// (1/sqrt(2 pi)) |tau|^(1/2) int e^{i tau q y} f(y - cp) conj g(y + cp) dy.
cplx fourier_wigner(const Profile1D& f, const Profile1D& g, double tau, double q, double p, const Quadrature1D& quad,
                    WignerShift shift = WignerShift::Printed, double* tail = nullptr);

struct WignerSpec {
    unsigned j = 0, k = 0;
    double tau = 1.0;
    double L = 10.0;
    std::size_t N = 513;
    WignerShift shift = WignerShift::Printed;

    // Validates tau, N and the tail at +-L.
    WignerSpec(unsigned j_, unsigned k_, double tau_, WignerShift shift_ = WignerShift::Printed, double L_ = 0.0,
               std::size_t N_ = 513);
    static double default_half_width(double tau);
    Quadrature1D quadrature() const { return {L, N}; }
};

// e_{j,k,tau}(q, p) = V_tau(e_{j,tau}, e_{k,tau})(q, p).
cplx special_hermite(const WignerSpec& spec, double q, double p);
// Tabulates e_{j,k,tau}(s q, s p) on a 2-d grid (axis 0 = q, axis 1 = p).
ScalarField tabulate_special_hermite(const WignerSpec& spec, const BoxGrid& g, double arg_scale = 1.0,
                                     double* max_tail = nullptr);

}  // namespace heis
