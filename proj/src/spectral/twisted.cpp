#include "heis/spectral/twisted.hpp"

#include <cmath>
#include <stdexcept>

namespace heis::spectral {

TwistedOperator assemble_twisted(double tau, const BoxGrid& grid, int angular_sign) {
    if (tau == 0.0) throw std::invalid_argument("assemble_twisted: tau must be nonzero");
    if (grid.dim() != 2) throw std::invalid_argument("assemble_twisted: expects a 2-d grid");
    if (angular_sign != 1 && angular_sign != -1) throw std::invalid_argument("angular_sign must be +1 or -1");
    for (const auto& a : grid.axes())
        if (std::abs(a.lower + a.upper) > 1e-12 * std::max(1.0, std::abs(a.upper)))
            throw std::invalid_argument("assemble_twisted: box must be symmetric about the origin");
    TwistedOperator op;
    op.grid = grid;
    op.tau = tau;
    op.angular_sign = angular_sign;
    if (grid.count(0) < 33 || grid.count(1) < 33)
        op.warnings.push_back("grid coarser than 33 nodes per axis; spectrum is resolution-limited");

    const std::size_t n1 = grid.count(0), n2 = grid.count(1);
    const double h1 = grid.spacing(0), h2 = grid.spacing(1);
    const cplx ang(0.0, 4.0 * tau * angular_sign);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(grid.size() * 5);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            const std::size_t r = i * n2 + j;
            const double y1 = grid.axis(0).coord(i), y2 = grid.axis(1).coord(j);
            const double diag = 2.0 / (h1 * h1) + 2.0 / (h2 * h2) + 4.0 * tau * tau * (y1 * y1 + y2 * y2);
            trip.emplace_back(r, r, diag);
            // d_1 couples along axis 0 with coefficient -ang*y2, d_2 along axis 1 with ang*y1.
            if (i + 1 < n1) trip.emplace_back(r, r + n2, -1.0 / (h1 * h1) - ang * y2 / (2.0 * h1));
            if (i > 0) trip.emplace_back(r, r - n2, -1.0 / (h1 * h1) + ang * y2 / (2.0 * h1));
            if (j + 1 < n2) trip.emplace_back(r, r + 1, -1.0 / (h2 * h2) + ang * y1 / (2.0 * h2));
            if (j > 0) trip.emplace_back(r, r - 1, -1.0 / (h2 * h2) - ang * y1 / (2.0 * h2));
        }
    SparseC A(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(grid.size()));
    A.setFromTriplets(trip.begin(), trip.end());
    SparseC Ah = SparseC(A.adjoint());
    op.matrix = 0.5 * (A + Ah);
    op.matrix.makeCompressed();
    op.hermiticity = hermiticity_deviation(op.matrix);
    return op;
}

Eigen::VectorXcd to_vector(const ScalarField& f) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) v[static_cast<Eigen::Index>(i)] = f[i];
    return v;
}

ScalarField to_field(const BoxGrid& g, const Eigen::VectorXcd& v) {
    if (static_cast<std::size_t>(v.size()) != g.size()) throw std::invalid_argument("vector length does not match grid");
    ScalarField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = v[static_cast<Eigen::Index>(i)];
    return f;
}

double second_moment(const BoxGrid& g, const Eigen::VectorXcd& v) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double z2 = 0.0;
        for (std::size_t a = 0; a < g.dim(); ++a) z2 += g.coord(i, a) * g.coord(i, a);
        const double w = std::norm(v[static_cast<Eigen::Index>(i)]);
        num += w * z2;
        den += w;
    }
    return num / den;
}

}  // namespace heis::spectral
