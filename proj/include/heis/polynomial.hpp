#pragma once

#include <complex>
#include <map>
#include <vector>

#include "heis/grid.hpp"

namespace heis {

// Multivariate polynomial with complex coefficients; exponent vectors index
// the variables in grid-axis order.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(std::size_t vars) : vars_(vars) {}
    static Polynomial constant(std::size_t vars, cplx c);
    static Polynomial variable(std::size_t vars, std::size_t axis);
    static Polynomial monomial(const Exponents& e, cplx c = 1.0);

    std::size_t vars() const { return vars_; }
    const std::map<Exponents, cplx>& terms() const { return terms_; }
    int degree() const;
    bool is_zero(double tol = 0.0) const;

    void add_term(const Exponents& e, cplx c);
    Polynomial derivative(std::size_t axis) const;
    Polynomial times_variable(std::size_t axis) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(cplx s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    cplx operator()(const std::vector<double>& pt) const;
    ScalarField sample(const BoxGrid& g) const;
    // Largest |coefficient|.
    double max_coeff() const;

private:
    std::size_t vars_ = 0;
    std::map<Exponents, cplx> terms_;
};

}  // namespace heis
