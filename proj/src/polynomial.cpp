#include "heis/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace heis {

Polynomial Polynomial::constant(std::size_t vars, cplx c) {
    Polynomial p(vars);
    p.add_term(Exponents(vars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t vars, std::size_t axis) {
    Exponents e(vars, 0);
    e.at(axis) = 1;
    return monomial(e);
}

Polynomial Polynomial::monomial(const Exponents& e, cplx c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

bool Polynomial::is_zero(double tol) const { return max_coeff() <= tol; }

void Polynomial::add_term(const Exponents& e, cplx c) {
    if (e.size() != vars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
    if (c == cplx(0.0)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(std::size_t axis) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        Exponents d = e;
        d[axis] -= 1;
        out.add_term(d, c * static_cast<double>(e[axis]));
    }
    return out;
}

Polynomial Polynomial::times_variable(std::size_t axis) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        d[axis] += 1;
        out.add_term(d, c);
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
    if (s == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    Polynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Polynomial::Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

cplx Polynomial::operator()(const std::vector<double>& pt) const {
    if (pt.size() != vars_) throw std::invalid_argument("Polynomial: point dimension mismatch");
    cplx s = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = 1.0;
        for (std::size_t i = 0; i < vars_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= pt[i];
        s += c * m;
    }
    return s;
}

ScalarField Polynomial::sample(const BoxGrid& g) const {
    if (g.dim() != vars_) throw std::invalid_argument("Polynomial: grid dimension mismatch");
    return ScalarField::sample(g, [this](const std::vector<double>& c) { return (*this)(c); });
}

double Polynomial::max_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace heis
