#pragma once

#include <string>
#include <utility>
#include <vector>

#include "valgen/field.hpp"

namespace valgen {

// Dense polynomial, lowest degree first; the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(BaseField base, std::vector<FieldElement> coeffs);

    static Poly zero(const BaseField& k) { return Poly(k, {}); }
    static Poly constant(const BaseField& k, const FieldElement& a) { return Poly(k, {a}); }
    static Poly x(const BaseField& k);
    static Poly monomial(const BaseField& k, const FieldElement& a, std::size_t deg);
    /// x - c
    static Poly x_minus(const BaseField& k, const FieldElement& c);

    const BaseField& base() const noexcept { return base_; }
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
    FieldElement coeff(std::size_t i) const;
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const FieldElement& lead() const;
    bool is_monic() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const FieldElement& a) const;
    Poly pow(unsigned n) const;

    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    bool operator==(const Poly& o) const;

    std::string to_string() const;

private:
    void check_same(const Poly& o) const;
    void trim();

    BaseField base_;
    std::vector<FieldElement> c_;
};

/// f = f_0 + f_1 q + ... + f_r q^r with deg f_l < deg q.
std::vector<Poly> q_expansion(const Poly& f, const Poly& q);

/// sum_i C(i,j) a_i x^(i-j), binomials reduced into the field.
Poly hasse_derivative(const Poly& f, unsigned j);

FieldElement eval_poly(const Poly& f, const FieldElement& c);

/// Composition f(g).
Poly compose(const Poly& f, const Poly& g);

/// Coefficient strings, lowest degree first.
Poly parse_poly(const BaseField& k, const std::vector<std::string>& coeffs);

Integer binomial(unsigned n, unsigned k);

}  // namespace valgen
