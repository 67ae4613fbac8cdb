#include "valgen/poly.hpp"

#include "valgen/error.hpp"

namespace valgen {

Poly::Poly(BaseField base, std::vector<FieldElement> coeffs) : base_(base), c_(std::move(coeffs)) {
    for (const auto& a : c_)
        if (!belongs_to(base_, a)) fail(ErrorKind::FieldMismatch, "coefficient " + a.to_string() + " not in " + base_.name());
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
    if (!(base_ == o.base_)) fail(ErrorKind::FieldMismatch, "polynomials over different base fields");
}

Poly Poly::x(const BaseField& k) { return monomial(k, FieldElement::one(k), 1); }

Poly Poly::monomial(const BaseField& k, const FieldElement& a, std::size_t deg) {
    std::vector<FieldElement> c(deg + 1, FieldElement::zero(k));
    c[deg] = a;
    return Poly(k, std::move(c));
}

Poly Poly::x_minus(const BaseField& k, const FieldElement& c) { return Poly(k, {-c, FieldElement::one(k)}); }

FieldElement Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElement::zero(base_); }

const FieldElement& Poly::lead() const {
    if (c_.empty()) fail(ErrorKind::Argument, "leading coefficient of the zero polynomial");
    return c_.back();
}

bool Poly::is_monic() const { return !c_.empty() && c_.back() == FieldElement::one(base_); }

Poly Poly::operator+(const Poly& o) const {
    check_same(o);
    std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), FieldElement::zero(base_));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = c_[i];
        if (i < o.c_.size()) r[i] += o.c_[i];
    }
    return Poly(base_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(-a);
    return Poly(base_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same(o);
    if (is_zero() || o.is_zero()) return zero(base_);
    std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement::zero(base_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(base_, std::move(r));
}

Poly Poly::scaled(const FieldElement& a) const {
    std::vector<FieldElement> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * a);
    return Poly(base_, std::move(r));
}

Poly Poly::pow(unsigned n) const {
    Poly acc = constant(base_, FieldElement::one(base_));
    Poly b = *this;
    while (n) {
        if (n & 1) acc = acc * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    check_same(d);
    if (d.is_zero()) fail(ErrorKind::Argument, "polynomial division by zero");
    if (degree() < d.degree()) return {zero(base_), *this};
    std::vector<FieldElement> r = c_;
    std::vector<FieldElement> q(c_.size() - d.c_.size() + 1, FieldElement::zero(base_));
    const bool monic = d.is_monic();
    const FieldElement inv = monic ? FieldElement::one(base_) : d.lead().inverse();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = r.size(); i-- > dd;) {
        if (r[i].is_zero()) continue;
        const FieldElement k = monic ? r[i] : r[i] * inv;
        q[i - dd] = k;
        for (std::size_t j = 0; j <= dd; ++j)
            if (!d.c_[j].is_zero()) r[i - dd + j] -= k * d.c_[j];
    }
    r.resize(dd);
    return {Poly(base_, std::move(q)), Poly(base_, std::move(r))};
}

bool Poly::operator==(const Poly& o) const {
    if (!(base_ == o.base_) || c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        std::string a = c_[i].to_string();
        const bool compound = a.find_first_of("+ ") != std::string::npos || a.find('-', 1) != std::string::npos;
        bool negative = false;
        if (compound) {
            if (i > 0) a = "(" + a + ")";
        } else if (a[0] == '-') {
            negative = true;
            a.erase(0, 1);
        }
        std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        std::string term;
        if (i == 0)
            term = a;
        else if (a == "1")
            term = mono;
        else
            term = a + "*" + mono;
        if (out.empty())
            out = (negative ? "-" : "") + term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out;
}

std::vector<Poly> q_expansion(const Poly& f, const Poly& q) {
    if (q.degree() < 1) fail(ErrorKind::Argument, "q-expansion needs a nonconstant q");
    if (!q.is_monic()) fail(ErrorKind::Argument, "q-expansion needs a monic q");
    std::vector<Poly> out;
    Poly rest = f;
    while (!rest.is_zero()) {
        auto [quo, rem] = rest.divmod(q);
        out.push_back(std::move(rem));
        rest = std::move(quo);
    }
    if (out.empty()) out.push_back(Poly::zero(f.base()));
    return out;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Poly hasse_derivative(const Poly& f, unsigned j) {
    if (static_cast<int>(j) > f.degree()) return Poly::zero(f.base());
    std::vector<FieldElement> r;
    for (std::size_t i = j; i < f.coeffs().size(); ++i)
        r.push_back(f.coeffs()[i] * FieldElement::from_integer(f.base(), binomial(static_cast<unsigned>(i), j)));
    return Poly(f.base(), std::move(r));
}

FieldElement eval_poly(const Poly& f, const FieldElement& c) {
    if (!belongs_to(f.base(), c)) fail(ErrorKind::FieldMismatch, "evaluation point outside the base field");
    FieldElement acc = FieldElement::zero(f.base());
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * c + f.coeffs()[i];
    return acc;
}

Poly compose(const Poly& f, const Poly& g) {
    Poly acc = Poly::zero(f.base());
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * g + Poly::constant(f.base(), f.coeffs()[i]);
    return acc;
}

Poly parse_poly(const BaseField& k, const std::vector<std::string>& coeffs) {
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(parse_element(k, s));
    return Poly(k, std::move(c));
}

}  // namespace valgen
