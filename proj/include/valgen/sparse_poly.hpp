#pragma once

// Sparse univariate polynomials and reduced fractions of them. Used as the
// coefficient machinery of the base fields (Q[t] for Q(t), F_p[s] for the
// perfected field), where exponents can be large but terms are few.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "valgen/error.hpp"

namespace valgen {

/// Prime field element; the modulus travels with the value.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t v, std::uint32_t p) : p_(p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t value() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator+(Fp o) const { return {static_cast<std::int64_t>(v_) + o.v_, p_}; }
    Fp operator-(Fp o) const { return {static_cast<std::int64_t>(v_) - o.v_, p_}; }
    Fp operator-() const { return {-static_cast<std::int64_t>(v_), p_}; }
    Fp operator*(Fp o) const {
        return {static_cast<std::int64_t>((static_cast<std::uint64_t>(v_) * o.v_) % p_), p_};
    }
    Fp inverse() const {
        if (v_ == 0) fail(ErrorKind::Argument, "division by zero in F_p");
        // Fermat: a^(p-2)
        std::uint64_t base = v_, acc = 1, e = p_ - 2;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return {static_cast<std::int64_t>(acc), p_};
    }
    Fp operator/(Fp o) const { return *this * o.inverse(); }
    bool operator==(const Fp& o) const { return v_ == o.v_; }

private:
    std::uint32_t v_ = 0;
    std::uint32_t p_ = 2;
};

inline bool coeff_is_zero(const mpq_class& q) { return q == 0; }
inline bool coeff_is_zero(const Fp& a) { return a.is_zero(); }

template <class C>
class SparsePoly {
public:
    using Term = std::pair<std::int64_t, C>;

    SparsePoly() = default;
    static SparsePoly monomial(std::int64_t e, C c) {
        SparsePoly r;
        if (!coeff_is_zero(c)) r.terms_.emplace_back(e, std::move(c));
        return r;
    }
    explicit SparsePoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    std::int64_t degree() const { return terms_.empty() ? -1 : terms_.back().first; }
    std::int64_t order() const { return terms_.empty() ? -1 : terms_.front().first; }
    const C& lead() const { return terms_.back().second; }
    const C& lowest() const { return terms_.front().second; }

    C coeff(std::int64_t e) const {
        for (const auto& [k, c] : terms_)
            if (k == e) return c;
        return zero_like();
    }

    SparsePoly operator+(const SparsePoly& o) const { return combine(o, false); }
    SparsePoly operator-(const SparsePoly& o) const { return combine(o, true); }
    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    SparsePoly operator*(const SparsePoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::map<std::int64_t, C> acc;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                auto it = acc.find(ea + eb);
                if (it == acc.end())
                    acc.emplace(ea + eb, ca * cb);
                else
                    it->second = it->second + ca * cb;
            }
        std::vector<Term> out(acc.begin(), acc.end());
        return SparsePoly(std::move(out));
    }

    SparsePoly scaled(const C& c) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [e, x] : terms_) out.emplace_back(e, x * c);
        return SparsePoly(std::move(out));
    }

    SparsePoly shifted(std::int64_t by) const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) t.first += by;
        return r;
    }

    /// Substitute s -> s^m.
    SparsePoly inflate(std::int64_t m) const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) t.first *= m;
        return r;
    }

    /// Substitute s^m -> s; every exponent must be divisible by m.
    SparsePoly deflate(std::int64_t m) const {
        SparsePoly r = *this;
        for (auto& t : r.terms_) {
            if (t.first % m != 0) fail(ErrorKind::Structural, "deflate of non-deflatable polynomial");
            t.first /= m;
        }
        return r;
    }

    bool exponents_divisible_by(std::int64_t m) const {
        for (const auto& t : terms_)
            if (t.first % m != 0) return false;
        return true;
    }

    SparsePoly monic() const {
        if (is_zero()) return *this;
        const C one = lead() / lead();
        const C inv = one / lead();
        return scaled(inv);
    }

    /// Euclidean division; divisor must be nonzero.
    std::pair<SparsePoly, SparsePoly> divmod(const SparsePoly& d) const {
        if (d.is_zero()) fail(ErrorKind::Argument, "polynomial division by zero");
        SparsePoly q, r = *this;
        const C one = d.lead() / d.lead();
        const C inv = one / d.lead();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const std::int64_t sh = r.degree() - d.degree();
            const C k = r.lead() * inv;
            q = q + monomial(sh, k);
            r = r - d.scaled(k).shifted(sh);
        }
        return {q, r};
    }

    bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

private:
    C zero_like() const {
        if (terms_.empty()) return C();
        return terms_.front().second - terms_.front().second;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> out;
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second = out.back().second + t.second;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return coeff_is_zero(t.second); });
        terms_ = std::move(out);
    }

    SparsePoly combine(const SparsePoly& o, bool subtract) const {
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                C c = o.terms_[j].second;
                if (subtract) c = -c;
                out.emplace_back(o.terms_[j].first, std::move(c));
                ++j;
            } else {
                C c = terms_[i].second;
                if (subtract)
                    c = c - o.terms_[j].second;
                else
                    c = c + o.terms_[j].second;
                if (!coeff_is_zero(c)) out.emplace_back(terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        SparsePoly r;
        r.terms_ = std::move(out);
        return r;
    }

    std::vector<Term> terms_;
};

/// Monic gcd. Monomial operands are handled without running Euclid.
template <class C>
SparsePoly<C> poly_gcd(SparsePoly<C> a, SparsePoly<C> b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_monomial() || b.is_monomial()) {
        const C one = a.lead() / a.lead();
        return SparsePoly<C>::monomial(std::min(a.order(), b.order()), one);
    }
    // Pull out the common power of s first; it keeps Euclid short for Laurent-like data.
    const std::int64_t common = std::min(a.order(), b.order());
    a = a.shifted(-a.order());
    b = b.shifted(-b.order());
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic().shifted(common);
}

/// num/den in lowest terms with monic denominator.
template <class C>
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(SparsePoly<C> num, SparsePoly<C> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(SparsePoly<C> num, const C& one)
        : num_(std::move(num)), den_(SparsePoly<C>::monomial(0, one)) {}

    const SparsePoly<C>& num() const noexcept { return num_; }
    const SparsePoly<C>& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RatFunc operator+(const RatFunc& o) const {
        if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return RatFunc(SparsePoly<C>(), den_);
        const auto g1 = poly_gcd(num_, o.den_);
        const auto g2 = poly_gcd(o.num_, den_);
        RatFunc r;
        r.num_ = num_.divmod(g1).first * o.num_.divmod(g2).first;
        r.den_ = den_.divmod(g2).first * o.den_.divmod(g1).first;
        r.make_den_monic();
        return r;
    }
    RatFunc inverse() const {
        if (is_zero()) fail(ErrorKind::Argument, "division by zero");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.make_den_monic();
        return r;
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Substitute s -> s^m in numerator and denominator.
    RatFunc inflate(std::int64_t m) const {
        RatFunc r;
        r.num_ = num_.inflate(m);
        r.den_ = den_.inflate(m);
        return r;
    }
    RatFunc deflate(std::int64_t m) const {
        RatFunc r;
        r.num_ = num_.deflate(m);
        r.den_ = den_.deflate(m);
        return r;
    }
    bool deflatable(std::int64_t m) const { return num_.exponents_divisible_by(m) && den_.exponents_divisible_by(m); }

    /// Order of vanishing at s = 0.
    std::int64_t order() const { return num_.order() - den_.order(); }

private:
    void make_den_monic() {
        const C l = den_.lead();
        const C one = l / l;
        if (l == one) return;
        const C inv = one / l;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    void reduce() {
        if (den_.is_zero()) fail(ErrorKind::Argument, "zero denominator");
        if (num_.is_zero()) {
            const C one = den_.lead() / den_.lead();
            den_ = SparsePoly<C>::monomial(0, one);
            return;
        }
        const auto g = poly_gcd(num_, den_);
        if (!(g.is_monomial() && g.degree() == 0)) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        make_den_monic();
    }

    SparsePoly<C> num_;
    SparsePoly<C> den_;
};

}  // namespace valgen
