#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "valgen/sparse_poly.hpp"
#include "valgen/value_group.hpp"

namespace valgen {

enum class FieldKind { Qp, QtComposite, FpTPerfected };

/*
 * The three catalogue base fields:
 *   Qp            Q with the p-adic valuation, vK = Z
 *   QtComposite   Q(t) with f -> (t-order, v_p of the lowest t-coefficient),
 *                 lex ordered, vK = Z^2
 *   FpTPerfected  F_p(t^(1/p^inf)) with the t-adic valuation, vK = Z[1/p]
 */
struct BaseField {
    FieldKind kind = FieldKind::Qp;
    std::uint32_t p = 2;

    static BaseField qp(std::uint32_t p) { return {FieldKind::Qp, checked_prime(p)}; }
    static BaseField qt_composite(std::uint32_t p) { return {FieldKind::QtComposite, checked_prime(p)}; }
    static BaseField perfected(std::uint32_t p) { return {FieldKind::FpTPerfected, checked_prime(p)}; }

    int rank() const noexcept { return kind == FieldKind::QtComposite ? 2 : 1; }
    std::uint32_t characteristic() const noexcept { return kind == FieldKind::FpTPerfected ? p : 0; }

    /// Z or Z^2. The perfected value group Z[1/p] is not finitely generated.
    bool has_fg_value_group() const noexcept { return kind != FieldKind::FpTPerfected; }
    FGSubgroup value_group() const;
    bool value_in_group(const Value& v) const;

    std::string name() const;
    bool operator==(const BaseField&) const = default;

    static std::uint32_t checked_prime(std::uint32_t p);
};

using QtFunction = RatFunc<Rational>;

/// Rational function in s = t^(1/p^level); level is minimal after normalization.
struct PerfectedElement {
    std::uint32_t p = 2;
    int level = 0;
    RatFunc<Fp> f;

    bool operator==(const PerfectedElement& o) const {
        return p == o.p && level == o.level && f == o.f;
    }
};

class FieldElement {
public:
    using Rep = std::variant<Rational, QtFunction, PerfectedElement>;

    FieldElement() : rep_(Rational(0)) {}

    static FieldElement zero(const BaseField& k);
    static FieldElement one(const BaseField& k) { return from_integer(k, 1); }
    static FieldElement from_integer(const BaseField& k, const Integer& n);
    static FieldElement from_integer(const BaseField& k, long n) { return from_integer(k, Integer(n)); }
    static FieldElement from_rational(const BaseField& k, const Rational& q);
    /// t^e; e must be an integer for Q(t) and have p-power denominator in the perfected field.
    static FieldElement t_power(const BaseField& k, const Rational& e);
    static FieldElement from_qt(QtFunction f) { return FieldElement(Rep(std::move(f))); }
    static FieldElement from_perfected(PerfectedElement e);
    /// Keeps the given level; only for presenting two elements at a common level.
    static FieldElement unnormalized(PerfectedElement e) { return FieldElement(Rep(std::move(e))); }

    FieldKind kind() const;
    bool is_zero() const;
    const Rep& rep() const noexcept { return rep_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement inverse() const;
    FieldElement pow(long n) const;

    bool operator==(const FieldElement& o) const;

    std::string to_string() const;

private:
    explicit FieldElement(Rep r) : rep_(std::move(r)) {}

    Rep rep_;
};

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }

Value val(const BaseField& k, const FieldElement& a);

/// Canonical element (power of p times power of t) with the given value.
FieldElement element_with_value(const BaseField& k, const Value& gamma);

std::pair<FieldElement, FieldElement> lift_to_common_level(const FieldElement& a, const FieldElement& b);

/// Rewrite a perfected element at a higher level without normalizing it back.
PerfectedElement at_level(const PerfectedElement& a, int level);

/// Normalize to the minimal level.
PerfectedElement normalized(PerfectedElement a);

bool belongs_to(const BaseField& k, const FieldElement& a);

/// Parse "3/4", "2t + t^2", "(t+1)/(t^2-3)", "t^(1/4) + 1", ...
FieldElement parse_element(const BaseField& k, std::string_view text);

}  // namespace valgen
