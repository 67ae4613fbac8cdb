#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valgen/error.hpp"
#include "valgen/extension.hpp"
#include "valgen/field.hpp"
#include "valgen/poly.hpp"
#include "valgen/sampling.hpp"

namespace vt {

using namespace valgen;

inline Value V(const std::string& a) { return Value({parse_rational(a)}); }
inline Value V(const std::string& a, const std::string& b) { return Value({parse_rational(a), parse_rational(b)}); }
inline Rational Q(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline const BaseField q2 = BaseField::qp(2);
inline const BaseField q3 = BaseField::qp(3);
inline const BaseField qt2 = BaseField::qt_composite(2);
inline const BaseField qt3 = BaseField::qt_composite(3);
inline const BaseField f2 = BaseField::perfected(2);
inline const BaseField f3 = BaseField::perfected(3);

inline FieldElement E(const BaseField& k, const std::string& s) { return parse_element(k, s); }
inline Poly P(const BaseField& k, const std::vector<std::string>& c) { return parse_poly(k, c); }

inline ExtensionPtr sqrt2() { return ExtensionEntry::pure_radical(q2, 2, FieldElement::from_integer(q2, 2)); }
inline ExtensionPtr sqrt_t() { return ExtensionEntry::pure_radical(qt2, 2, FieldElement::t_power(qt2, Q(1))); }
inline ExtensionPtr quad7() { return ExtensionEntry::dense_quadratic(q2); }
inline ExtensionPtr as2() { return ExtensionEntry::artin_schreier_defect(f2, Declared{1, 2, 2}); }

inline std::vector<ExtensionPtr> catalogue() { return {sqrt2(), sqrt_t(), quad7(), as2()}; }

template <class F>
std::optional<ErrorKind> kind_of(F&& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace vt
