#include "valgen/field.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "valgen/error.hpp"

namespace valgen {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 60;

long p_adic_order(const Integer& n, std::uint32_t p) {
    if (n == 0) fail(ErrorKind::Structural, "p-adic order of zero");
    Integer rest;
    Integer prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Rational p_adic_value(const Rational& q, std::uint32_t p) {
    return Rational(p_adic_order(q.get_num(), p) - p_adic_order(q.get_den(), p));
}

bool is_power_of(Integer n, std::uint32_t p, int* exponent = nullptr) {
    if (n <= 0) return false;
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    if (exponent) *exponent = k;
    return n == 1;
}

std::int64_t checked_power(std::uint32_t p, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > kMaxExponent / static_cast<std::int64_t>(p))
            fail(ErrorKind::Unsupported, "perfected level too deep for exact exponents");
        r *= p;
    }
    return r;
}

QtFunction qt_const(const Rational& q) {
    return QtFunction(SparsePoly<Rational>::monomial(0, q), Rational(1));
}

Fp rational_mod_p(const Rational& q, std::uint32_t p) {
    Integer den_mod = q.get_den() % p;
    if (den_mod == 0) fail(ErrorKind::Argument, "rational " + rational_to_string(q) + " is not defined mod " + std::to_string(p));
    Integer num_mod = q.get_num() % p;
    if (num_mod < 0) num_mod += p;
    return Fp(num_mod.get_si(), p) / Fp(den_mod.get_si(), p);
}

const PerfectedElement& as_perf(const FieldElement& a) { return std::get<PerfectedElement>(a.rep()); }

template <class Op>
FieldElement binary(const FieldElement& a, const FieldElement& b, Op op) {
    if (a.rep().index() != b.rep().index()) fail(ErrorKind::FieldMismatch, "operands from different base fields");
    return op(a, b);
}

std::string coeff_prefix(const std::string& c, bool has_var) {
    if (!has_var) return c;
    if (c == "1") return "";
    if (c == "-1") return "-";
    return c + "*";
}

std::string qpoly_to_string(const SparsePoly<Rational>& f) {
    if (f.is_zero()) return "0";
    std::string out;
    const auto& ts = f.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        std::string var = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
        std::string body = coeff_prefix(rational_to_string(mag), e != 0) + var;
        if (out.empty())
            out = (c < 0 ? "-" : "") + body;
        else
            out += (c < 0 ? " - " : " + ") + body;
    }
    return out;
}

std::string fppoly_to_string(const SparsePoly<Fp>& f, int level, std::uint32_t p) {
    if (f.is_zero()) return "0";
    const Integer denom = Integer(checked_power(p, level));
    std::string out;
    const auto& ts = f.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational ex(Integer(e), denom);
        ex.canonicalize();
        std::string var;
        if (ex != 0) {
            if (ex == 1)
                var = "t";
            else if (ex.get_den() == 1)
                var = "t^" + ex.get_str();
            else
                var = "t^(" + ex.get_str() + ")";
        }
        std::string body = coeff_prefix(std::to_string(c.value()), ex != 0) + var;
        out += (out.empty() ? "" : " + ") + body;
    }
    return out;
}

std::string grouped(const std::string& s) {
    return s.find_first_of(" */") == std::string::npos ? s : "(" + s + ")";
}

template <class C>
bool is_one(const SparsePoly<C>& d) {
    return d.is_monomial() && d.degree() == 0 && d.lead() == d.lead() / d.lead();
}

}  // namespace

// ----------------------------------------------------------- BaseField

std::uint32_t BaseField::checked_prime(std::uint32_t p) {
    if (p < 2 || p > 65521) fail(ErrorKind::Spec, "prime out of range: " + std::to_string(p));
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(ErrorKind::Spec, std::to_string(p) + " is not prime");
    return p;
}

FGSubgroup BaseField::value_group() const {
    if (!has_fg_value_group()) fail(ErrorKind::Unsupported, "Z[1/p] is not finitely generated");
    return FGSubgroup::standard_lattice(rank());
}

bool BaseField::value_in_group(const Value& v) const {
    if (v.is_inf() || v.rank() != rank()) return false;
    if (kind == FieldKind::FpTPerfected) return is_power_of(v[0].get_den(), p);
    for (const auto& c : v.coords())
        if (c.get_den() != 1) return false;
    return true;
}

std::string BaseField::name() const {
    switch (kind) {
    case FieldKind::Qp: return "Qp";
    case FieldKind::QtComposite: return "QtComposite";
    case FieldKind::FpTPerfected: return "FpTPerfected";
    }
    return "?";
}

// -------------------------------------------------------- FieldElement

FieldElement FieldElement::zero(const BaseField& k) { return from_integer(k, 0); }

FieldElement FieldElement::from_integer(const BaseField& k, const Integer& n) {
    return from_rational(k, Rational(n));
}

FieldElement FieldElement::from_rational(const BaseField& k, const Rational& q) {
    switch (k.kind) {
    case FieldKind::Qp: return FieldElement(Rep(q));
    case FieldKind::QtComposite: return FieldElement(Rep(qt_const(q)));
    case FieldKind::FpTPerfected: {
        PerfectedElement e{k.p, 0, RatFunc<Fp>(SparsePoly<Fp>::monomial(0, rational_mod_p(q, k.p)), Fp(1, k.p))};
        return FieldElement(Rep(std::move(e)));
    }
    }
    fail(ErrorKind::Structural, "unknown field");
}

FieldElement FieldElement::t_power(const BaseField& k, const Rational& e) {
    switch (k.kind) {
    case FieldKind::Qp: fail(ErrorKind::FieldMismatch, "t is not an element of Q");
    case FieldKind::QtComposite: {
        if (e.get_den() != 1) fail(ErrorKind::ValueNotRepresented, "fractional power of t in Q(t)");
        const long n = e.get_num().get_si();
        auto mono = [](long d) { return SparsePoly<Rational>::monomial(d, Rational(1)); };
        if (n >= 0) return FieldElement(Rep(QtFunction(mono(n), mono(0))));
        return FieldElement(Rep(QtFunction(mono(0), mono(-n))));
    }
    case FieldKind::FpTPerfected: {
        int level = 0;
        if (!is_power_of(e.get_den(), k.p, &level))
            fail(ErrorKind::ValueNotRepresented, "exponent denominator is not a power of p");
        const long n = e.get_num().get_si();
        auto mono = [&](long d) { return SparsePoly<Fp>::monomial(d, Fp(1, k.p)); };
        PerfectedElement pe{k.p, level,
                            n >= 0 ? RatFunc<Fp>(mono(n), mono(0)) : RatFunc<Fp>(mono(0), mono(-n))};
        return from_perfected(std::move(pe));
    }
    }
    fail(ErrorKind::Structural, "unknown field");
}

FieldElement FieldElement::from_perfected(PerfectedElement e) { return FieldElement(Rep(normalized(std::move(e)))); }

FieldKind FieldElement::kind() const {
    switch (rep_.index()) {
    case 0: return FieldKind::Qp;
    case 1: return FieldKind::QtComposite;
    default: return FieldKind::FpTPerfected;
    }
}

bool FieldElement::is_zero() const {
    return std::visit(
        [](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Rational>)
                return r == 0;
            else if constexpr (std::is_same_v<T, QtFunction>)
                return r.is_zero();
            else
                return r.f.is_zero();
        },
        rep_);
}

PerfectedElement at_level(const PerfectedElement& a, int level) {
    if (level < a.level) fail(ErrorKind::Structural, "cannot lower the level of a perfected element");
    if (level == a.level) return a;
    const std::int64_t factor = checked_power(a.p, level - a.level);
    const std::int64_t top = std::max(a.f.num().degree(), a.f.den().degree());
    if (top > 0 && top > kMaxExponent / factor) fail(ErrorKind::Unsupported, "perfected exponent overflow");
    return PerfectedElement{a.p, level, a.f.inflate(factor)};
}

PerfectedElement normalized(PerfectedElement a) {
    if (a.f.is_zero()) {
        a.level = 0;
        return a;
    }
    while (a.level > 0 && a.f.deflatable(a.p)) {
        a.f = a.f.deflate(a.p);
        --a.level;
    }
    return a;
}

namespace {

template <class Op>
FieldElement perf_op(const FieldElement& a, const FieldElement& b, Op op) {
    const auto& x = as_perf(a);
    const auto& y = as_perf(b);
    if (x.p != y.p) fail(ErrorKind::FieldMismatch, "perfected fields of different characteristic");
    const int level = std::max(x.level, y.level);
    const auto xl = at_level(x, level);
    const auto yl = at_level(y, level);
    return FieldElement::from_perfected(PerfectedElement{x.p, level, op(xl.f, yl.f)});
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return binary(*this, o, [](const FieldElement& a, const FieldElement& b) {
        switch (a.kind()) {
        case FieldKind::Qp: return FieldElement(Rep(Rational(std::get<Rational>(a.rep_) + std::get<Rational>(b.rep_))));
        case FieldKind::QtComposite: return FieldElement(Rep(std::get<QtFunction>(a.rep_) + std::get<QtFunction>(b.rep_)));
        default: return perf_op(a, b, [](const RatFunc<Fp>& x, const RatFunc<Fp>& y) { return x + y; });
        }
    });
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return binary(*this, o, [](const FieldElement& a, const FieldElement& b) {
        switch (a.kind()) {
        case FieldKind::Qp: return FieldElement(Rep(Rational(std::get<Rational>(a.rep_) - std::get<Rational>(b.rep_))));
        case FieldKind::QtComposite: return FieldElement(Rep(std::get<QtFunction>(a.rep_) - std::get<QtFunction>(b.rep_)));
        default: return perf_op(a, b, [](const RatFunc<Fp>& x, const RatFunc<Fp>& y) { return x - y; });
        }
    });
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    return binary(*this, o, [](const FieldElement& a, const FieldElement& b) {
        switch (a.kind()) {
        case FieldKind::Qp: return FieldElement(Rep(Rational(std::get<Rational>(a.rep_) * std::get<Rational>(b.rep_))));
        case FieldKind::QtComposite: return FieldElement(Rep(std::get<QtFunction>(a.rep_) * std::get<QtFunction>(b.rep_)));
        default: return perf_op(a, b, [](const RatFunc<Fp>& x, const RatFunc<Fp>& y) { return x * y; });
        }
    });
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    if (o.is_zero()) fail(ErrorKind::Argument, "division by zero");
    return *this * o.inverse();
}

FieldElement FieldElement::operator-() const {
    switch (kind()) {
    case FieldKind::Qp: return FieldElement(Rep(Rational(-std::get<Rational>(rep_))));
    case FieldKind::QtComposite: return FieldElement(Rep(-std::get<QtFunction>(rep_)));
    default: {
        PerfectedElement e = as_perf(*this);
        e.f = -e.f;
        return FieldElement(Rep(std::move(e)));
    }
    }
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(ErrorKind::Argument, "inverse of zero");
    switch (kind()) {
    case FieldKind::Qp: return FieldElement(Rep(Rational(1 / std::get<Rational>(rep_))));
    case FieldKind::QtComposite: return FieldElement(Rep(std::get<QtFunction>(rep_).inverse()));
    default: {
        PerfectedElement e = as_perf(*this);
        e.f = e.f.inverse();
        return FieldElement(Rep(std::move(e)));
    }
    }
}

FieldElement FieldElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    if (is_zero()) {
        if (n == 0) fail(ErrorKind::Argument, "0^0");
        return *this;
    }
    FieldElement base = *this;
    FieldElement acc = base / base;
    while (n) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (rep_.index() != o.rep_.index()) return false;
    if (kind() == FieldKind::Qp) return std::get<Rational>(rep_) == std::get<Rational>(o.rep_);
    return (*this - o).is_zero();
}

std::string FieldElement::to_string() const {
    switch (kind()) {
    case FieldKind::Qp: return rational_to_string(std::get<Rational>(rep_));
    case FieldKind::QtComposite: {
        const auto& f = std::get<QtFunction>(rep_);
        if (is_one(f.den())) return qpoly_to_string(f.num());
        return grouped(qpoly_to_string(f.num())) + "/" + grouped(qpoly_to_string(f.den()));
    }
    default: {
        const auto& e = as_perf(*this);
        if (is_one(e.f.den())) return fppoly_to_string(e.f.num(), e.level, e.p);
        return grouped(fppoly_to_string(e.f.num(), e.level, e.p)) + "/" + grouped(fppoly_to_string(e.f.den(), e.level, e.p));
    }
    }
}

// ------------------------------------------------------------ valuation

bool belongs_to(const BaseField& k, const FieldElement& a) {
    if (a.kind() != k.kind) return false;
    if (k.kind == FieldKind::FpTPerfected) return std::get<PerfectedElement>(a.rep()).p == k.p;
    return true;
}

Value val(const BaseField& k, const FieldElement& a) {
    if (!belongs_to(k, a)) fail(ErrorKind::FieldMismatch, "element does not belong to " + k.name());
    if (a.is_zero()) return Value::infinity();
    switch (k.kind) {
    case FieldKind::Qp: return Value({p_adic_value(std::get<Rational>(a.rep()), k.p)});
    case FieldKind::QtComposite: {
        const auto& f = std::get<QtFunction>(a.rep());
        auto lowest_value = [&](const SparsePoly<Rational>& g) {
            return Value({Rational(g.order()), p_adic_value(g.lowest(), k.p)});
        };
        return lowest_value(f.num()) - lowest_value(f.den());
    }
    case FieldKind::FpTPerfected: {
        const auto& e = std::get<PerfectedElement>(a.rep());
        return Value({Rational(Integer(e.f.order()), Integer(checked_power(k.p, e.level)))});
    }
    }
    fail(ErrorKind::Structural, "unknown field");
}

FieldElement element_with_value(const BaseField& k, const Value& gamma) {
    if (gamma.is_inf() || !k.value_in_group(gamma))
        fail(ErrorKind::ValueNotRepresented, "value " + gamma.to_string() + " is not in the value group of " + k.name());
    switch (k.kind) {
    case FieldKind::Qp: {
        const long n = gamma[0].get_num().get_si();
        Rational pp = 1;
        for (long i = 0; i < std::labs(n); ++i) pp *= k.p;
        return FieldElement::from_rational(k, n >= 0 ? pp : Rational(1 / pp));
    }
    case FieldKind::QtComposite: {
        const long n = gamma[1].get_num().get_si();
        Rational pp = 1;
        for (long i = 0; i < std::labs(n); ++i) pp *= k.p;
        return FieldElement::t_power(k, gamma[0]) * FieldElement::from_rational(k, n >= 0 ? pp : Rational(1 / pp));
    }
    case FieldKind::FpTPerfected: return FieldElement::t_power(k, gamma[0]);
    }
    fail(ErrorKind::Structural, "unknown field");
}

std::pair<FieldElement, FieldElement> lift_to_common_level(const FieldElement& a, const FieldElement& b) {
    if (a.kind() != FieldKind::FpTPerfected || b.kind() != FieldKind::FpTPerfected)
        fail(ErrorKind::Structural, "level lifting applies to perfected elements only");
    const auto& x = std::get<PerfectedElement>(a.rep());
    const auto& y = std::get<PerfectedElement>(b.rep());
    if (x.p != y.p) fail(ErrorKind::FieldMismatch, "different characteristics");
    const int level = std::max(x.level, y.level);
    return {FieldElement::unnormalized(at_level(x, level)), FieldElement::unnormalized(at_level(y, level))};
}

// --------------------------------------------------------------- parser

namespace {

class ElementParser {
public:
    ElementParser(const BaseField& k, std::string_view s) : k_(k), s_(s) {}

    FieldElement parse() {
        FieldElement v = expr();
        skip_ws();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Spec, "cannot parse element '" + std::string(s_) + "': " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    FieldElement expr() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        FieldElement acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    bool starts_atom() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
    }

    FieldElement term() {
        FieldElement acc = power();
        for (;;) {
            if (eat('*')) {
                acc = acc * power();
            } else if (eat('/')) {
                FieldElement d = power();
                if (d.is_zero()) error("division by zero");
                acc = acc / d;
            } else if (starts_atom()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    FieldElement power() {
        skip_ws();
        const bool is_t = pos_ < s_.size() && s_[pos_] == 't';
        FieldElement base = atom();
        if (!eat('^')) return base;
        Rational e = exponent();
        if (is_t) return FieldElement::t_power(k_, e);
        if (e.get_den() != 1) error("fractional exponent on a non-monomial");
        if (base.is_zero() && e < 0) error("zero to a negative power");
        return base.pow(e.get_num().get_si());
    }

    Integer integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected digits");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    Rational exponent() {
        if (eat('(')) {
            const bool neg = eat('-');
            Integer num = integer();
            Integer den = 1;
            if (eat('/')) den = integer();
            if (!eat(')')) error("expected ')'");
            if (den == 0) error("zero exponent denominator");
            Rational r(neg ? Integer(-num) : num, den);
            r.canonicalize();
            return r;
        }
        const bool neg = eat('-');
        Integer n = integer();
        return Rational(neg ? Integer(-n) : n);
    }

    FieldElement atom() {
        skip_ws();
        if (eat('(')) {
            FieldElement v = expr();
            if (!eat(')')) error("expected ')'");
            return v;
        }
        if (eat('t')) {
            if (k_.kind == FieldKind::Qp) error("t is not an element of Q");
            return FieldElement::t_power(k_, Rational(1));
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return FieldElement::from_integer(k_, integer());
        error(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
    }

    const BaseField& k_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_element(const BaseField& k, std::string_view text) { return ElementParser(k, text).parse(); }

}  // namespace valgen
