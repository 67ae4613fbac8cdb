#include "valgen/sampling.hpp"

#include "valgen/error.hpp"

namespace valgen {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::Argument, "empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

Rational small_rational(Rng& rng, std::int64_t num, std::int64_t den) {
    Rational q(Integer(static_cast<long>(rng.range(-num, num))), Integer(static_cast<long>(rng.range(1, den))));
    q.canonicalize();
    return q;
}

FieldElement random_qt(const BaseField& k, Rng& rng) {
    const FieldElement t = FieldElement::t_power(k, Rational(1));
    FieldElement num = FieldElement::zero(k);
    for (std::int64_t i = rng.range(0, 3); i >= 0; --i) num = num * t + FieldElement::from_rational(k, small_rational(rng, 12, 8));
    FieldElement den = FieldElement::from_rational(k, small_rational(rng, 6, 4));
    if (rng.chance(1, 2)) den = den + t * FieldElement::from_rational(k, small_rational(rng, 4, 3));
    if (den.is_zero()) den = FieldElement::one(k);
    return num / den * FieldElement::t_power(k, Rational(static_cast<long>(rng.range(-2, 2))));
}

FieldElement random_perfected(const BaseField& k, Rng& rng) {
    const long level = static_cast<long>(rng.range(0, 2));
    Integer pl = 1;
    for (long i = 0; i < level; ++i) pl *= k.p;
    auto s_power = [&](long e) { return FieldElement::t_power(k, Rational(Integer(e), pl)); };
    FieldElement num = FieldElement::zero(k);
    for (long e = 0; e <= 4; ++e)
        if (rng.chance(1, 2)) num = num + s_power(e) * FieldElement::from_integer(k, static_cast<long>(rng.range(1, k.p - 1)));
    FieldElement den = FieldElement::one(k);
    if (rng.chance(1, 3)) den = den + s_power(static_cast<long>(rng.range(1, 2)));
    return num / den * s_power(static_cast<long>(rng.range(-4, 4)));
}

}  // namespace

FieldElement random_element(const BaseField& k, Rng& rng) {
    switch (k.kind) {
    case FieldKind::Qp: return FieldElement::from_rational(k, small_rational(rng, 40, 40));
    case FieldKind::QtComposite: return random_qt(k, rng);
    case FieldKind::FpTPerfected: return random_perfected(k, rng);
    }
    fail(ErrorKind::Structural, "unknown field");
}

FieldElement random_nonzero_element(const BaseField& k, Rng& rng) {
    for (;;) {
        FieldElement a = random_element(k, rng);
        if (!a.is_zero()) return a;
    }
}

Poly random_poly(const BaseField& k, Rng& rng, int max_degree) {
    std::vector<FieldElement> c;
    const int d = static_cast<int>(rng.range(0, max_degree));
    for (int i = 0; i <= d; ++i) c.push_back(rng.chance(1, 5) ? FieldElement::zero(k) : random_element(k, rng));
    return Poly(k, std::move(c));
}

Poly random_of_degree(const BaseField& k, Rng& rng, int degree) {
    std::vector<FieldElement> c;
    for (int i = 0; i < degree; ++i) c.push_back(rng.chance(1, 5) ? FieldElement::zero(k) : random_element(k, rng));
    c.push_back(random_nonzero_element(k, rng));
    return Poly(k, std::move(c));
}

Poly random_monic(const BaseField& k, Rng& rng, int degree) {
    std::vector<FieldElement> c;
    for (int i = 0; i < degree; ++i) c.push_back(rng.chance(1, 5) ? FieldElement::zero(k) : random_element(k, rng));
    c.push_back(FieldElement::one(k));
    return Poly(k, std::move(c));
}

LElement random_integral_sample(const ExtensionPtr& ext, Rng& rng) {
    const BaseField& k = ext->base();
    Poly f;
    do f = rng.chance(3, 4) ? random_of_degree(k, rng, ext->degree() - 1) : random_poly(k, rng, ext->degree() - 1);
    while (f.is_zero());
    const Value nu = nu_eval(*ext, f);
    std::vector<Rational> shift;
    for (const auto& c : nu.coords()) {
        Integer up;
        const Rational neg = -c;
        mpz_cdiv_q(up.get_mpz_t(), neg.get_num_mpz_t(), neg.get_den_mpz_t());
        shift.emplace_back(up);
    }
    if (rng.chance(1, 4)) shift[0] += 1;
    return LElement(ext, f.scaled(element_with_value(k, Value(shift))));
}

std::vector<LElement> integral_samples(const ExtensionPtr& ext, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<LElement> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_integral_sample(ext, rng));
    return out;
}

}  // namespace valgen
