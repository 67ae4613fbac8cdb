#include <doctest.h>

#include "support.hpp"

using namespace vt;

namespace {

// eta mod 2^bits with eta^2 = -7 and eta = 1 mod 4, by bitwise lifting.
mpz_class two_adic_root(unsigned bits) {
    mpz_class r = 1;
    for (unsigned j = 2; j + 2 <= bits; ++j) {
        mpz_class mod = mpz_class(1) << (j + 2);
        mpz_class lhs = r * r + 7;
        if (lhs % mod != 0) r += mpz_class(1) << j;
    }
    return r;
}

long v2(mpz_class n) {
    long v = 0;
    while (n % 2 == 0) n /= 2, ++v;
    return v;
}

Poly nonzero_below(const ExtensionEntry& ext, Rng& rng) {
    Poly f;
    do f = random_poly(ext.base(), rng, ext.degree() - 1);
    while (f.is_zero());
    return f;
}

}  // namespace

TEST_CASE("catalogue construction") {
    const auto s = sqrt2();
    CHECK(s->g() == P(q2, {"-2", "0", "1"}));
    CHECK(s->v_eta() == V("1/2"));
    CHECK(sqrt_t()->g() == P(qt2, {"-t", "0", "1"}));
    CHECK(sqrt_t()->v_eta() == V("1/2", "0"));
    const auto as = as2();
    CHECK(as->g() == P(f2, {"1/t", "1", "1"}));
    CHECK(as->approximant_distance(0) == V("-1/4"));
    CHECK(as->conjugate_distance() == V("0"));
    CHECK(quad7()->conjugate_distance() == V("1"));
    CHECK(s->conjugate_distance() == V("3/2"));
    CHECK(kind_of([] { (void)ExtensionEntry::pure_radical(q2, 2, E(q2, "4")); }).has_value());
    CHECK(kind_of([] { (void)ExtensionEntry::pure_radical(f2, 2, E(f2, "t^(1/2)")); }).has_value());
}

TEST_CASE("nu examples") {
    CHECK(nu_eval(*sqrt2(), P(q2, {"0", "0", "0", "1"})) == V("3/2"));
    CHECK(nu_eval(*quad7(), P(q2, {"7", "0", "1"})).is_inf());
    CHECK(nu_eval(*as2(), Poly::x(f2)) == V("-1/2"));
    CHECK(nu_eval(*sqrt_t(), P(qt2, {"2", "1"})) == V("0", "1"));
}

TEST_CASE("pure radical nu is the coordinatewise minimum") {
    const auto s = sqrt2();
    Rng rng(51);
    for (int i = 0; i < 300; ++i) {
        const FieldElement a = random_nonzero_element(q2, rng), b = random_nonzero_element(q2, rng);
        const Value expect = std::min(val(q2, a), val(q2, b) + V("1/2"));
        CHECK(nu_eval(*s, Poly(q2, {a, b})) == expect);
    }
}

TEST_CASE("2-adic approximants agree with an independent root") {
    const auto e = quad7();
    const mpz_class eta = two_adic_root(60);
    CHECK((eta * eta + 7) % (mpz_class(1) << 58) == 0);
    for (std::size_t k = 0; k < 40; ++k) {
        const Rational c = std::get<Rational>(e->approximant(k).rep());
        REQUIRE(c.get_den() == 1);
        CHECK(v2(c.get_num() - eta) == static_cast<long>(k));
        CHECK(e->approximant_distance(k) == Value({Rational(static_cast<long>(k))}));
    }
    std::vector<std::string> expect{"0", "3", "1", "13"};
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(e->approximant(k) == E(q2, expect[k]));
    Rng rng(52);
    for (int i = 0; i < 300; ++i) {
        const FieldElement c = random_element(q2, rng);
        const Rational cq = std::get<Rational>(c.rep());
        // v(eta - c) from the integer residue when c is 2-integral, else v(c).
        Value expect;
        if (mpz_divisible_2exp_p(cq.get_den().get_mpz_t(), 1))
            expect = val(q2, c);
        else {
            mpz_class inv;
            const mpz_class mod = mpz_class(1) << 58;
            mpz_invert(inv.get_mpz_t(), cq.get_den().get_mpz_t(), mod.get_mpz_t());
            mpz_class diff = (cq.get_num() * inv - eta) % mod;
            expect = diff == 0 ? Value::infinity() : Value({Rational(v2(diff))});
        }
        CHECK(e->root_distance(c) == expect);
    }
}

TEST_CASE("Artin-Schreier distances") {
    const auto e = as2();
    for (std::size_t k = 0; k <= 8; ++k) {
        const FieldElement& c = e->approximant(k);
        const Value d = e->approximant_distance(k);
        CHECK(d == Value({Rational(-1, 1L << (k + 2))}));
        // (eta - c)^2 + (eta - c) = g(c) in characteristic 2
        CHECK(val(f2, eval_poly(e->g(), c)) == d.times(2));
        CHECK(e->root_distance(c) == d);
    }
    CHECK(e->linear_sup() == V("0"));
    CHECK_FALSE(e->linear_sup_attained());
    const auto e3 = ExtensionEntry::artin_schreier_defect(f3, Declared{1, 3, 3});
    CHECK(e3->g() == P(f3, {"-1/t", "-1", "0", "1"}));
    CHECK(e3->approximant_distance(0) == V("-1/9"));
    CHECK(e3->approximant_distance(1) == V("-1/27"));
}

TEST_CASE("sweep agrees with the closed form on linear polynomials") {
    for (const auto& e : {quad7(), as2()}) {
        Rng rng(61);
        for (int i = 0; i < 300; ++i) {
            const FieldElement a = random_element(e->base(), rng), b = random_nonzero_element(e->base(), rng);
            const Poly r(e->base(), {a, b});
            SweepTrace trace;
            CHECK(nu_sweep(*e, r, &trace) == nu_linear_closed_form(*e, r));
            CHECK(trace.stop_k >= 1);
        }
        for (std::size_t k = 0; k < 6; ++k) {
            const Poly r = Poly::x_minus(e->base(), e->approximant(k));
            CHECK(nu_sweep(*e, r) == e->approximant_distance(k));
        }
    }
}

TEST_CASE("nu valuation axioms on the catalogue") {
    for (const auto& e : catalogue()) {
        CAPTURE(e->describe());
        Rng rng(71);
        for (int i = 0; i < 1000; ++i) {
            const Poly f = nonzero_below(*e, rng), g = nonzero_below(*e, rng);
            const Value vf = nu_eval(*e, f), vg = nu_eval(*e, g);
            REQUIRE(!vf.is_inf());
            REQUIRE(nu_eval(*e, f * g) == vf + vg);
            const Value vs = nu_eval(*e, f + g);
            REQUIRE(vs >= std::min(vf, vg));
            if (vf != vg) REQUIRE(vs == std::min(vf, vg));
            REQUIRE(nu_eval(*e, -f) == vf);
        }
    }
}

TEST_CASE("L arithmetic") {
    const auto e = sqrt2();
    const LElement eta = LElement::eta(e);
    CHECK(eta.pow(2) == LElement::from_base(e, E(q2, "2")));
    CHECK(eta.pow(3).val() == V("3/2"));
    CHECK((eta * eta).to_string() == "2");
}

TEST_CASE("invariants") {
    const auto a = invariants_report(*sqrt2());
    CHECK(a.e == 2);
    CHECK(a.epsilon == 2);
    CHECK(a.f == 1);
    CHECK(a.d == 1);
    CHECK(a.pure);
    CHECK(a.knaf);
    const auto b = invariants_report(*sqrt_t());
    CHECK(b.e == 2);
    CHECK(b.epsilon == 1);
    CHECK(b.d == 1);
    CHECK_FALSE(b.knaf);
    const auto c = invariants_report(*as2());
    CHECK(c.e == 1);
    CHECK(c.epsilon == 1);
    CHECK(c.d == 2);
    CHECK_FALSE(c.knaf);
    const auto d = invariants_report(*quad7());
    CHECK(d.e == 1);
    CHECK(d.d == 1);
    CHECK(d.knaf);
    for (const auto& e : catalogue()) {
        const auto r = invariants_report(*e);
        CHECK(static_cast<int>(r.e) * r.f * r.d == e->declared().henselian_degree);
    }
}

TEST_CASE("declared data that contradicts the computation is an integrity error") {
    CHECK(kind_of([] { (void)ExtensionEntry::artin_schreier_defect(f2, Declared{1, 1, 2}); }) == ErrorKind::Spec);
    const auto bad = ExtensionEntry::artin_schreier_defect(f2, Declared{1, 1, 1});
    CHECK(kind_of([&] { (void)invariants_report(*bad); }) == ErrorKind::Integrity);
    const auto bad2 = ExtensionEntry::dense_quadratic(q2, Declared{1, 2, 2});
    CHECK(kind_of([&] { (void)invariants_report(*bad2); }) == ErrorKind::Integrity);
}
