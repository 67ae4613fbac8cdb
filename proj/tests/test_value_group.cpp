#include <doctest.h>

#include <random>

#include "lattice_oracle.hpp"
#include "support.hpp"
#include "valgen/value_group.hpp"

using namespace vt;

namespace {

FGSubgroup span1(std::initializer_list<Rational> gens) {
    std::vector<Value> v;
    for (const auto& g : gens) v.push_back(Value({g}));
    return FGSubgroup::generated_by(1, v);
}

FGSubgroup span2(const oracle::Lattice2& l) {
    const std::vector<Value> v{Value({l.u.x, l.u.y}), Value({l.v.x, l.v.y})};
    return FGSubgroup::generated_by(2, v);
}

}  // namespace

TEST_CASE("lex order") {
    CHECK(V("1/2", "0") > V("0", "1"));
    CHECK(V("0", "0") == V("0", "0"));
    CHECK(Value::infinity() > V("5", "7"));
    CHECK(V("0", "-3") < V("0", "0"));
    CHECK(compare_lex(V("1"), V("1")) == Ordering::Equal);
    CHECK(kind_of([] { (void)(V("1") < V("1", "0")); }) == ErrorKind::Structural);
}

TEST_CASE("value arithmetic") {
    CHECK(V("1/2", "1") + V("1/3", "-1") == V("5/6", "0"));
    CHECK(V("3/2").times(4) == V("6"));
    CHECK(V("3").divided_by(2) == V("3/2"));
    CHECK((Value::infinity() + V("1")).is_inf());
    CHECK(V("-1/4").to_string() == "-1/4");
    CHECK(V("1/2", "0").to_string() == "(1/2,0)");
    CHECK(Value::infinity().to_string() == "inf");
}

TEST_CASE("subgroup index examples") {
    CHECK(subgroup_index(span1({Q(1, 2)}), span1({Q(1)})) == 2u);
    CHECK(subgroup_index(span1({Q(1)}), span1({Q(1)})) == 1u);
    const auto gamma = FGSubgroup::generated_by(2, std::vector<Value>{V("1/2", "0"), V("0", "1")});
    CHECK(subgroup_index(gamma, FGSubgroup::standard_lattice(2)) == 2u);
    CHECK(kind_of([&] { (void)subgroup_index(FGSubgroup::standard_lattice(2), gamma); }) == ErrorKind::Containment);
    const auto line = FGSubgroup::generated_by(2, std::vector<Value>{V("1", "0")});
    CHECK_FALSE(subgroup_index(FGSubgroup::standard_lattice(2), line).has_value());
}

TEST_CASE("initial index examples") {
    CHECK(initial_index(span1({Q(1, 3)}), span1({Q(1)})) == 3u);
    const auto z2 = FGSubgroup::standard_lattice(2);
    const auto wide = FGSubgroup::generated_by(2, std::vector<Value>{V("1/2", "0"), V("0", "1")});
    const auto fine = FGSubgroup::generated_by(2, std::vector<Value>{V("1", "0"), V("0", "1/2")});
    CHECK(initial_index(wide, z2) == 1u);
    CHECK(initial_index(fine, z2) == 2u);
}

TEST_CASE("increasing coset representatives") {
    auto r1 = increasing_coset_reps(span1({Q(1, 2)}), span1({Q(1)}));
    REQUIRE(r1);
    CHECK(r1->reps == std::vector<Value>{V("0"), V("1/2")});
    const auto z2 = FGSubgroup::standard_lattice(2);
    const auto fine = FGSubgroup::generated_by(2, std::vector<Value>{V("1", "0"), V("0", "1/2")});
    auto r2 = increasing_coset_reps(fine, z2);
    REQUIRE(r2);
    CHECK(r2->reps == std::vector<Value>{V("0", "0"), V("0", "1/2")});
    const auto wide = FGSubgroup::generated_by(2, std::vector<Value>{V("1/2", "0"), V("0", "1")});
    CHECK_FALSE(increasing_coset_reps(wide, z2).has_value());
}

TEST_CASE("subgroup basics") {
    const auto g = span1({Q(1, 2), Q(1, 3)});
    CHECK(g.least_positive() == V("1/6"));
    CHECK(g.contains(V("5/6")));
    CHECK_FALSE(g.contains(V("1/4")));
    CHECK(g.contains(span1({Q(1)})));
    CHECK(rational_to_string(parse_rational("-6/4")) == "-3/2");
}

TEST_CASE("initial index agrees with lattice enumeration (rank 2)") {
    std::mt19937_64 rng(20240611);
    auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
    auto coord = [&] { return oracle::rat(draw(-6, 6), draw(1, 6)); };
    int accepted = 0, strict = 0;
    while (accepted < 60) {
        oracle::Lattice2 gamma{{coord(), coord()}, {coord(), coord()}};
        if (gamma.u.x * gamma.v.y - gamma.u.y * gamma.v.x == 0) continue;
        const long m11 = draw(-3, 3), m12 = draw(-3, 3), m21 = draw(-3, 3), m22 = draw(-3, 3);
        const long det = m11 * m22 - m12 * m21;
        if (det == 0 || std::labs(det) > 12) continue;
        oracle::Lattice2 delta{{m11 * gamma.u.x + m12 * gamma.v.x, m11 * gamma.u.y + m12 * gamma.v.y},
                               {m21 * gamma.u.x + m22 * gamma.v.x, m21 * gamma.u.y + m22 * gamma.v.y}};
        ++accepted;
        const auto G = span2(gamma), D = span2(delta);
        CAPTURE(G.to_string());
        CAPTURE(D.to_string());
        REQUIRE(subgroup_index(G, D) == static_cast<std::uint64_t>(std::labs(det)));
        const auto eps = initial_index(G, D);
        REQUIRE(eps == oracle::initial_index2(gamma, delta));
        CHECK(eps >= 1);
        CHECK(eps <= static_cast<std::uint64_t>(std::labs(det)));
        CHECK(D.least_positive() == Value({Rational(0), oracle::least_positive_second(delta)}));
        const auto reps = increasing_coset_reps(G, D);
        CHECK(reps.has_value() == (eps == static_cast<std::uint64_t>(std::labs(det))));
        if (reps) {
            ++strict;
            REQUIRE(reps->reps.front().is_zero());
            for (std::size_t i = 0; i < reps->reps.size(); ++i) {
                const Value& r = reps->reps[i];
                CHECK(gamma.contains(r[0], r[1]));
                CHECK(below_positive_cone(D, r));
                if (i > 0) CHECK(reps->reps[i - 1] < r);
                for (std::size_t j = 0; j < i; ++j) {
                    const Value diff = r - reps->reps[j];
                    CHECK_FALSE(delta.contains(diff[0], diff[1]));
                }
            }
        }
    }
    CHECK(accepted >= 50);
    CHECK(strict > 0);
}

TEST_CASE("initial index agrees with enumeration (rank 1)") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60; ++i) {
        const Rational a = Q(static_cast<long>(rng() % 6) + 1, static_cast<long>(rng() % 6) + 1);
        const Rational b = Q(static_cast<long>(rng() % 6) + 1, static_cast<long>(rng() % 6) + 1);
        const long m = static_cast<long>(rng() % 5) + 1;
        const Rational g = oracle::rational_gcd(a, b);
        const auto G = span1({a, b});
        const auto D = span1({a * m, b * m});
        CHECK(G.least_positive() == Value({g}));
        CHECK(subgroup_index(G, D) == static_cast<std::uint64_t>(m));
        CHECK(initial_index(G, D) == oracle::initial_index1(g, g * m));
    }
}
