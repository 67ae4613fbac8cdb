// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "lattice_oracle.hpp"
#include "support.hpp"
#include "valgen/generators.hpp"
#include "valgen/key_polys.hpp"
#include "valgen/valuation.hpp"

using namespace vt;

namespace {

struct Failure {
    std::string what;
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw Failure{what};
}

std::string show(const Poly& f) { return f.to_string(); }

bool criterion_expansions(std::ostream& log) {
    for (const BaseField& k : {q2, qt2, f2}) {
        Rng rng(1000 + static_cast<int>(k.kind));
        for (int i = 0; i < 1000; ++i) {
            const Poly f = random_poly(k, rng, 5);
            const Poly q = random_monic(k, rng, 1 + static_cast<int>(rng.below(3)));
            const auto parts = q_expansion(f, q);
            Poly sum = Poly::zero(k), qp = Poly::constant(k, FieldElement::one(k));
            for (const auto& p : parts) {
                expect(p.degree() < q.degree(), "expansion coefficient too large for " + show(f));
                sum = sum + p * qp;
                qp = qp * q;
            }
            expect(sum == f, "reconstruction fails for " + show(f) + " in powers of " + show(q));
            const FieldElement c = random_element(k, rng);
            const auto taylor = q_expansion(f, Poly::x_minus(k, c));
            for (std::size_t l = 0; l < taylor.size(); ++l)
                expect(taylor[l].coeff(0) == eval_poly(hasse_derivative(f, static_cast<unsigned>(l)), c),
                       "Taylor identity fails for " + show(f));
        }
    }
    log << "3000 pairs";
    return true;
}

bool criterion_axioms(std::ostream& log) {
    for (const BaseField& k : {q2, qt2, f2}) {
        Rng rng(2000 + static_cast<int>(k.kind));
        for (int i = 0; i < 1000; ++i) {
            const FieldElement a = random_element(k, rng), b = random_element(k, rng);
            const Value va = val(k, a), vb = val(k, b), vs = val(k, a + b);
            expect(val(k, a * b) == va + vb, "v(ab) != v(a) + v(b) in " + k.name());
            expect(vs >= std::min(va, vb), "ultrametric inequality fails in " + k.name());
            expect(va == vb || vs == std::min(va, vb), "strict triangle equality fails in " + k.name());
            expect(va.is_inf() == a.is_zero(), "v(a) = inf iff a = 0 fails");
        }
    }
    for (const auto& e : catalogue()) {
        Rng rng(2100);
        for (int i = 0; i < 1000; ++i) {
            Poly f, g;
            do f = random_poly(e->base(), rng, e->degree() - 1);
            while (f.is_zero());
            do g = random_poly(e->base(), rng, e->degree() - 1);
            while (g.is_zero());
            const Value vf = nu_eval(*e, f), vg = nu_eval(*e, g), vs = nu_eval(*e, f + g);
            expect(nu_eval(*e, f * g) == vf + vg, "nu not multiplicative on " + show(f) + ", " + show(g));
            expect(vs >= std::min(vf, vg), "nu ultrametric inequality fails");
            expect(vf == vg || vs == std::min(vf, vg), "nu strict triangle equality fails");
        }
    }
    log << "3 fields and 4 extensions, 1000 pairs each";
    return true;
}

bool criterion_initial_index(std::ostream& log) {
    const auto z2 = FGSubgroup::standard_lattice(2);
    const auto wide = FGSubgroup::generated_by(2, std::vector<Value>{V("1/2", "0"), V("0", "1")});
    const auto fine = FGSubgroup::generated_by(2, std::vector<Value>{V("1", "0"), V("0", "1/2")});
    expect(initial_index(wide, z2) == 1 && subgroup_index(wide, z2) == 2u, "(1/2)Z x Z over Z^2");
    expect(initial_index(fine, z2) == 2 && subgroup_index(fine, z2) == 2u, "Z x (1/2)Z over Z^2");

    std::mt19937_64 rng(3000);
    auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
    auto coord = [&] { return oracle::rat(draw(-6, 6), draw(1, 6)); };
    int cases = 0;
    while (cases < 60) {
        oracle::Lattice2 g{{coord(), coord()}, {coord(), coord()}};
        if (g.u.x * g.v.y - g.u.y * g.v.x == 0) continue;
        const long a = draw(-3, 3), b = draw(-3, 3), c = draw(-3, 3), d = draw(-3, 3);
        const long det = a * d - b * c;
        if (det == 0 || std::labs(det) > 12) continue;
        oracle::Lattice2 h{{a * g.u.x + b * g.v.x, a * g.u.y + b * g.v.y}, {c * g.u.x + d * g.v.x, c * g.u.y + d * g.v.y}};
        const auto G = FGSubgroup::generated_by(2, std::vector<Value>{Value({g.u.x, g.u.y}), Value({g.v.x, g.v.y})});
        const auto D = FGSubgroup::generated_by(2, std::vector<Value>{Value({h.u.x, h.u.y}), Value({h.v.x, h.v.y})});
        expect(initial_index(G, D) == oracle::initial_index2(g, h), "initial index mismatch for " + G.to_string() +
                                                                        " over " + D.to_string());
        ++cases;
    }
    for (int i = 0; i < 20; ++i) {
        const Rational step = oracle::rat(draw(1, 6), draw(1, 6));
        const long m = draw(1, 6);
        const auto G = FGSubgroup::generated_by(1, std::vector<Value>{Value({step})});
        const auto D = FGSubgroup::generated_by(1, std::vector<Value>{Value({step * m})});
        expect(initial_index(G, D) == oracle::initial_index1(step, step * m), "rank-one initial index mismatch");
        ++cases;
    }
    log << cases << " subgroup pairs";
    return true;
}

bool criterion_monotone_chain(std::ostream& log) {
    for (const auto& e : {quad7(), as2()}) {
        const auto nu = PolyValuation::evaluation(e);
        Rng rng(4000);
        for (int s = 0; s < 200; ++s) {
            Poly f;
            do f = random_poly(e->base(), rng, 3);
            while (f.is_zero());
            Value prev = Value::zero(e->base().rank());
            for (std::size_t k = 0; k <= 8; ++k) {
                const Value cur = eval_valuation(truncate(nu, Poly::x_minus(e->base(), e->approximant(k))), f);
                expect(k == 0 || prev <= cur, "chain decreases at k = " + std::to_string(k) + " for " + show(f));
                prev = cur;
            }
            expect(prev <= nu_eval(*e, f), "truncation exceeds nu for " + show(f));
        }
    }
    log << "200 samples on each plateau entry";
    return true;
}

bool criterion_plateaus(std::ostream& log) {
    const auto as = as2();
    const auto r = plateau_scan(*as, 1, 8);
    for (std::size_t k = 0; k <= 8; ++k)
        expect(as->root_distance(as->approximant(k)) == Value({Rational(-1, 1L << (k + 2))}),
               "v(eta - c_k) != -1/2^(k+2) at k = " + std::to_string(k));
    expect(r.is_plateau() && r.plateau_defect == 2u, "d(Psi_1) != 2 for the Artin-Schreier entry");
    const auto inv = invariants_report(*as);
    unsigned product = 1;
    for (const auto& p : inv.plateaus)
        if (p.is_plateau()) product *= *p.plateau_defect;
    expect(static_cast<int>(product) == as->declared().d && inv.d == 2, "plateau product != declared d");
    const auto q = plateau_scan(*quad7(), 1, 8);
    expect(q.is_plateau() && q.plateau_defect == 1u, "d(Psi_1) != 1 for x^2 + 7");
    for (const auto& e : {sqrt2(), sqrt_t()}) {
        expect(plateau_scan(*e, 1, 8).has_max, "pure radical reports a plateau");
        for (const auto& p : invariants_report(*e).plateaus) expect(!p.is_plateau(), "pure radical reports a plateau");
    }
    log << "d(Psi_1) = 2, 1 and none";
    return true;
}

bool criterion_epsilon(std::ostream& log) {
    int covered = 0;
    for (const auto& e : catalogue()) {
        const auto nu = PolyValuation::evaluation(e);
        Rng rng(6000);
        for (int i = 0; i < 200; ++i) {
            RootData data;
            const std::size_t count = 1 + rng.below(3);
            for (std::size_t j = 0; j < count; ++j) {
                const FieldElement c = rng.chance(1, 2) ? e->approximant(rng.below(std::min<std::size_t>(e->approximant_count(), 10)))
                                                        : random_element(e->base(), rng);
                data.roots.emplace_back(c, 1 + static_cast<unsigned>(rng.below(2)));
            }
            const Poly f = root_product(*e, data);
            expect(epsilon_root(*e, data) == epsilon_hasse(nu, f), "epsilon mismatch on " + show(f));
            if (data.roots.size() == 1) expect(epsilon_root(*e, f) == epsilon_root(*e, data), "polynomial route disagrees");
            ++covered;
        }
    }
    log << covered << " covered polynomials";
    return true;
}

void verify_end_to_end(const ExtensionPtr& e, const std::vector<Poly>& qset, const std::vector<LElement>& samples) {
    const auto rep = verify_module_generation(*e, qset, samples);
    expect(rep.verified == samples.size(), "not every sample verified");
    const auto qvals = qset_values(*e, qset);
    const BaseField& k = e->base();
    for (const auto& sv : rep.samples) {
        Poly sum = Poly::zero(k);
        Value least = Value::infinity();
        for (std::size_t i = 0; i < sv.terms.size(); ++i) {
            sum = sum + term_poly(k, qset, sv.terms[i]);
            least = std::min(least, term_value(*e, qvals, sv.terms[i]));
            expect(val(k, sv.rescaled[i]) >= Value::zero(k.rank()), "negative rescaled coefficient");
            expect(sv.rescaled[i] == sv.terms[i].coeff * sv.scalers[i].a, "rescaled coefficient mismatch");
        }
        expect(sum == sv.sample.rep(), "expansion does not reconstruct " + sv.sample.to_string());
        expect(least == nu_eval(*e, sv.sample.rep()), "min property fails for " + sv.sample.to_string());
    }
}

bool criterion_end_to_end(std::ostream& log) {
    const auto s = sqrt2();
    const auto inv_s = invariants_report(*s);
    expect(inv_s.e == 2 && inv_s.epsilon == 2, "x^2 - 2 should have e = epsilon = 2");
    verify_end_to_end(s, {Poly::x(q2)}, integral_samples(s, 200, 0));
    const auto q = quad7();
    const auto inv_q = invariants_report(*q);
    expect(inv_q.e == 1 && inv_q.epsilon == 1, "x^2 + 7 should have e = epsilon = 1");
    const auto samples = integral_samples(q, 200, 0);
    std::vector<Poly> reps;
    for (const auto& b : samples) reps.push_back(b.rep());
    verify_end_to_end(q, adaptive_qset(*q, reps, 8), samples);
    log << "400 samples, 0 failures";
    return true;
}

bool criterion_pure_case(std::ostream& log) {
    const auto q = quad7();
    const auto pc = pure_case_certificate(*q, 8);
    expect(!pc.certificates.empty(), "no certificates");
    const unsigned d = *pc.plateau_defect;
    const int n = q->degree();
    for (const auto& c : pc.certificates) {
        const std::string at = " at k = " + std::to_string(c.k);
        expect(c.h.val() == V("0"), "v(h) != 0" + at);
        expect((c.h - LElement::from_base(q, E(q2, "1"))).val() > V("0"), "v(h - 1) <= 0" + at);
        const LElement lhs = LElement(q, Poly::x_minus(q2, c.c)) * c.h + LElement::from_base(q, c.b_values.at(0));
        expect(lhs.is_zero(), "(eta - c) h + b_0 != 0" + at);
        const Value dist = q->root_distance(c.c);
        std::vector<Value> beta;
        for (int l = 0; l <= n; ++l) beta.push_back(val(q2, eval_poly(hasse_derivative(q->g(), static_cast<unsigned>(l)), c.c)));
        for (int l = static_cast<int>(d) + 1; l <= n; ++l)
            expect(beta[d] + dist.times(static_cast<long>(d)) < beta[l] + dist.times(l), "beta inequality fails" + at);
    }
    log << pc.certificates.size() << " certificates from k = " << *pc.translate_k;
    return true;
}

bool criterion_knaf(std::ostream& log) {
    // x^2 - 2: value group of L from nu(eta), index and initial index by enumeration.
    const auto s = sqrt2();
    const Value vs = nu_eval(*s, Poly::x(q2));
    const Rational g = oracle::rational_gcd(Rational(1), vs[0]);
    const unsigned long e_s = mpz_class(Rational(1) / g).get_ui();
    const unsigned long eps_s = oracle::initial_index1(g, Rational(1));
    const bool knaf_s = e_s == eps_s && plateau_scan(*s, 1, 8).has_max;
    expect(e_s == 2 && eps_s == 2 && knaf_s, "x^2 - 2 verdict");
    expect(invariants_report(*s).knaf == knaf_s, "library disagrees on x^2 - 2");

    // x^2 - t: vL = Z^2 + Z (1/2, 0).
    const auto t = sqrt_t();
    const Value vt = nu_eval(*t, Poly::x(qt2));
    oracle::Lattice2 gamma{{vt[0], vt[1]}, {0, 1}}, delta{{1, 0}, {0, 1}};
    expect(gamma.contains(1, 0), "vL must contain vK");
    const unsigned long eps_t = oracle::initial_index2(gamma, delta);
    const mpq_class det = gamma.u.x * gamma.v.y - gamma.u.y * gamma.v.x;
    const unsigned long e_t = mpz_class(1 / abs(det)).get_ui();
    expect(e_t == 2 && eps_t == 1, "x^2 - t: expected e = 2, epsilon = 1");
    expect(!invariants_report(*t).knaf, "library disagrees on x^2 - t");

    // x^2 + x + 1/t: defect from the plateau scan.
    const auto as = as2();
    const auto pr = plateau_scan(*as, 1, 8);
    expect(pr.is_plateau() && pr.plateau_defect == 2u, "x^2 + x + 1/t: expected d = 2");
    expect(!invariants_report(*as).knaf, "library disagrees on x^2 + x + 1/t");
    log << "true / false (epsilon < e) / false (d = 2)";
    return true;
}

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(VALGEN_CLI) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool criterion_cli(std::ostream& log) {
    const std::string dir = SPEC_DIR;
    const std::vector<std::string> golden{
        "analyze --spec " + dir + "/sqrt2.json",          "analyze --spec " + dir + "/sqrt_t.json",
        "analyze --spec " + dir + "/quadratic7.json",     "analyze --spec " + dir + "/artin_schreier.json",
        "generators --spec " + dir + "/sqrt2.json",       "generators --spec " + dir + "/quadratic7.json",
        "expand --spec " + dir + "/expand_sqrt2.json",    "expand --spec " + dir + "/quadratic7.json --samples 20",
        "selftest"};
    for (const auto& args : golden) {
        const RunResult first = run(args);
        expect(first.status == 0, "exit " + std::to_string(first.status) + " for " + args);
        expect(!first.out.empty(), "no output for " + args);
        for (int i = 0; i < 2; ++i) expect(run(args).out == first.out, "output differs between runs of " + args);
    }
    expect(run("analyze --spec " + dir + "/malformed.json").status == 2, "malformed spec must exit 2");
    expect(run("generators --spec " + dir + "/artin_schreier.json").status == 4, "defect entry must exit 4");
    expect(run("generators --spec " + dir + "/sqrt_t.json").status == 4, "epsilon < e entry must exit 4");
    log << golden.size() << " configurations x 3 runs";
    return true;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(std::ostream&)>>> criteria{
        {"q-expansion reconstruction and Taylor/Hasse identity", criterion_expansions},
        {"valuation axioms on base fields and extensions", criterion_axioms},
        {"initial index against lattice enumeration", criterion_initial_index},
        {"truncation chain is monotone and below nu", criterion_monotone_chain},
        {"plateau and defect reproduction", criterion_plateaus},
        {"epsilon cross-oracle", criterion_epsilon},
        {"module generation end to end", criterion_end_to_end},
        {"pure-case h-certificate for x^2 + 7", criterion_pure_case},
        {"Knaf verdicts from independent computations", criterion_knaf},
        {"CLI determinism and exit codes", criterion_cli},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::ostringstream log;
        bool ok = false;
        try {
            ok = criteria[i].second(log);
        } catch (const Failure& f) {
            log << f.what;
        } catch (const std::exception& e) {
            log << "exception: " << e.what();
        }
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << log.str() << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
