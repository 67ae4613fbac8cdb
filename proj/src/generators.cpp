#include "valgen/generators.hpp"

#include <algorithm>

#include "valgen/error.hpp"

namespace valgen {

namespace {

FieldElement power(const BaseField& k, const FieldElement& a, unsigned n) {
    if (n == 0) return FieldElement::one(k);
    return a.pow(static_cast<long>(n));
}

std::string over(const std::string& num, const FieldElement& a) {
    const bool compound = num.find(' ') != std::string::npos;
    return (compound ? "(" + num + ")" : num) + "/" + a.to_string();
}

void check_samples_integral(const std::vector<LElement>& samples) {
    for (const auto& b : samples)
        if (b.val() < Value::zero(b.ext()->base().rank()))
            fail(ErrorKind::Argument, "sample " + b.to_string() + " has negative value, so it is not in O_L");
}

SampleVerification verify_one(const ExtensionEntry& ext, const std::vector<Poly>& qset, const std::vector<Value>& qvals,
                              const CosetReps& reps, bool product_scalers, const std::vector<FieldElement>& a_i,
                              const LElement& b) {
    const BaseField& k = ext.base();
    SampleVerification sv{b, b.val(), expand_min_monomials(ext, b.rep(), qset), {}, {}};

    Poly sum = Poly::zero(k);
    Value least = Value::infinity();
    for (const auto& t : sv.terms) {
        sum = sum + term_poly(k, qset, t);
        const Value tv = term_value(ext, qvals, t);
        if (tv < least) least = tv;

        Scaler s = choose_scaler(ext, t.exponents, qvals, reps);
        if (product_scalers) {
            FieldElement prod = FieldElement::one(k);
            for (const auto& [i, e] : t.exponents) prod = prod * power(k, a_i[i], e);
            if (val(k, prod) != val(k, s.a))
                fail(ErrorKind::Integrity, "product scaler disagrees with the coset scaler");
            s.a = prod;
        }
        const FieldElement r = t.coeff * s.a;
        if (val(k, r) < Value::zero(k.rank()))
            fail(ErrorKind::Integrity, "rescaled coefficient " + r.to_string() + " of " + b.to_string() +
                                           " has negative value " + val(k, r).to_string());
        sv.scalers.push_back(std::move(s));
        sv.rescaled.push_back(r);
    }
    if (!(sum == b.rep())) fail(ErrorKind::Integrity, "monomial expansion does not reconstruct " + b.to_string());
    if (least != sv.nu)
        fail(ErrorKind::Integrity, "monomial expansion of " + b.to_string() + " loses the min property: " +
                                       least.to_string() + " vs " + sv.nu.to_string());
    return sv;
}

}  // namespace

const char* to_string(FamilyMode m) noexcept {
    switch (m) {
    case FamilyMode::Module: return "module";
    case FamilyMode::RingE1: return "ring_e1";
    case FamilyMode::PureLocalized: return "pure_localized";
    }
    return "?";
}

std::vector<Value> qset_values(const ExtensionEntry& ext, const std::vector<Poly>& qset) {
    std::vector<Value> out;
    out.reserve(qset.size());
    for (const auto& q : qset) {
        if (q.degree() < 1 || !q.is_monic()) fail(ErrorKind::Argument, "Qset members are monic and nonconstant");
        out.push_back(nu_eval(ext, q));
    }
    return out;
}

Value exponent_value(const std::vector<Value>& qvals, const ExponentMap& lambda) {
    Value v = qvals.empty() ? Value() : Value::zero(qvals.front().is_inf() ? 1 : qvals.front().rank());
    for (const auto& [i, e] : lambda) {
        if (i >= qvals.size()) fail(ErrorKind::Argument, "exponent index outside the Qset");
        if (e) v = v + qvals[i].times(static_cast<long>(e));
    }
    return v;
}

Value term_value(const ExtensionEntry& ext, const std::vector<Value>& qvals, const MonomialTerm& t) {
    Value v = val(ext.base(), t.coeff);
    for (const auto& [i, e] : t.exponents)
        if (e) v = v + qvals.at(i).times(static_cast<long>(e));
    return v;
}

Poly exponent_poly(const BaseField& k, const std::vector<Poly>& qset, const ExponentMap& lambda) {
    Poly p = Poly::constant(k, FieldElement::one(k));
    for (const auto& [i, e] : lambda) p = p * qset.at(i).pow(e);
    return p;
}

Poly term_poly(const BaseField& k, const std::vector<Poly>& qset, const MonomialTerm& t) {
    return exponent_poly(k, qset, t.exponents).scaled(t.coeff);
}

std::vector<MonomialTerm> expand_min_monomials(const ExtensionEntry& ext, const Poly& f, const std::vector<Poly>& qset) {
    if (!(f.base() == ext.base())) fail(ErrorKind::FieldMismatch, "polynomial over a different base field");
    if (f.degree() >= ext.degree()) fail(ErrorKind::Argument, "expansion needs deg f < deg g");
    if (f.is_zero()) return {};
    if (f.degree() == 0) return {MonomialTerm{f.coeff(0), {}}};

    const auto idx = find_exact_truncation(ext, qset, f, nu_eval(ext, f));
    if (!idx) fail(ErrorKind::IncompleteSet, "no member of the Qset truncates " + f.to_string() + " exactly");
    const auto parts = q_expansion(f, qset[*idx]);
    std::vector<MonomialTerm> out;
    for (std::size_t l = 0; l < parts.size(); ++l) {
        if (parts[l].is_zero()) continue;
        for (auto& t : expand_min_monomials(ext, parts[l], qset)) {
            if (l > 0) t.exponents[*idx] += static_cast<unsigned>(l);
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<Poly> approximant_qset(const ExtensionEntry& ext, std::size_t depth) {
    std::vector<Poly> out;
    const std::size_t top = std::min(depth, ext.approximant_count() - 1);
    for (std::size_t i = 0; i <= top; ++i) out.push_back(Poly::x_minus(ext.base(), ext.approximant(i)));
    return out;
}

std::vector<Poly> adaptive_qset(const ExtensionEntry& ext, const std::vector<Poly>& samples, std::size_t min_depth) {
    std::size_t depth = std::min(min_depth, ext.approximant_count() - 1);
    std::vector<Poly> qset = approximant_qset(ext, depth);
    for (const auto& f : samples) {
        if (f.degree() < 1) continue;
        const Value nu = nu_eval(ext, f);
        while (!find_exact_truncation(ext, qset, f, nu)) {
            if (depth + 1 >= ext.approximant_count())
                fail(ErrorKind::IncompleteSet, "catalogue approximants exhausted for " + f.to_string());
            ++depth;
            qset.push_back(Poly::x_minus(ext.base(), ext.approximant(depth)));
        }
    }
    return qset;
}

std::optional<CosetReps> extension_coset_reps(const ExtensionEntry& ext, int depth) {
    const InvariantsReport inv = invariants_report(ext, depth);
    const BaseField& k = ext.base();
    if (!k.has_fg_value_group()) {
        if (inv.e != 1) return std::nullopt;
        return CosetReps{{Value::zero(1)}};
    }
    std::vector<Value> gens = k.value_group().basis();
    gens.insert(gens.end(), inv.generating_values.begin(), inv.generating_values.end());
    return increasing_coset_reps(FGSubgroup::generated_by(k.rank(), gens), k.value_group());
}

Scaler choose_scaler(const ExtensionEntry& ext, const ExponentMap& lambda, const std::vector<Value>& qvals,
                     const CosetReps& reps) {
    const BaseField& k = ext.base();
    Value v = Value::zero(k.rank());
    for (const auto& [i, e] : lambda)
        if (e) v = v + qvals.at(i).times(static_cast<long>(e));
    if (v.is_inf()) fail(ErrorKind::Argument, "nu(Q^lambda) is infinite");
    std::optional<Scaler> found;
    for (std::size_t j = 0; j < reps.reps.size(); ++j) {
        const Value diff = v - reps.reps[j];
        if (!k.value_in_group(diff)) continue;
        if (found) fail(ErrorKind::Integrity, "two coset representatives match " + v.to_string());
        found = Scaler{element_with_value(k, diff), j, reps.reps[j]};
    }
    if (!found) fail(ErrorKind::Integrity, "no coset representative matches " + v.to_string());
    return *found;
}

GeneratorFamily module_family(const ExtensionEntry& ext, const std::vector<Poly>& qset, const CosetReps& reps) {
    const BaseField& k = ext.base();
    const ExtensionPtr self = ext.shared_from_this();
    const auto qvals = qset_values(ext, qset);
    GeneratorFamily fam{FamilyMode::Module, {}, reps};
    fam.gens.push_back(Generator{"1", LElement::from_base(self, FieldElement::one(k)), FieldElement::one(k),
                                 Value::zero(k.rank()), ExponentMap{}});
    for (std::size_t i = 0; i < qset.size(); ++i) {
        if (qset[i].degree() >= ext.degree()) continue;
        const ExponentMap lambda{{i, 1u}};
        const Scaler s = choose_scaler(ext, lambda, qvals, reps);
        LElement num(self, qset[i]);
        fam.gens.push_back(Generator{over(num.to_string(), s.a), num, s.a, s.residual, lambda});
    }
    return fam;
}

ModuleReport verify_module_generation(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                      const std::vector<LElement>& samples) {
    const auto reps = extension_coset_reps(ext);
    if (!reps) fail(ErrorKind::NotApplicable, "initial index is smaller than the ramification index");
    check_samples_integral(samples);
    const auto qvals = qset_values(ext, qset);
    const bool e1 = reps->reps.size() == 1;
    std::vector<FieldElement> a_i;
    if (e1)
        for (const auto& v : qvals) a_i.push_back(element_with_value(ext.base(), v));

    ModuleReport rep;
    rep.total = samples.size();
    for (const auto& b : samples) {
        rep.samples.push_back(verify_one(ext, qset, qvals, *reps, e1, a_i, b));
        ++rep.verified;
    }
    return rep;
}

RingE1Result ring_generators_e1(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                const std::vector<LElement>& samples) {
    const InvariantsReport inv = invariants_report(ext);
    if (inv.e != 1) fail(ErrorKind::NotApplicable, "ring generators of this shape need e = 1, got e = " + std::to_string(inv.e));
    const BaseField& k = ext.base();
    const ExtensionPtr self = ext.shared_from_this();
    const auto qvals = qset_values(ext, qset);
    RingE1Result res;
    res.family.mode = FamilyMode::RingE1;
    res.family.coset_reps = CosetReps{{Value::zero(k.rank())}};
    for (std::size_t i = 0; i < qset.size(); ++i) {
        const FieldElement a = element_with_value(k, qvals[i]);
        LElement num(self, qset[i]);
        res.family.gens.push_back(
            Generator{over(num.to_string(), a), num, a, Value::zero(k.rank()), ExponentMap{{i, 1u}}});
    }
    res.verification = verify_module_generation(ext, qset, samples);
    return res;
}

PureCaseResult pure_case_certificate(const ExtensionEntry& ext, int depth) {
    const InvariantsReport inv = invariants_report(ext, std::max(depth, 2));
    if (!inv.knaf)
        fail(ErrorKind::NotApplicable, "the Knaf condition fails (e = " + std::to_string(inv.e) + ", eps = " +
                                           std::to_string(inv.epsilon) + ", d = " + std::to_string(inv.d) + ")");
    if (!inv.pure) fail(ErrorKind::NotApplicable, "extension is not pure");
    const BaseField& k = ext.base();
    const ExtensionPtr self = ext.shared_from_this();
    PureCaseResult res;
    res.family.mode = FamilyMode::PureLocalized;

    if (!ext.plateau_kind()) {
        const auto reps = extension_coset_reps(ext, depth);
        if (!reps) fail(ErrorKind::NotApplicable, "no increasing coset representatives");
        res.family.coset_reps = *reps;
        const unsigned e = ext.radical_exponent();
        const std::vector<Value> qvals{ext.v_eta()};
        for (unsigned l = 1; l <= e; ++l) {
            const Scaler s = choose_scaler(ext, ExponentMap{{0, l}}, qvals, *reps);
            LElement num = LElement::eta(self).pow(l);
            const std::string eta = l == 1 ? "eta" : "eta^" + std::to_string(l);
            res.family.gens.push_back(Generator{eta + "/" + s.a.to_string(), num, s.a, s.residual, ExponentMap{{0, l}}});
        }
        return res;
    }

    const PlateauReport pr = plateau_scan(ext, 1, depth);
    res.plateau_defect = pr.plateau_defect;
    const unsigned dpl = *pr.plateau_defect;
    const int n = ext.degree();
    const std::size_t top = static_cast<std::size_t>(depth);

    auto betas_at = [&](std::size_t i) {
        std::vector<Value> beta;
        for (int l = 0; l <= n; ++l)
            beta.push_back(val(k, eval_poly(hasse_derivative(ext.g(), static_cast<unsigned>(l)), ext.approximant(i))));
        return beta;
    };
    std::vector<std::vector<Value>> betas;
    for (std::size_t i = 0; i <= top; ++i) betas.push_back(betas_at(i));
    std::size_t beta_stable = top;
    while (beta_stable > 1 && std::equal(betas[beta_stable - 1].begin() + 1, betas[beta_stable - 1].end(),
                                         betas[top].begin() + 1))
        --beta_stable;

    // v(eta - c) must exceed (beta_1 - beta_l)/(l - 1) for every l >= 2.
    const std::vector<Value>& bs = betas[top];
    std::optional<Value> bound;
    for (int l = 2; l <= n; ++l) {
        if (bs[l].is_inf()) continue;
        const Value q = (bs[1] - bs[l]).divided_by(static_cast<long>(l - 1));
        if (!bound || *bound < q) bound = q;
    }
    std::optional<std::size_t> k0;
    for (std::size_t i = std::max(beta_stable, *pr.stabilization_k); i <= top; ++i)
        if (!bound || *bound < ext.approximant_distance(i)) {
            k0 = i;
            break;
        }
    if (!k0) fail(ErrorKind::Argument, "depth " + std::to_string(depth) + " is not past the certificate threshold");
    res.translate_k = k0;

    const FieldElement cbar = ext.approximant(*k0);
    const FieldElement a = element_with_value(k, ext.approximant_distance(*k0));
    const LElement y(self, Poly::x_minus(k, cbar).scaled(a.inverse()));
    res.family.coset_reps = CosetReps{{Value::zero(k.rank())}};
    res.family.gens.push_back(Generator{over(LElement(self, Poly::x_minus(k, cbar)).to_string(), a),
                                        LElement(self, Poly::x_minus(k, cbar)), a, y.val(), std::nullopt});

    const Value zero = Value::zero(k.rank());
    for (std::size_t j = *k0; j <= top; ++j) {
        HCertificate cert;
        cert.k = j;
        cert.c = ext.approximant(j);
        cert.distance = ext.approximant_distance(j);
        std::vector<FieldElement> dg;
        for (int l = 0; l <= n; ++l) dg.push_back(eval_poly(hasse_derivative(ext.g(), static_cast<unsigned>(l)), cert.c));
        if (dg[1].is_zero()) fail(ErrorKind::Integrity, "dg(c) vanishes at c_" + std::to_string(j));
        for (const auto& x : dg) cert.b_values.push_back(x / dg[1]);

        const Poly lin = Poly::x_minus(k, cert.c);
        Poly hp = Poly::constant(k, FieldElement::one(k));
        for (int l = 2; l <= n; ++l) hp = hp + lin.pow(static_cast<unsigned>(l - 1)).scaled(cert.b_values[l]);
        cert.h = LElement(self, hp);
        cert.h_value = cert.h.val();
        cert.h_minus_one_value = (cert.h - LElement::from_base(self, FieldElement::one(k))).val();
        cert.b0_value = val(k, cert.b_values[0]);
        cert.identity_residual = LElement(self, lin * hp + Poly::constant(k, cert.b_values[0]));

        if (cert.h_value != zero) fail(ErrorKind::Integrity, "v(h) = " + cert.h_value.to_string() + " at c_" + std::to_string(j));
        if (!(zero < cert.h_minus_one_value))
            fail(ErrorKind::Integrity, "v(h - 1) = " + cert.h_minus_one_value.to_string() + " at c_" + std::to_string(j));
        if (!cert.identity_residual.is_zero()) fail(ErrorKind::Integrity, "(eta - c) h + b_0 is not zero in L");
        if (cert.b0_value != cert.distance) fail(ErrorKind::Integrity, "v(b_0) differs from v(eta - c)");

        const FieldElement shift = cbar - cert.c;
        for (int l = 2; l <= n; ++l)
            for (int jj = 0; jj <= l - 1; ++jj) {
                const FieldElement term = FieldElement::from_integer(k, binomial(static_cast<unsigned>(l - 1), static_cast<unsigned>(jj))) *
                                          cert.b_values[l] * power(k, a, static_cast<unsigned>(jj)) *
                                          power(k, shift, static_cast<unsigned>(l - 1 - jj));
                const Value tv = val(k, term);
                if (!(zero < tv))
                    fail(ErrorKind::Integrity, "binomial ledger term (" + std::to_string(l) + "," + std::to_string(jj) +
                                                   ") has value " + tv.to_string());
                cert.ledger.push_back(LedgerEntry{static_cast<unsigned>(l), static_cast<unsigned>(jj), term, tv});
            }

        const Value bd = val(k, dg[dpl]);
        const Value lhs = bd + cert.distance.times(static_cast<long>(dpl));
        for (int l = static_cast<int>(dpl) + 1; l <= n; ++l) {
            const Value rhs = val(k, dg[l]) + cert.distance.times(static_cast<long>(l));
            if (!(lhs < rhs)) fail(ErrorKind::Integrity, "beta inequality fails for l = " + std::to_string(l));
            cert.beta_checks.push_back(BetaCheck{static_cast<unsigned>(l), lhs, rhs});
        }
        res.certificates.push_back(std::move(cert));
    }
    return res;
}

}  // namespace valgen
