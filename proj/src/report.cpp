#include "report.hpp"

#include <functional>
#include <set>

#include "valgen/error.hpp"
#include "valgen/sampling.hpp"

namespace valgen {

using nlohmann::json;

namespace {

constexpr std::size_t kExampleCount = 3;

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorKind::Spec, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    for (const auto& [k, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) fail(ErrorKind::Spec, "unknown key \"" + k + "\" in " + where);
    }
}

int need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer()) fail(ErrorKind::Spec, std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string need_string(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_string()) fail(ErrorKind::Spec, std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

Poly parse_poly_json(const BaseField& k, const json& j) {
    if (!j.is_object()) fail(ErrorKind::Spec, "\"poly\" must be an object");
    only_keys(j, {"coeffs"}, "poly");
    const json& c = need(j, "coeffs");
    if (!c.is_array()) fail(ErrorKind::Spec, "\"coeffs\" must be an array of strings");
    std::vector<std::string> cs;
    for (const auto& x : c) {
        if (!x.is_string()) fail(ErrorKind::Spec, "\"coeffs\" must be an array of strings");
        cs.push_back(x.get<std::string>());
    }
    return parse_poly(k, cs);
}

std::string str(const Rational& q) { return rational_to_string(q); }

json exponents_json(const ExponentMap& m) {
    json j = json::object();
    for (const auto& [i, e] : m)
        if (e) j[std::to_string(i)] = e;
    return j;
}

json verification_json(const ExtensionEntry& ext, const ModuleReport& rep) {
    json j;
    j["total"] = rep.total;
    j["verified"] = rep.verified;
    j["failures"] = rep.total - rep.verified;
    std::optional<Value> least;
    for (const auto& s : rep.samples)
        for (const auto& r : s.rescaled) {
            const Value v = val(ext.base(), r);
            if (!least || v < *least) least = v;
        }
    j["min_rescaled_value"] = least ? to_json(*least) : json(nullptr);
    json ex = json::array();
    for (std::size_t i = 0; i < rep.samples.size() && i < kExampleCount; ++i) {
        const auto& s = rep.samples[i];
        json e;
        e["sample"] = s.sample.to_string();
        e["nu"] = to_json(s.nu);
        json terms = json::array();
        for (std::size_t t = 0; t < s.terms.size(); ++t) {
            json tj;
            tj["coeff"] = s.terms[t].coeff.to_string();
            tj["exponents"] = exponents_json(s.terms[t].exponents);
            tj["scaler"] = s.scalers[t].a.to_string();
            tj["coset"] = s.scalers[t].coset;
            tj["rescaled"] = s.rescaled[t].to_string();
            tj["rescaled_value"] = to_json(val(ext.base(), s.rescaled[t]));
            terms.push_back(std::move(tj));
        }
        e["terms"] = std::move(terms);
        ex.push_back(std::move(e));
    }
    j["examples"] = std::move(ex);
    return j;
}

json qset_json(const std::vector<Poly>& qset) {
    json j = json::array();
    for (const auto& q : qset) j.push_back(q.to_string());
    return j;
}

std::vector<Poly> expansion_qset(const ExtensionEntry& ext, const std::vector<Poly>& fs, int depth) {
    if (!ext.plateau_kind()) return {Poly::x(ext.base())};
    return adaptive_qset(ext, fs, static_cast<std::size_t>(std::max(depth, 0)));
}

}  // namespace

BaseField parse_field(const json& j) {
    if (!j.is_object()) fail(ErrorKind::Spec, "\"field\" must be an object");
    only_keys(j, {"field", "p"}, "field");
    const std::string name = need_string(j, "field");
    const int p = need_int(j, "p");
    if (p < 2) fail(ErrorKind::Spec, "p must be a prime");
    const auto up = static_cast<std::uint32_t>(p);
    if (name == "Qp") return BaseField::qp(up);
    if (name == "QtComposite") return BaseField::qt_composite(up);
    if (name == "FpTPerfected") return BaseField::perfected(up);
    fail(ErrorKind::Spec, "unknown field \"" + name + "\"");
}

LoadedSpec load_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Spec, std::string("spec is not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) fail(ErrorKind::Spec, "spec must be a JSON object");
        only_keys(j, {"kind", "field", "e", "a", "declared", "poly"}, "spec");
        const std::string kind = need_string(j, "kind");
        const BaseField k = parse_field(need(j, "field"));
        std::optional<Declared> dec;
        if (j.contains("declared")) {
            const json& d = j.at("declared");
            if (!d.is_object()) fail(ErrorKind::Spec, "\"declared\" must be an object");
            only_keys(d, {"f", "d", "henselian_degree"}, "declared");
            dec = Declared{need_int(d, "f"), need_int(d, "d"), need_int(d, "henselian_degree")};
        }
        LoadedSpec out;
        if (kind == "pure_radical") {
            const int e = need_int(j, "e");
            if (e < 2) fail(ErrorKind::Spec, "pure_radical needs e >= 2");
            out.ext = ExtensionEntry::pure_radical(k, static_cast<unsigned>(e), parse_element(k, need_string(j, "a")), dec);
        } else {
            if (j.contains("e") || j.contains("a")) fail(ErrorKind::Spec, "\"e\" and \"a\" only apply to pure_radical");
            if (kind == "dense_quadratic")
                out.ext = ExtensionEntry::dense_quadratic(k, dec);
            else if (kind == "artin_schreier_defect")
                out.ext = ExtensionEntry::artin_schreier_defect(k, dec);
            else
                fail(ErrorKind::Spec, "unknown extension kind \"" + kind + "\"");
        }
        if (j.contains("poly")) out.poly = parse_poly_json(k, j.at("poly"));
        return out;
    } catch (const json::exception& e) {
        fail(ErrorKind::Spec, std::string("malformed spec: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Spec) throw;
        fail(ErrorKind::Spec, std::string("invalid spec: ") + e.what());
    }
}

json to_json(const Value& v) {
    if (v.is_inf()) return "inf";
    json j = json::array();
    for (const auto& c : v.coords()) j.push_back(str(c));
    return j;
}

Value value_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Value::infinity();
    if (!j.is_array() || j.empty() || j.size() > 2) fail(ErrorKind::Spec, "a value is \"inf\" or an array of 1 or 2 rationals");
    std::vector<Rational> c;
    for (const auto& x : j) {
        if (!x.is_string()) fail(ErrorKind::Spec, "value coordinates are rational strings");
        c.push_back(parse_rational(x.get<std::string>()));
    }
    return Value(std::move(c));
}

json to_json(const PlateauReport& r) {
    json j;
    j["m"] = r.m;
    j["empty"] = r.empty;
    j["is_plateau"] = r.is_plateau();
    j["has_max"] = r.has_max;
    json vs = json::array();
    for (const auto& v : r.value_samples) vs.push_back(to_json(v));
    j["value_samples"] = std::move(vs);
    j["limit_poly"] = r.limit_poly ? json(r.limit_poly->to_string()) : json(nullptr);
    j["plateau_defect"] = r.plateau_defect ? json(*r.plateau_defect) : json(nullptr);
    j["stabilization_k"] = r.stabilization_k ? json(*r.stabilization_k) : json(nullptr);
    j["initial_degrees"] = r.initial_degrees;
    return j;
}

json to_json(const InvariantsReport& r) {
    json j;
    j["e"] = r.e;
    j["epsilon"] = r.epsilon;
    j["f"] = r.f;
    j["d"] = r.d;
    j["pure"] = r.pure;
    j["knaf"] = r.knaf;
    j["value_group"] = r.value_group;
    json gv = json::array();
    for (const auto& v : r.generating_values) gv.push_back(to_json(v));
    j["generating_values"] = std::move(gv);
    return j;
}

json to_json(const GeneratorFamily& f) {
    json j;
    j["mode"] = to_string(f.mode);
    json reps = json::array();
    for (const auto& v : f.coset_reps.reps) reps.push_back(to_json(v));
    j["coset_reps"] = std::move(reps);
    json gens = json::array();
    for (const auto& g : f.gens) {
        json gj;
        gj["generator"] = g.description;
        gj["numerator"] = g.numerator.to_string();
        gj["denominator"] = g.denominator.to_string();
        gj["value"] = to_json(g.value);
        gj["exponents"] = g.exponents ? exponents_json(*g.exponents) : json(nullptr);
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    return j;
}

json to_json(const HCertificate& c) {
    json j;
    j["k"] = c.k;
    j["c"] = c.c.to_string();
    j["distance"] = to_json(c.distance);
    json b = json::array();
    for (const auto& x : c.b_values) b.push_back(x.to_string());
    j["b_values"] = std::move(b);
    j["h"] = c.h.to_string();
    j["h_value"] = to_json(c.h_value);
    j["h_minus_one_value"] = to_json(c.h_minus_one_value);
    j["b0_value"] = to_json(c.b0_value);
    j["identity_residual"] = c.identity_residual.to_string();
    json ledger = json::array();
    for (const auto& e : c.ledger)
        ledger.push_back({{"l", e.l}, {"j", e.j}, {"term", e.term.to_string()}, {"value", to_json(e.value)}});
    j["binomial_ledger"] = std::move(ledger);
    json beta = json::array();
    for (const auto& e : c.beta_checks) beta.push_back({{"l", e.l}, {"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}});
    j["beta_inequality"] = std::move(beta);
    return j;
}

json describe_extension(const ExtensionEntry& ext) {
    json j;
    j["kind"] = to_string(ext.kind());
    j["field"] = ext.base().name();
    j["p"] = ext.base().p;
    j["g"] = ext.g().to_string();
    j["n"] = ext.degree();
    j["v_eta"] = to_json(ext.v_eta());
    j["declared"] = {{"f", ext.declared().f},
                     {"d", ext.declared().d},
                     {"henselian_degree", ext.declared().henselian_degree}};
    return j;
}

static void check_depth(int depth) {
    if (depth < 2) fail(ErrorKind::Argument, "depth must be at least 2, got " + std::to_string(depth));
}

json analyze_report(const ExtensionEntry& ext, int depth) {
    check_depth(depth);
    const InvariantsReport inv = invariants_report(ext, depth);
    json j;
    j["extension"] = describe_extension(ext);
    j["invariants"] = to_json(inv);
    json pl = json::array();
    for (const auto& p : inv.plateaus) pl.push_back(to_json(p));
    j["plateaus"] = std::move(pl);
    std::string verdict;
    if (inv.knaf)
        verdict = "e = epsilon and d = 1";
    else if (inv.e != inv.epsilon)
        verdict = "epsilon < e";
    else
        verdict = "d = " + std::to_string(inv.d);
    j["knaf_reason"] = verdict;
    return j;
}

json generators_report(const LoadedSpec& spec, int depth, std::size_t samples, std::uint64_t seed) {
    check_depth(depth);
    const ExtensionEntry& ext = *spec.ext;
    const InvariantsReport inv = invariants_report(ext, depth);
    if (!inv.knaf) {
        const std::string why = inv.e != inv.epsilon ? "epsilon = " + std::to_string(inv.epsilon) + " < e = " + std::to_string(inv.e)
                                                     : "d = " + std::to_string(inv.d) + " != 1";
        fail(ErrorKind::NotApplicable, "generators need e = epsilon and d = 1; here " + why);
    }
    const auto sample_set = integral_samples(spec.ext, samples, seed);
    json j;
    j["extension"] = describe_extension(ext);
    j["invariants"] = to_json(inv);
    j["samples"] = samples;
    j["seed"] = std::to_string(seed);

    const PureCaseResult pc = pure_case_certificate(ext, depth);
    if (!ext.plateau_kind()) {
        const std::vector<Poly> qset{Poly::x(ext.base())};
        const auto reps = extension_coset_reps(ext, depth);
        j["mode"] = to_string(FamilyMode::Module);
        j["qset"] = qset_json(qset);
        j["family"] = to_json(module_family(ext, qset, *reps));
        j["verification"] = verification_json(ext, verify_module_generation(ext, qset, sample_set));
        j["pure_case"] = {{"branch", "max"}, {"family", to_json(pc.family)}};
    } else {
        std::vector<Poly> reps;
        for (const auto& s : sample_set) reps.push_back(s.rep());
        const auto qset = adaptive_qset(ext, reps, static_cast<std::size_t>(depth));
        const RingE1Result ring = ring_generators_e1(ext, qset, sample_set);
        j["mode"] = to_string(FamilyMode::PureLocalized);
        j["family"] = to_json(pc.family);
        j["translate_k"] = pc.translate_k ? json(*pc.translate_k) : json(nullptr);
        json certs = json::array();
        for (const auto& c : pc.certificates) certs.push_back(to_json(c));
        j["certificates"] = std::move(certs);
        j["qset"] = qset_json(qset);
        j["ring_e1"] = {{"family", to_json(ring.family)}};
        j["verification"] = verification_json(ext, ring.verification);
    }
    return j;
}

json expand_report(const LoadedSpec& spec, int depth, std::size_t samples, std::uint64_t seed) {
    check_depth(depth);
    const ExtensionEntry& ext = *spec.ext;
    std::vector<Poly> fs;
    if (spec.poly) {
        fs.push_back(*spec.poly % ext.g());
    } else {
        Rng rng(seed);
        while (fs.size() < samples) {
            Poly f = random_of_degree(ext.base(), rng, ext.degree() - 1);
            if (!f.is_zero()) fs.push_back(std::move(f));
        }
    }
    const auto qset = expansion_qset(ext, fs, depth);
    const auto qvals = qset_values(ext, qset);
    json j;
    j["extension"] = describe_extension(ext);
    j["qset"] = qset_json(qset);
    if (spec.poly) j["input"] = spec.poly->to_string();
    json out = json::array();
    for (const auto& f : fs) {
        const auto terms = expand_min_monomials(ext, f, qset);
        const Value nu = nu_eval(ext, f);
        Poly sum = Poly::zero(ext.base());
        Value least = Value::infinity();
        json tj = json::array();
        for (const auto& t : terms) {
            sum = sum + term_poly(ext.base(), qset, t);
            const Value tv = term_value(ext, qvals, t);
            if (tv < least) least = tv;
            tj.push_back({{"coeff", t.coeff.to_string()}, {"exponents", exponents_json(t.exponents)}, {"value", to_json(tv)}});
        }
        if (!(sum == f)) fail(ErrorKind::Integrity, "expansion does not reconstruct " + f.to_string());
        if (least != nu) fail(ErrorKind::Integrity, "expansion of " + f.to_string() + " loses the min property");
        out.push_back({{"f", f.to_string()}, {"nu", to_json(nu)}, {"terms", std::move(tj)}, {"min_term_value", to_json(least)}});
    }
    j["expansions"] = std::move(out);
    return j;
}

json selftest_report() {
    json checks = json::array();
    bool all = true;
    auto check = [&](const std::string& name, const std::function<bool()>& body) {
        bool ok = false;
        std::string detail;
        try {
            ok = body();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        all = all && ok;
        json c{{"name", name}, {"passed", ok}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(std::move(c));
    };

    const BaseField q2 = BaseField::qp(2);
    const BaseField qt = BaseField::qt_composite(2);
    const BaseField f2 = BaseField::perfected(2);
    const auto sqrt2 = ExtensionEntry::pure_radical(q2, 2, FieldElement::from_integer(q2, 2));
    const auto sqrtt = ExtensionEntry::pure_radical(qt, 2, FieldElement::t_power(qt, Rational(1)));
    const auto quad = ExtensionEntry::dense_quadratic(q2);
    const auto as = ExtensionEntry::artin_schreier_defect(f2);

    check("index (1/2)Z x Z over Z^2", [] {
        const std::vector<Value> g{Value({Rational(1, 2), Rational(0)}), Value({Rational(0), Rational(1)})};
        const auto gamma = FGSubgroup::generated_by(2, g);
        const auto delta = FGSubgroup::standard_lattice(2);
        return subgroup_index(gamma, delta) == 2u && initial_index(gamma, delta) == 1u;
    });
    check("val 2t + t^2 = (1,1)", [&] { return val(qt, parse_element(qt, "2t + t^2")) == Value({Rational(1), Rational(1)}); });
    check("nu(x^3) = 3/2 for x^2 - 2", [&] {
        return nu_eval(*sqrt2, parse_poly(q2, {"0", "0", "0", "1"})) == Value({Rational(3, 2)});
    });
    check("nu(x) = -1/2 for x^2 + x + 1/t", [&] { return nu_eval(*as, Poly::x(f2)) == Value({Rational(-1, 2)}); });
    check("eps(x^2 - 2) = 3/2", [&] { return epsilon_root(*sqrt2, sqrt2->g()) == Value({Rational(3, 2)}); });
    check("knaf verdicts", [&] {
        return invariants_report(*sqrt2).knaf && !invariants_report(*sqrtt).knaf && invariants_report(*quad).knaf &&
               !invariants_report(*as).knaf;
    });
    check("plateau defects", [&] {
        return *plateau_scan(*as, 1, 8).plateau_defect == 2 && *plateau_scan(*quad, 1, 8).plateau_defect == 1 &&
               plateau_scan(*sqrt2, 1, 8).has_max;
    });
    check("h-certificate for x^2 + 7", [&] { return !pure_case_certificate(*quad, 8).certificates.empty(); });
    check("module generation for x^2 - 2", [&] {
        const auto rep = verify_module_generation(*sqrt2, {Poly::x(q2)}, integral_samples(sqrt2, 20, 1));
        return rep.verified == rep.total;
    });

    return json{{"checks", std::move(checks)}, {"passed", all}};
}

}  // namespace valgen
