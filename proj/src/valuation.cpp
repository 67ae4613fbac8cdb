#include "valgen/valuation.hpp"

#include "valgen/error.hpp"

namespace valgen {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// mu(f_l) + l*mu(q), with 0*INF read as 0.
std::vector<Value> expansion_terms(const PolyValuation& inner, const std::vector<Poly>& parts, const Value& mu_q) {
    std::vector<Value> terms;
    terms.reserve(parts.size());
    for (std::size_t l = 0; l < parts.size(); ++l) {
        const Value a = eval_valuation(inner, parts[l]);
        terms.push_back(l == 0 ? a : a + mu_q.times(static_cast<long>(l)));
    }
    return terms;
}

}  // namespace

PolyValuation PolyValuation::monomial(const BaseField& k, const Value& gamma) {
    if (gamma.is_inf() || gamma.rank() != k.rank())
        fail(ErrorKind::Structural, "monomial valuation needs a finite value of rank " + std::to_string(k.rank()));
    return PolyValuation(Monomial{k, gamma});
}

PolyValuation PolyValuation::evaluation(ExtensionPtr ext) {
    if (!ext) fail(ErrorKind::Argument, "null extension");
    return PolyValuation(Evaluation{std::move(ext)});
}

PolyValuation PolyValuation::truncation(const PolyValuation& inner, const Poly& q) {
    if (q.degree() < 1 || !q.is_monic()) fail(ErrorKind::Argument, "truncation needs a monic nonconstant q");
    if (!(q.base() == inner.base())) fail(ErrorKind::FieldMismatch, "truncation polynomial over a different field");
    return PolyValuation(Truncation{std::make_shared<const PolyValuation>(inner), q});
}

const BaseField& PolyValuation::base() const {
    return std::visit(overloaded{[](const Monomial& m) -> const BaseField& { return m.base; },
                                [](const Truncation& t) -> const BaseField& { return t.inner->base(); },
                                [](const Evaluation& e) -> const BaseField& { return e.ext->base(); }},
                      form_);
}

std::string PolyValuation::describe() const {
    return std::visit(overloaded{[](const Monomial& m) { return "monomial(" + m.gamma.to_string() + ")"; },
                                 [](const Truncation& t) { return t.inner->describe() + "_{" + t.q.to_string() + "}"; },
                                 [](const Evaluation& e) { return "nu[" + e.ext->g().to_string() + "]"; }},
                      form_);
}

Value eval_valuation(const PolyValuation& mu, const Poly& f) {
    if (!(f.base() == mu.base())) fail(ErrorKind::FieldMismatch, "polynomial over a different base field");
    return std::visit(overloaded{[&](const PolyValuation::Monomial& m) {
                                     Value best = Value::infinity();
                                     for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
                                         if (f.coeffs()[i].is_zero()) continue;
                                         const Value t = val(m.base, f.coeffs()[i]) + m.gamma.times(static_cast<long>(i));
                                         if (t < best) best = t;
                                     }
                                     return best;
                                 },
                                 [&](const PolyValuation::Truncation& t) {
                                     const auto parts = q_expansion(f, t.q);
                                     const Value mu_q = eval_valuation(*t.inner, t.q);
                                     Value best = Value::infinity();
                                     for (const auto& v : expansion_terms(*t.inner, parts, mu_q))
                                         if (v < best) best = v;
                                     return best;
                                 },
                                 [&](const PolyValuation::Evaluation& e) { return nu_eval(*e.ext, f); }},
                      mu.form());
}

PolyValuation truncate(const PolyValuation& mu, const Poly& q) { return PolyValuation::truncation(mu, q); }

unsigned initial_degree(const PolyValuation& mu, const Poly& q, const Poly& f) {
    if (q.degree() < 1 || !q.is_monic()) fail(ErrorKind::Argument, "initial degree needs a monic nonconstant q");
    const auto parts = q_expansion(f, q);
    const auto terms = expansion_terms(mu, parts, eval_valuation(mu, q));
    Value best = Value::infinity();
    for (const auto& v : terms)
        if (v < best) best = v;
    if (best.is_inf()) fail(ErrorKind::UndefinedDegree, "mu_q(f) is infinite");
    unsigned deg = 0;
    for (std::size_t l = 0; l < terms.size(); ++l)
        if (terms[l] == best) deg = static_cast<unsigned>(l);
    return deg;
}

bool initial_forms_equal(const PolyValuation& mu, const Poly& f, const Poly& g) {
    const Value mf = eval_valuation(mu, f);
    const Value mg = eval_valuation(mu, g);
    if (mf.is_inf() || mg.is_inf()) fail(ErrorKind::UndefinedDegree, "initial form of a polynomial with infinite value");
    if (mf != mg) return false;
    return mf < eval_valuation(mu, f - g);
}

}  // namespace valgen
