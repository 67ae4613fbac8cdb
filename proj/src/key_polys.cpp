#include "valgen/key_polys.hpp"

#include <algorithm>
#include <numeric>

#include "valgen/error.hpp"

namespace valgen {

namespace {

PolyValuation nu_of(const ExtensionEntry& ext) { return PolyValuation::evaluation(ext.shared_from_this()); }

void check_root(const ExtensionEntry& ext, const FieldElement& c) {
    if (!belongs_to(ext.base(), c)) fail(ErrorKind::FieldMismatch, "root outside the base field");
}

}  // namespace

Poly root_product(const ExtensionEntry& ext, const RootData& data) {
    const BaseField& k = ext.base();
    Poly f = Poly::constant(k, FieldElement::one(k));
    for (const auto& [c, m] : data.roots) {
        check_root(ext, c);
        f = f * Poly::x_minus(k, c).pow(m);
    }
    return f * ext.g().pow(data.g_multiplicity);
}

Value epsilon_root(const ExtensionEntry& ext, const RootData& data) {
    bool any = data.g_multiplicity > 0;
    Value best = data.g_multiplicity > 0 ? ext.conjugate_distance() : Value::infinity();
    for (const auto& [c, m] : data.roots) {
        if (m == 0) continue;
        const Value d = ext.root_distance(c);
        if (!any || best < d) best = d;
        any = true;
    }
    if (!any) fail(ErrorKind::Argument, "epsilon of a constant polynomial");
    return best;
}

Value epsilon_root(const ExtensionEntry& ext, const Poly& f) {
    if (f.degree() < 1) fail(ErrorKind::Argument, "epsilon needs a nonconstant polynomial");
    const BaseField& k = ext.base();
    Poly h = f.scaled(f.lead().inverse());
    RootData data;
    while (h.degree() >= ext.degree()) {
        auto [q, r] = h.divmod(ext.g());
        if (!r.is_zero()) break;
        h = q;
        ++data.g_multiplicity;
    }
    const int d = h.degree();
    if (d == 1) {
        data.roots.emplace_back(-h.coeff(0), 1);
    } else if (d > 1) {
        // Only pure powers (x - c)^d are recognized. With d = p^a m, the x^(d - p^a) coefficient
        // is C(d, p^a) (-c)^(p^a); the p^a-th root exists in the perfected field.
        unsigned a = 0, j = 1;
        const std::uint32_t ch = k.characteristic();
        if (ch)
            while (static_cast<unsigned>(d) % (j * ch) == 0) j *= ch, ++a;
        if (a > 0 && k.kind != FieldKind::FpTPerfected)
            fail(ErrorKind::Unsupported, "roots of " + f.to_string() + " are not covered by catalogue data");
        const FieldElement cj = h.coeff(static_cast<std::size_t>(d) - j) /
                                FieldElement::from_integer(k, binomial(static_cast<unsigned>(d), j));
        FieldElement c = -cj;
        if (a > 0) {
            const auto& pe = std::get<PerfectedElement>(cj.rep());
            c = -FieldElement::from_perfected(PerfectedElement{pe.p, pe.level + static_cast<int>(a), pe.f});
        }
        if (!(Poly::x_minus(k, c).pow(static_cast<unsigned>(d)) == h))
            fail(ErrorKind::Unsupported, "roots of " + f.to_string() + " are not covered by catalogue data");
        data.roots.emplace_back(c, static_cast<unsigned>(d));
    }
    return epsilon_root(ext, data);
}

Value epsilon_hasse(const PolyValuation& mu, const Poly& f) {
    if (f.degree() < 1) fail(ErrorKind::EstimatorUndefined, "epsilon of a constant polynomial");
    const Value mf = eval_valuation(mu, f);
    if (mf.is_inf()) fail(ErrorKind::EstimatorUndefined, "mu(f) is infinite");
    std::optional<Value> best;
    for (int b = 1; b <= f.degree(); ++b) {
        const Poly d = hasse_derivative(f, static_cast<unsigned>(b));
        if (d.is_zero()) continue;
        const Value md = eval_valuation(mu, d);
        if (md.is_inf()) continue;
        const Value q = (mf - md).divided_by(static_cast<long>(b));
        if (!best || *best < q) best = q;
    }
    if (!best) fail(ErrorKind::EstimatorUndefined, "all Hasse derivatives of " + f.to_string() + " vanish");
    return *best;
}

bool is_key_certificate(const ExtensionEntry& ext, const Poly& q, const std::vector<Poly>& witnesses) {
    if (q.degree() < 1 || !q.is_monic()) fail(ErrorKind::Argument, "key polynomial candidates are monic and nonconstant");
    if (!(q.base() == ext.base())) fail(ErrorKind::FieldMismatch, "candidate over a different base field");
    for (const auto& w : witnesses) {
        if (w.degree() < 1) fail(ErrorKind::Argument, "witnesses must be nonconstant");
        if (w.degree() >= q.degree()) fail(ErrorKind::Argument, "witness degree must be below deg Q");
    }
    if (q.degree() == 1) return true;
    const int n = ext.degree();
    if (q.degree() != n) return false;

    const Value eq = epsilon_root(ext, q);
    for (const auto& w : witnesses)
        if (!(epsilon_root(ext, w) < eq)) return false;
    const Value sup = ext.linear_sup();
    return ext.linear_sup_attained() ? sup < eq : !(eq < sup);
}

std::optional<std::size_t> find_exact_truncation(const ExtensionEntry& ext, const std::vector<Poly>& qset, const Poly& f,
                                                 const Value& nu_f) {
    std::vector<std::size_t> order(qset.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return qset[a].degree() < qset[b].degree(); });
    const PolyValuation nu = nu_of(ext);
    for (std::size_t i : order) {
        const Poly& q = qset[i];
        if (q.degree() > f.degree()) break;
        if (eval_valuation(truncate(nu, q), f) == nu_f) return i;
    }
    return std::nullopt;
}

CompletenessReport completeness_check(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                      const std::vector<Poly>& samples) {
    for (const auto& q : qset)
        if (q.degree() < 1 || !q.is_monic()) fail(ErrorKind::Argument, "Qset members are monic and nonconstant");
    CompletenessReport rep;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Poly& f = samples[s];
        if (f.degree() >= ext.degree()) fail(ErrorKind::Argument, "completeness is checked for deg f < deg g");
        CompletenessItem item{f, nu_eval(ext, f), std::nullopt};
        if (f.degree() >= 1) {
            item.q_index = find_exact_truncation(ext, qset, f, item.nu);
            if (!item.q_index) rep.failures.push_back(s);
        }
        rep.items.push_back(std::move(item));
    }
    return rep;
}

PlateauReport plateau_scan(const ExtensionEntry& ext, int m, int depth) {
    if (depth < 2) fail(ErrorKind::Argument, "plateau scans need depth >= 2");
    if (m < 1) fail(ErrorKind::Argument, "plateau degree must be positive");
    PlateauReport rep;
    rep.m = m;
    if (m > 1) {
        // Every catalogue entry is pure: no key polynomials strictly between 1 and n.
        rep.empty = true;
        return rep;
    }
    if (!ext.plateau_kind()) {
        rep.value_samples.push_back(ext.approximant_distance(0));
        rep.has_max = true;
        return rep;
    }
    const std::size_t top = static_cast<std::size_t>(depth);
    if (top >= ext.approximant_count())
        fail(ErrorKind::Argument, "depth " + std::to_string(depth) + " exceeds the catalogue depth " +
                                      std::to_string(ext.approximant_count() - 1));
    for (std::size_t i = 0; i <= top; ++i) {
        const Value& d = ext.approximant_distance(i);
        if (!rep.value_samples.empty() && !(rep.value_samples.back() < d))
            fail(ErrorKind::Integrity, "approximant distances are not strictly increasing");
        rep.value_samples.push_back(d);
    }
    rep.has_max = false;
    rep.limit_poly = ext.g();

    const PolyValuation nu = nu_of(ext);
    for (std::size_t i = 0; i <= top; ++i) {
        const Poly q = Poly::x_minus(ext.base(), ext.approximant(i));
        if (eval_valuation(truncate(nu, q), ext.g()).is_inf())
            fail(ErrorKind::Integrity, "truncation of g at x - c_k is infinite");
        rep.initial_degrees.push_back(initial_degree(nu, q, ext.g()));
    }
    std::size_t stab = top;
    while (stab > 0 && rep.initial_degrees[stab - 1] == rep.initial_degrees[top]) --stab;
    rep.stabilization_k = stab;
    rep.plateau_defect = rep.initial_degrees[top];
    return rep;
}

}  // namespace valgen
