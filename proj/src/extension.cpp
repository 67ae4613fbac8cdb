#include "valgen/extension.hpp"

#include <numeric>

#include "valgen/error.hpp"
#include "valgen/key_polys.hpp"

namespace valgen {

namespace {

constexpr std::size_t kQuadraticApproximants = 64;
constexpr std::size_t kArtinSchreierApproximants = 24;

void validate_declared(const Declared& d, std::uint64_t e) {
    if (d.f != 1) fail(ErrorKind::Spec, "only f = 1 is supported, got f = " + std::to_string(d.f));
    if (d.d < 1 || d.henselian_degree < 1) fail(ErrorKind::Spec, "declared invariants must be positive");
    if (static_cast<std::uint64_t>(d.f) * d.d * e != static_cast<std::uint64_t>(d.henselian_degree))
        fail(ErrorKind::Spec, "declared invariants are inconsistent: e*f*d = " + std::to_string(e * d.f * d.d) +
                                  " but henselian_degree = " + std::to_string(d.henselian_degree));
}

Integer mod4(const Rational& c) {
    Integer den_inv;
    Integer four(4);
    mpz_invert(den_inv.get_mpz_t(), c.get_den().get_mpz_t(), four.get_mpz_t());
    Integer r = (c.get_num() * den_inv) % 4;
    if (r < 0) r += 4;
    return r;
}

// eta mod 2^bits, eta^2 = -7 and eta = 1 mod 4.
Integer two_adic_sqrt_minus7(unsigned bits) {
    Integer r = 1;
    for (unsigned j = 3; j <= bits; ++j) {
        Integer m = Integer(1) << (j + 1);
        if ((r * r + 7) % m != 0) r += Integer(1) << (j - 1);
    }
    Integer m = Integer(1) << bits;
    r %= m;
    if (r % 4 == 3) r = m - r;
    return r;
}

Value min_value(const std::vector<Value>& terms) {
    Value m = Value::infinity();
    for (const auto& t : terms)
        if (t < m) m = t;
    return m;
}

std::vector<Value> truncation_terms(const std::vector<Value>& beta, const Value& dist) {
    std::vector<Value> terms;
    terms.reserve(beta.size());
    for (std::size_t l = 0; l < beta.size(); ++l) terms.push_back(l == 0 ? beta[0] : beta[l] + dist.times(static_cast<long>(l)));
    return terms;
}

}  // namespace

const char* to_string(ExtensionKind kind) noexcept {
    switch (kind) {
    case ExtensionKind::PureRadical: return "pure_radical";
    case ExtensionKind::DenseQuadratic: return "dense_quadratic";
    case ExtensionKind::ArtinSchreier: return "artin_schreier_defect";
    }
    return "?";
}

ExtensionEntry::ExtensionEntry(Token, BaseField base, Poly g, ExtensionKind kind, Declared declared)
    : base_(base), g_(std::move(g)), kind_(kind), declared_(declared) {}

std::shared_ptr<const ExtensionEntry> ExtensionEntry::pure_radical(const BaseField& k, unsigned e, const FieldElement& a,
                                                                   std::optional<Declared> declared) {
    if (e < 2) fail(ErrorKind::Spec, "pure_radical needs e >= 2");
    if (e > 64) fail(ErrorKind::Spec, "pure_radical exponent too large");
    if (!belongs_to(k, a)) fail(ErrorKind::Spec, "radicand is not in " + k.name());
    if (a.is_zero()) fail(ErrorKind::Spec, "radicand must be nonzero");
    if (k.kind == FieldKind::FpTPerfected && e % k.p == 0)
        fail(ErrorKind::Spec, "pure_radical over the perfected field needs p not dividing e");
    const Value va = val(k, a);
    for (unsigned i = 1; i < e; ++i)
        if (k.value_in_group(va.times(static_cast<long>(i)).divided_by(static_cast<long>(e))))
            fail(ErrorKind::Spec, "v(a) = " + va.to_string() + " does not have exact order " + std::to_string(e) +
                                      " modulo the value group");
    Declared dec = declared.value_or(Declared{1, 1, static_cast<int>(e)});
    validate_declared(dec, e);

    Poly g = Poly::monomial(k, FieldElement::one(k), e) - Poly::constant(k, a);
    auto entry = std::make_shared<ExtensionEntry>(Token{}, k, std::move(g), ExtensionKind::PureRadical, dec);
    entry->e_ = e;
    entry->a_ = a;
    entry->nu_x_ = va.divided_by(static_cast<long>(e));
    entry->c_ = {FieldElement::zero(k)};
    entry->dist_ = {entry->nu_x_};
    return entry;
}

std::shared_ptr<const ExtensionEntry> ExtensionEntry::dense_quadratic(const BaseField& k, std::optional<Declared> declared) {
    if (k.kind != FieldKind::Qp || k.p != 2) fail(ErrorKind::Spec, "dense_quadratic is catalogued over (Q, v_2) only");
    Declared dec = declared.value_or(Declared{1, 1, 1});
    validate_declared(dec, 1);

    Poly g = parse_poly(k, {"7", "0", "1"});
    auto entry = std::make_shared<ExtensionEntry>(Token{}, k, std::move(g), ExtensionKind::DenseQuadratic, dec);
    entry->nu_x_ = Value({Rational(0)});
    const Integer eta = two_adic_sqrt_minus7(kQuadraticApproximants + 2);
    for (std::size_t i = 0; i < kQuadraticApproximants; ++i) {
        const Integer pk = Integer(1) << i;
        const Integer low = eta % pk;
        const bool bit = ((eta >> i) & 1) != 0;
        const Integer c = bit ? low : Integer(low + pk);
        entry->c_.push_back(FieldElement::from_integer(k, c));
        entry->dist_.push_back(Value({Rational(static_cast<long>(i))}));
    }
    for (std::size_t i = 0; i < kQuadraticApproximants; ++i)
        if (entry->root_distance(entry->c_[i]) != entry->dist_[i])
            fail(ErrorKind::Integrity, "quadratic approximant " + std::to_string(i) + " has the wrong distance");
    return entry;
}

std::shared_ptr<const ExtensionEntry> ExtensionEntry::artin_schreier_defect(const BaseField& k,
                                                                            std::optional<Declared> declared) {
    if (k.kind != FieldKind::FpTPerfected) fail(ErrorKind::Spec, "artin_schreier_defect needs the perfected field");
    Declared dec = declared.value_or(Declared{1, static_cast<int>(k.p), static_cast<int>(k.p)});
    validate_declared(dec, 1);

    const FieldElement one = FieldElement::one(k);
    Poly g = Poly::monomial(k, one, k.p) - Poly::x(k) - Poly::constant(k, FieldElement::t_power(k, Rational(-1)));
    auto entry = std::make_shared<ExtensionEntry>(Token{}, k, std::move(g), ExtensionKind::ArtinSchreier, dec);
    entry->nu_x_ = Value({Rational(-1, k.p)});

    // Keep p^(k+2) well inside the 64-bit exponent range.
    std::size_t count = 0;
    Integer pk = Integer(k.p) * k.p;
    while (count < kArtinSchreierApproximants && pk < (Integer(1) << 40)) {
        ++count;
        pk *= k.p;
    }
    if (count < 4) fail(ErrorKind::Unsupported, "prime too large for the Artin-Schreier approximants");

    FieldElement c = FieldElement::zero(k);
    Integer pj = 1;
    for (std::size_t i = 0; i < count; ++i) {
        pj *= k.p;
        c = c + FieldElement::t_power(k, Rational(Integer(-1), pj));
        entry->c_.push_back(c);
        entry->dist_.push_back(Value({Rational(Integer(-1), Integer(pj * k.p))}));
    }
    for (std::size_t i = 0; i < count; ++i)
        if (entry->root_distance(entry->c_[i]) != entry->dist_[i])
            fail(ErrorKind::Integrity, "Artin-Schreier approximant " + std::to_string(i) + " has the wrong distance");
    return entry;
}

unsigned ExtensionEntry::radical_exponent() const {
    if (kind_ != ExtensionKind::PureRadical) fail(ErrorKind::Structural, "not a pure radical");
    return e_;
}

const FieldElement& ExtensionEntry::radicand() const {
    if (kind_ != ExtensionKind::PureRadical) fail(ErrorKind::Structural, "not a pure radical");
    return a_;
}

const FieldElement& ExtensionEntry::approximant(std::size_t k) const {
    if (k >= c_.size()) fail(ErrorKind::Argument, "approximant index " + std::to_string(k) + " beyond the catalogue depth");
    return c_[k];
}

const Value& ExtensionEntry::approximant_distance(std::size_t k) const {
    if (k >= dist_.size()) fail(ErrorKind::Argument, "approximant index " + std::to_string(k) + " beyond the catalogue depth");
    return dist_[k];
}

Value ExtensionEntry::root_distance(const FieldElement& c) const {
    if (!belongs_to(base_, c)) fail(ErrorKind::FieldMismatch, "point outside the base field");
    switch (kind_) {
    case ExtensionKind::PureRadical: {
        const Value vc = val(base_, c);
        return vc < nu_x_ ? vc : nu_x_;
    }
    case ExtensionKind::DenseQuadratic: {
        const Rational& q = std::get<Rational>(c.rep());
        const Value w = val(base_, c * c + FieldElement::from_integer(base_, 7));
        const Rational& wq = w[0];
        if (wq < 2) return Value({Rational(wq / 2)});
        if (wq == 2) return Value({Rational(1)});
        return mod4(q) == 1 ? Value({Rational(wq - 1)}) : Value({Rational(1)});
    }
    case ExtensionKind::ArtinSchreier: {
        const Value w = val(base_, eval_poly(g_, c));
        if (w.is_inf() || !(w < Value::zero(1)))
            fail(ErrorKind::Integrity, "v(g(c)) >= 0 contradicts the defect structure at c = " + c.to_string());
        return w.divided_by(static_cast<long>(base_.p));
    }
    }
    fail(ErrorKind::Structural, "unknown extension kind");
}

Value ExtensionEntry::conjugate_distance() const {
    switch (kind_) {
    case ExtensionKind::PureRadical: {
        if (e_ % base_.p != 0) return nu_x_;
        const Rational bump(1, base_.p - 1);
        if (base_.kind == FieldKind::QtComposite) return nu_x_ + Value({Rational(0), bump});
        return nu_x_ + Value({bump});
    }
    case ExtensionKind::DenseQuadratic: return Value({Rational(1)});
    case ExtensionKind::ArtinSchreier: return Value({Rational(0)});
    }
    fail(ErrorKind::Structural, "unknown extension kind");
}

Value ExtensionEntry::linear_sup() const {
    switch (kind_) {
    case ExtensionKind::PureRadical: return nu_x_;
    case ExtensionKind::DenseQuadratic: return Value::infinity();
    case ExtensionKind::ArtinSchreier: return Value({Rational(0)});
    }
    fail(ErrorKind::Structural, "unknown extension kind");
}

std::string ExtensionEntry::describe() const {
    return std::string(to_string(kind_)) + " g = " + g_.to_string() + " over " + base_.name() + " p=" + std::to_string(base_.p);
}

// ------------------------------------------------------------------- nu

Value nu_linear_closed_form(const ExtensionEntry& ext, const Poly& r) {
    if (r.degree() > 1) fail(ErrorKind::Argument, "closed form applies to polynomials of degree <= 1");
    if (r.is_zero()) return Value::infinity();
    const BaseField& k = ext.base();
    if (r.degree() == 0) return val(k, r.coeff(0));
    const FieldElement& b = r.coeff(1);
    return val(k, b) + ext.root_distance(-(r.coeff(0) / b));
}

Value nu_sweep(const ExtensionEntry& ext, const Poly& r, SweepTrace* trace) {
    const BaseField& k = ext.base();
    std::vector<Poly> derivs;
    for (int l = 0; l <= r.degree(); ++l) derivs.push_back(hasse_derivative(r, static_cast<unsigned>(l)));

    auto betas_at = [&](std::size_t i) {
        std::vector<Value> beta;
        beta.reserve(derivs.size());
        for (const auto& d : derivs) beta.push_back(val(k, eval_poly(d, ext.approximant(i))));
        return beta;
    };

    const std::size_t count = ext.approximant_count();
    std::vector<Value> prev;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Value> beta = betas_at(i);
        if (trace) trace->betas.push_back(beta);
        const std::vector<Value> terms = truncation_terms(beta, ext.approximant_distance(i));
        bool only_zero = !beta[0].is_inf();
        for (std::size_t l = 1; l < terms.size() && only_zero; ++l)
            if (!(beta[0] < terms[l])) only_zero = false;
        if (i >= 1 && only_zero && beta == prev) {
            if (i + 2 >= count)
                fail(ErrorKind::Integrity, "nu sweep stabilized too close to the catalogue depth for " + r.to_string());
            for (std::size_t j = i + 1; j <= i + 2; ++j) {
                const Value mj = min_value(truncation_terms(betas_at(j), ext.approximant_distance(j)));
                if (mj != beta[0])
                    fail(ErrorKind::Integrity, "nu sweep cross-check failed for " + r.to_string() + " at k = " +
                                                   std::to_string(j));
            }
            if (trace) trace->stop_k = i;
            return beta[0];
        }
        prev = std::move(beta);
    }
    fail(ErrorKind::Integrity, "nu sweep did not stabilize within the catalogue depth for " + r.to_string());
}

Value nu_eval(const ExtensionEntry& ext, const Poly& f) {
    if (!(f.base() == ext.base())) fail(ErrorKind::FieldMismatch, "polynomial over a different base field");
    const Poly r = f % ext.g();
    if (r.is_zero()) return Value::infinity();
    const BaseField& k = ext.base();
    if (r.degree() == 0) return val(k, r.coeff(0));
    if (ext.kind() == ExtensionKind::PureRadical) {
        Value m = Value::infinity();
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
            if (r.coeffs()[i].is_zero()) continue;
            const Value t = val(k, r.coeffs()[i]) + ext.v_eta().times(static_cast<long>(i));
            if (t < m) m = t;
        }
        return m;
    }
    return nu_sweep(ext, r);
}

// -------------------------------------------------------------- LElement

LElement::LElement(ExtensionPtr ext, Poly rep) : ext_(std::move(ext)) {
    if (!ext_) fail(ErrorKind::Argument, "null extension");
    rep_ = rep % ext_->g();
}

LElement LElement::pow(unsigned n) const {
    LElement acc = from_base(ext_, FieldElement::one(ext_->base()));
    LElement b = *this;
    while (n) {
        if (n & 1) acc = acc * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return acc;
}

std::string LElement::to_string() const {
    std::string s = rep_.to_string();
    std::string out;
    for (char ch : s) {
        if (ch == 'x')
            out += "eta";
        else
            out += ch;
    }
    return out;
}

// ------------------------------------------------------------ invariants

InvariantsReport invariants_report(const ExtensionEntry& ext, int depth) {
    InvariantsReport rep;
    const BaseField& k = ext.base();
    if (ext.kind() == ExtensionKind::PureRadical) {
        rep.generating_values.push_back(ext.v_eta());
    } else {
        const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(std::max(depth, 0)), ext.approximant_count() - 1);
        for (std::size_t i = 0; i <= top; ++i) rep.generating_values.push_back(ext.approximant_distance(i));
    }

    if (k.has_fg_value_group()) {
        const FGSubgroup vk = k.value_group();
        std::vector<Value> gens = vk.basis();
        gens.insert(gens.end(), rep.generating_values.begin(), rep.generating_values.end());
        const FGSubgroup vl = FGSubgroup::generated_by(k.rank(), gens);
        const auto e = subgroup_index(vl, vk);
        if (!e) fail(ErrorKind::Integrity, "vL has larger rational rank than vK");
        rep.e = *e;
        rep.epsilon = initial_index(vl, vk);
        rep.value_group = vl.to_string();
    } else {
        // Z[1/p] is dense, so only 0 lies below all of its positive elements.
        Integer l = 1;
        for (const auto& v : rep.generating_values) {
            Integer den = v[0].get_den();
            while (den % k.p == 0) den /= k.p;
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        rep.e = l.get_ui();
        rep.epsilon = 1;
        rep.value_group = rep.e == 1 ? "Z[1/" + std::to_string(k.p) + "]"
                                     : "(1/" + l.get_str() + ")Z[1/" + std::to_string(k.p) + "]";
    }

    rep.d = 1;
    for (int m = 1; m < ext.degree(); ++m) {
        PlateauReport pr = plateau_scan(ext, m, std::max(depth, 2));
        if (pr.is_plateau()) {
            if (!pr.plateau_defect) fail(ErrorKind::Integrity, "plateau without a stabilized defect");
            rep.d *= static_cast<int>(*pr.plateau_defect);
        }
        rep.plateaus.push_back(std::move(pr));
    }
    const Declared& dec = ext.declared();
    if (rep.d != dec.d)
        fail(ErrorKind::Integrity, "defect formula gives d = " + std::to_string(rep.d) + " but the catalogue declares d = " +
                                       std::to_string(dec.d));
    rep.f = dec.f;
    if (rep.e * static_cast<std::uint64_t>(rep.f) * static_cast<std::uint64_t>(rep.d) !=
        static_cast<std::uint64_t>(dec.henselian_degree))
        fail(ErrorKind::Integrity, "e*f*d = " + std::to_string(rep.e * rep.f * rep.d) + " differs from the declared [L^h:K^h] = " +
                                       std::to_string(dec.henselian_degree));
    rep.pure = true;
    rep.knaf = rep.e == rep.epsilon && rep.d == 1;
    return rep;
}

}  // namespace valgen
