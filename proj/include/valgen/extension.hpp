#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "valgen/poly.hpp"

namespace valgen {

enum class ExtensionKind { PureRadical, DenseQuadratic, ArtinSchreier };

const char* to_string(ExtensionKind kind) noexcept;

struct Declared {
    int f = 1;
    int d = 1;
    int henselian_degree = 1;
    bool operator==(const Declared&) const = default;
};

/*
 * A catalogued simple extension L = K[x]/(g) with a distinguished root eta
 * and an exact distance function c -> v(eta - c) on K. Plateau kinds also
 * carry a precomputed approximant sequence c_k with strictly increasing
 * v(eta - c_k); pure radicals carry the single approximant c_0 = 0.
 *
 *   PureRadical     x^e - a,        v(eta) = v(a)/e of exact order e mod vK
 *   DenseQuadratic  x^2 + 7 over (Q, v_2), eta the 2-adic root with eta = 1 mod 4
 *   ArtinSchreier   x^p - x - 1/t over F_p(t^(1/p^inf)), c_k = sum_{j<=k+1} t^(-1/p^j)
 */
class ExtensionEntry : public std::enable_shared_from_this<ExtensionEntry> {
public:
    static std::shared_ptr<const ExtensionEntry> pure_radical(const BaseField& k, unsigned e, const FieldElement& a,
                                                              std::optional<Declared> declared = {});
    static std::shared_ptr<const ExtensionEntry> dense_quadratic(const BaseField& k, std::optional<Declared> declared = {});
    static std::shared_ptr<const ExtensionEntry> artin_schreier_defect(const BaseField& k,
                                                                       std::optional<Declared> declared = {});

    const BaseField& base() const noexcept { return base_; }
    const Poly& g() const noexcept { return g_; }
    int degree() const noexcept { return g_.degree(); }
    ExtensionKind kind() const noexcept { return kind_; }
    const Declared& declared() const noexcept { return declared_; }
    bool plateau_kind() const noexcept { return kind_ != ExtensionKind::PureRadical; }

    unsigned radical_exponent() const;
    const FieldElement& radicand() const;

    /// v(eta), i.e. nu(x).
    Value v_eta() const { return nu_x_; }

    std::size_t approximant_count() const noexcept { return c_.size(); }
    const FieldElement& approximant(std::size_t k) const;
    const Value& approximant_distance(std::size_t k) const;

    /// v(eta - c) for c in K.
    Value root_distance(const FieldElement& c) const;
    /// max v(eta - eta') over the conjugates eta' != eta.
    Value conjugate_distance() const;
    /// sup over c in K of v(eta - c), and whether some c attains it.
    Value linear_sup() const;
    bool linear_sup_attained() const { return kind_ == ExtensionKind::PureRadical; }

    std::string describe() const;

    struct Token {};
    ExtensionEntry(Token, BaseField base, Poly g, ExtensionKind kind, Declared declared);

private:
    BaseField base_;
    Poly g_;
    ExtensionKind kind_;
    Declared declared_;
    unsigned e_ = 0;
    FieldElement a_;
    Value nu_x_;
    std::vector<FieldElement> c_;
    std::vector<Value> dist_;
};

using ExtensionPtr = std::shared_ptr<const ExtensionEntry>;

/// nu(f) = v(f(eta)).
Value nu_eval(const ExtensionEntry& ext, const Poly& f);

/// v(b) + v(eta + a/b) for r = a + b x; independent of the sweep.
Value nu_linear_closed_form(const ExtensionEntry& ext, const Poly& r);

struct SweepTrace {
    std::size_t stop_k = 0;
    std::vector<std::vector<Value>> betas;
};

/// The stabilized truncation sweep behind nu_eval for plateau kinds; r must be reduced mod g and nonzero.
Value nu_sweep(const ExtensionEntry& ext, const Poly& r, SweepTrace* trace = nullptr);

// Residue representative of f(eta), degree < n.
class LElement {
public:
    LElement() = default;
    LElement(ExtensionPtr ext, Poly rep);

    static LElement eta(const ExtensionPtr& ext) { return LElement(ext, Poly::x(ext->base())); }
    static LElement from_base(const ExtensionPtr& ext, const FieldElement& a) {
        return LElement(ext, Poly::constant(ext->base(), a));
    }

    const ExtensionPtr& ext() const noexcept { return ext_; }
    const Poly& rep() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.is_zero(); }
    Value val() const { return nu_eval(*ext_, rep_); }

    LElement operator+(const LElement& o) const { return LElement(ext_, rep_ + o.rep_); }
    LElement operator-(const LElement& o) const { return LElement(ext_, rep_ - o.rep_); }
    LElement operator*(const LElement& o) const { return LElement(ext_, rep_ * o.rep_); }
    LElement scaled(const FieldElement& a) const { return LElement(ext_, rep_.scaled(a)); }
    LElement pow(unsigned n) const;

    bool operator==(const LElement& o) const { return rep_ == o.rep_; }
    std::string to_string() const;

private:
    ExtensionPtr ext_;
    Poly rep_;
};

struct PlateauReport {
    int m = 1;
    bool empty = false;
    std::vector<Value> value_samples;
    bool has_max = false;
    std::optional<Poly> limit_poly;
    std::optional<unsigned> plateau_defect;
    std::optional<std::size_t> stabilization_k;
    /// deg_{x - c_k}(F) for k = 0..depth.
    std::vector<unsigned> initial_degrees;

    bool is_plateau() const noexcept { return !empty && !has_max; }
};

struct InvariantsReport {
    std::uint64_t e = 1;
    std::uint64_t epsilon = 1;
    int f = 1;
    int d = 1;
    bool pure = true;
    bool knaf = true;
    std::vector<Value> generating_values;
    std::string value_group;
    std::vector<PlateauReport> plateaus;
};

InvariantsReport invariants_report(const ExtensionEntry& ext, int depth = 8);

}  // namespace valgen
