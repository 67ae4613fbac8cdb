#pragma once

#include <memory>
#include <variant>

#include "valgen/extension.hpp"

namespace valgen {

class PolyValuation {
public:
    struct Monomial {
        BaseField base;
        Value gamma;
    };
    struct Truncation {
        std::shared_ptr<const PolyValuation> inner;
        Poly q;
    };
    struct Evaluation {
        ExtensionPtr ext;
    };

    static PolyValuation monomial(const BaseField& k, const Value& gamma);
    static PolyValuation evaluation(ExtensionPtr ext);
    static PolyValuation truncation(const PolyValuation& inner, const Poly& q);

    const BaseField& base() const;
    const std::variant<Monomial, Truncation, Evaluation>& form() const noexcept { return form_; }

    std::string describe() const;

private:
    explicit PolyValuation(std::variant<Monomial, Truncation, Evaluation> f) : form_(std::move(f)) {}
    std::variant<Monomial, Truncation, Evaluation> form_;
};

Value eval_valuation(const PolyValuation& mu, const Poly& f);

PolyValuation truncate(const PolyValuation& mu, const Poly& q);

/// Largest l with mu(f_l) + l mu(q) = mu_q(f) in the q-expansion of f.
unsigned initial_degree(const PolyValuation& mu, const Poly& q, const Poly& f);

/// in_mu(f) = in_mu(g).
bool initial_forms_equal(const PolyValuation& mu, const Poly& f, const Poly& g);

}  // namespace valgen
