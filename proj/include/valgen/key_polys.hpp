#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "valgen/extension.hpp"
#include "valgen/valuation.hpp"

namespace valgen {

/// f = prod (x - c_i)^{m_i} * g^{g_multiplicity}.
struct RootData {
    std::vector<std::pair<FieldElement, unsigned>> roots;
    unsigned g_multiplicity = 0;
};

Poly root_product(const ExtensionEntry& ext, const RootData& data);

/// max v(eta - a) over the roots a of f, eta itself excluded.
Value epsilon_root(const ExtensionEntry& ext, const Poly& f);
Value epsilon_root(const ExtensionEntry& ext, const RootData& data);

/// max_b (mu(f) - mu(d_b f)) / b over the nonvanishing Hasse derivatives.
Value epsilon_hasse(const PolyValuation& mu, const Poly& f);

bool is_key_certificate(const ExtensionEntry& ext, const Poly& q, const std::vector<Poly>& witnesses);

struct CompletenessItem {
    Poly f;
    Value nu;
    std::optional<std::size_t> q_index;
};

struct CompletenessReport {
    std::vector<CompletenessItem> items;
    std::vector<std::size_t> failures;
    bool passed() const noexcept { return failures.empty(); }
};

/// Smallest degree first, then Qset order; nullopt when no q works.
std::optional<std::size_t> find_exact_truncation(const ExtensionEntry& ext, const std::vector<Poly>& qset, const Poly& f,
                                                 const Value& nu_f);

CompletenessReport completeness_check(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                      const std::vector<Poly>& samples);

PlateauReport plateau_scan(const ExtensionEntry& ext, int m, int depth);

}  // namespace valgen
