#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valgen/extension.hpp"
#include "valgen/key_polys.hpp"

namespace valgen {

using ExponentMap = std::map<std::size_t, unsigned>;

/// coeff * prod_i Q_i^{exponents[i]}
struct MonomialTerm {
    FieldElement coeff;
    ExponentMap exponents;
};

/// nu(Q_i) for every member of the set.
std::vector<Value> qset_values(const ExtensionEntry& ext, const std::vector<Poly>& qset);

Value exponent_value(const std::vector<Value>& qvals, const ExponentMap& lambda);
Value term_value(const ExtensionEntry& ext, const std::vector<Value>& qvals, const MonomialTerm& t);
Poly term_poly(const BaseField& k, const std::vector<Poly>& qset, const MonomialTerm& t);
Poly exponent_poly(const BaseField& k, const std::vector<Poly>& qset, const ExponentMap& lambda);

std::vector<MonomialTerm> expand_min_monomials(const ExtensionEntry& ext, const Poly& f, const std::vector<Poly>& qset);

/// {x - c_k : k <= depth}.
std::vector<Poly> approximant_qset(const ExtensionEntry& ext, std::size_t depth);

/// Grows the approximant set past min_depth until every sample has an exact truncation.
std::vector<Poly> adaptive_qset(const ExtensionEntry& ext, const std::vector<Poly>& samples, std::size_t min_depth);

/// Coset representatives of vK in vL; nullopt when eps < e.
std::optional<CosetReps> extension_coset_reps(const ExtensionEntry& ext, int depth = 8);

struct Scaler {
    FieldElement a;
    std::size_t coset = 0;
    Value residual;
};

Scaler choose_scaler(const ExtensionEntry& ext, const ExponentMap& lambda, const std::vector<Value>& qvals,
                     const CosetReps& reps);
inline FieldElement choose_scaler(const ExtensionEntry& ext, const ExponentMap& lambda, const std::vector<Poly>& qset,
                                  const CosetReps& reps) {
    return choose_scaler(ext, lambda, qset_values(ext, qset), reps).a;
}

enum class FamilyMode { Module, RingE1, PureLocalized };
const char* to_string(FamilyMode m) noexcept;

struct Generator {
    std::string description;
    LElement numerator;
    FieldElement denominator;
    Value value;
    std::optional<ExponentMap> exponents;
};

struct GeneratorFamily {
    FamilyMode mode = FamilyMode::Module;
    std::vector<Generator> gens;
    CosetReps coset_reps;
};

struct SampleVerification {
    LElement sample;
    Value nu;
    std::vector<MonomialTerm> terms;
    std::vector<Scaler> scalers;
    std::vector<FieldElement> rescaled;
};

struct ModuleReport {
    std::size_t total = 0;
    std::size_t verified = 0;
    std::vector<SampleVerification> samples;
};

/// Generators Q^lambda(eta)/a_lambda for deg Q^lambda < n.
GeneratorFamily module_family(const ExtensionEntry& ext, const std::vector<Poly>& qset, const CosetReps& reps);

ModuleReport verify_module_generation(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                      const std::vector<LElement>& samples);

struct RingE1Result {
    GeneratorFamily family;
    ModuleReport verification;
};

RingE1Result ring_generators_e1(const ExtensionEntry& ext, const std::vector<Poly>& qset,
                                const std::vector<LElement>& samples);

struct LedgerEntry {
    unsigned l = 0;
    unsigned j = 0;
    FieldElement term;
    Value value;
};

struct BetaCheck {
    unsigned l = 0;
    Value lhs;
    Value rhs;
};

struct HCertificate {
    std::size_t k = 0;
    FieldElement c;
    Value distance;
    std::vector<FieldElement> b_values;
    LElement h;
    Value h_value;
    Value h_minus_one_value;
    Value b0_value;
    LElement identity_residual;
    std::vector<LedgerEntry> ledger;
    std::vector<BetaCheck> beta_checks;
};

struct PureCaseResult {
    GeneratorFamily family;
    std::vector<HCertificate> certificates;
    std::optional<std::size_t> translate_k;
    std::optional<unsigned> plateau_defect;
};

PureCaseResult pure_case_certificate(const ExtensionEntry& ext, int depth);

}  // namespace valgen
