#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "valgen/extension.hpp"

namespace valgen {

// Seeded generator with a portable uniform draw (std distributions differ across libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n);
    std::int64_t range(std::int64_t lo, std::int64_t hi);
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

FieldElement random_element(const BaseField& k, Rng& rng);
FieldElement random_nonzero_element(const BaseField& k, Rng& rng);
Poly random_poly(const BaseField& k, Rng& rng, int max_degree);
Poly random_of_degree(const BaseField& k, Rng& rng, int degree);
/// Random monic polynomial of exact degree.
Poly random_monic(const BaseField& k, Rng& rng, int degree);

/// Random f(eta) with nu >= 0, rescaled by a canonical element of vK.
LElement random_integral_sample(const ExtensionPtr& ext, Rng& rng);
std::vector<LElement> integral_samples(const ExtensionPtr& ext, std::size_t count, std::uint64_t seed);

}  // namespace valgen
