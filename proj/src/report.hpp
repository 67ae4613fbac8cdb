#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "valgen/extension.hpp"
#include "valgen/generators.hpp"

namespace valgen {

struct LoadedSpec {
    ExtensionPtr ext;
    std::optional<Poly> poly;
};

LoadedSpec load_spec(const std::string& text);
BaseField parse_field(const nlohmann::json& j);

nlohmann::json to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlateauReport& r);
nlohmann::json to_json(const InvariantsReport& r);
nlohmann::json to_json(const GeneratorFamily& f);
nlohmann::json to_json(const HCertificate& c);
nlohmann::json describe_extension(const ExtensionEntry& ext);

nlohmann::json analyze_report(const ExtensionEntry& ext, int depth);
nlohmann::json generators_report(const LoadedSpec& spec, int depth, std::size_t samples, std::uint64_t seed);
nlohmann::json expand_report(const LoadedSpec& spec, int depth, std::size_t samples, std::uint64_t seed);
nlohmann::json selftest_report();

}  // namespace valgen
