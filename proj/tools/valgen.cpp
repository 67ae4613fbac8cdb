#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "valgen/valgen.h"

using nlohmann::json;

namespace {

int exit_code(vg_status s) {
    switch (s) {
    case VG_OK: return 0;
    case VG_E_SPEC:
    case VG_E_ARGUMENT:
    case VG_E_UNSUPPORTED: return 2;
    case VG_E_NOT_APPLICABLE: return 4;
    default: return 3;
    }
}

std::string value_text(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.size() == 1) return v[0].get<std::string>();
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get<std::string>();
    return s + ")";
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_rows(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i + 1 < r.size())
                std::cout << std::left << std::setw(static_cast<int>(w[i])) << r[i] << "  ";
            else
                std::cout << r[i];
        }
        std::cout << "\n";
        if (k == 0) {
            std::size_t total = 0;
            for (auto x : w) total += x + 2;
            std::cout << std::string(total - 2, '-') << "\n";
        }
    }
}

void print_extension(const json& e) {
    std::cout << e["kind"].get<std::string>() << "  g = " << e["g"].get<std::string>() << "  over "
              << e["field"].get<std::string>() << " (p = " << e["p"] << ")\n\n";
}

void table_analyze(const json& r) {
    print_extension(r["extension"]);
    const json& inv = r["invariants"];
    print_rows({{"invariant", "value"},
                {"e", scalar_text(inv["e"])},
                {"epsilon", scalar_text(inv["epsilon"])},
                {"f", scalar_text(inv["f"])},
                {"d", scalar_text(inv["d"])},
                {"pure", scalar_text(inv["pure"])},
                {"knaf", scalar_text(inv["knaf"])},
                {"vL", inv["value_group"].get<std::string>()}});
    std::cout << "\nknaf: " << r["knaf_reason"].get<std::string>() << "\n";
    for (const auto& p : r["plateaus"]) {
        std::cout << "\nPsi_" << p["m"] << ": ";
        if (p["empty"].get<bool>()) {
            std::cout << "empty\n";
            continue;
        }
        std::cout << (p["has_max"].get<bool>() ? "has a maximum" : "plateau, no maximum");
        if (!p["plateau_defect"].is_null())
            std::cout << ", d = " << p["plateau_defect"] << " from k = " << p["stabilization_k"];
        std::cout << "\n";
        std::vector<std::vector<std::string>> rows{{"k", "v(eta - c_k)", "deg_{x-c_k}(F)"}};
        const auto& vs = p["value_samples"];
        for (std::size_t k = 0; k < vs.size(); ++k) {
            const auto& degs = p["initial_degrees"];
            rows.push_back({std::to_string(k), value_text(vs[k]), k < degs.size() ? degs[k].dump() : "-"});
        }
        print_rows(rows);
    }
}

void table_family(const json& fam) {
    std::vector<std::vector<std::string>> rows{{"generator", "value", "coset"}};
    const auto& reps = fam["coset_reps"];
    for (const auto& g : fam["generators"]) {
        std::string coset = "-";
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (reps[i] == g["value"]) coset = std::to_string(i + 1);
        rows.push_back({g["generator"].get<std::string>(), value_text(g["value"]), coset});
    }
    print_rows(rows);
}

void table_generators(const json& r) {
    print_extension(r["extension"]);
    std::cout << "mode: " << r["mode"].get<std::string>() << "\n\n";
    table_family(r["family"]);
    if (r.contains("certificates")) {
        std::cout << "\nh-certificates (translate at k = " << r["translate_k"] << ")\n";
        std::vector<std::vector<std::string>> rows{{"k", "v(eta-c)", "v(h)", "v(h-1)", "residual", "ledger", "beta"}};
        for (const auto& c : r["certificates"])
            rows.push_back({c["k"].dump(), value_text(c["distance"]), value_text(c["h_value"]),
                            value_text(c["h_minus_one_value"]), c["identity_residual"].get<std::string>(),
                            std::to_string(c["binomial_ledger"].size()) + " ok",
                            std::to_string(c["beta_inequality"].size()) + " ok"});
        print_rows(rows);
    }
    if (r.contains("pure_case")) {
        std::cout << "\npure-case family\n";
        table_family(r["pure_case"]["family"]);
    }
    const json& v = r["verification"];
    std::cout << "\nverified " << v["verified"] << "/" << v["total"] << " samples (seed " << r["seed"].get<std::string>()
              << "), least rescaled coefficient value " << value_text(v["min_rescaled_value"]) << "\n";
}

void table_expand(const json& r) {
    print_extension(r["extension"]);
    std::cout << "Qset:";
    for (std::size_t i = 0; i < r["qset"].size(); ++i) std::cout << "  Q" << i << " = " << r["qset"][i].get<std::string>();
    std::cout << "\n";
    for (const auto& e : r["expansions"]) {
        std::cout << "\nf = " << e["f"].get<std::string>() << "   nu(f) = " << value_text(e["nu"]) << "\n";
        std::vector<std::vector<std::string>> rows{{"coeff", "monomial", "value"}};
        for (const auto& t : e["terms"]) {
            std::string mono;
            for (const auto& [i, k] : t["exponents"].items()) mono += (mono.empty() ? "" : "*") + ("Q" + i) + "^" + k.dump();
            rows.push_back({t["coeff"].get<std::string>(), mono.empty() ? "1" : mono, value_text(t["value"])});
        }
        print_rows(rows);
    }
}

void table_selftest(const json& r) {
    std::vector<std::vector<std::string>> rows{{"check", "result"}};
    for (const auto& c : r["checks"]) rows.push_back({c["name"].get<std::string>(), c["passed"].get<bool>() ? "PASS" : "FAIL"});
    print_rows(rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valuation-ring generators for catalogued simple extensions"};
    std::string command, spec_path, output = "json";
    int depth = 8;
    std::uint64_t samples = 200, seed = 0;
    app.add_option("command", command, "analyze | generators | expand | selftest")
        ->required()
        ->check(CLI::IsMember({"analyze", "generators", "expand", "selftest"}));
    app.add_option("--spec", spec_path, "extension spec (JSON)");
    app.add_option("--depth", depth, "approximant depth")->check(CLI::NonNegativeNumber);
    app.add_option("--samples", samples, "number of seeded samples");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--output", output, "json | table")->check(CLI::IsMember({"json", "table"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    char* report = nullptr;
    vg_status st = VG_OK;
    if (command == "selftest") {
        st = vg_selftest(&report);
    } else {
        if (spec_path.empty()) {
            std::cerr << "valgen: --spec is required for " << command << "\n";
            return 2;
        }
        vg_extension* ext = nullptr;
        st = vg_extension_load_file(spec_path.c_str(), &ext);
        if (st == VG_OK) {
            if (command == "analyze")
                st = vg_analyze(ext, depth, &report);
            else if (command == "generators")
                st = vg_generators(ext, depth, samples, seed, &report);
            else
                st = vg_expand(ext, depth, samples, seed, &report);
        }
        vg_extension_free(ext);
    }
    if (st != VG_OK) {
        std::cerr << "valgen: " << vg_last_error() << "\n";
        return exit_code(st);
    }

    const json r = json::parse(report);
    if (output == "json") {
        std::cout << report << "\n";
    } else if (command == "analyze") {
        table_analyze(r);
    } else if (command == "generators") {
        table_generators(r);
    } else if (command == "expand") {
        table_expand(r);
    } else {
        table_selftest(r);
    }
    vg_string_free(report);
    if (command == "selftest" && !r["passed"].get<bool>()) return 3;
    return 0;
}
