#include <doctest.h>

#include <string>

#include <json.hpp>

#include "valgen/valgen.h"

using nlohmann::json;

namespace {

struct Owned {
    char* s = nullptr;
    ~Owned() { vg_string_free(s); }
    json parse() const { return json::parse(s); }
};

struct Ext {
    vg_extension* p = nullptr;
    ~Ext() { vg_extension_free(p); }
};

const char* sqrt2 = R"({"kind": "pure_radical", "field": {"field": "Qp", "p": 2}, "e": 2, "a": "2"})";
const char* as2 =
    R"({"kind": "artin_schreier_defect", "field": {"field": "FpTPerfected", "p": 2}, "declared": {"f": 1, "d": 2, "henselian_degree": 2}})";

}  // namespace

TEST_CASE("load and analyze") {
    Ext e;
    REQUIRE(vg_extension_load(sqrt2, &e.p) == VG_OK);
    Owned out;
    REQUIRE(vg_analyze(e.p, 8, &out.s) == VG_OK);
    const json j = out.parse();
    CHECK(j["invariants"]["knaf"] == true);
    CHECK(j["invariants"]["e"] == 2);
    CHECK(j["extension"]["g"] == "x^2 - 2");
}

TEST_CASE("nu evaluation") {
    Ext e;
    REQUIRE(vg_extension_load(sqrt2, &e.p) == VG_OK);
    const char* coeffs[] = {"4", "3"};
    Owned out;
    REQUIRE(vg_nu_eval(e.p, coeffs, 2, &out.s) == VG_OK);
    CHECK(out.parse() == json::array({"1/2"}));
    Owned zero;
    REQUIRE(vg_nu_eval(e.p, nullptr, 0, &zero.s) == VG_OK);
    CHECK(zero.parse() == "inf");
    const char* junk[] = {"1/0"};
    Owned bad;
    CHECK(vg_nu_eval(e.p, junk, 1, &bad.s) != VG_OK);
    CHECK(bad.s == nullptr);
}

TEST_CASE("status codes") {
    Ext e;
    CHECK(vg_extension_load("{\"kind\": ", &e.p) == VG_E_SPEC);
    CHECK(e.p == nullptr);
    CHECK(std::string(vg_last_error()).size() > 0);
    CHECK(vg_extension_load(R"({"kind": "pure_radical", "field": {"field": "Qp", "p": 2}, "e": 2, "a": "4"})", &e.p) ==
          VG_E_SPEC);
    CHECK(vg_extension_load_file("/nonexistent/spec.json", &e.p) == VG_E_SPEC);
    CHECK(vg_extension_load(nullptr, &e.p) == VG_E_ARGUMENT);

    Ext as;
    REQUIRE(vg_extension_load(as2, &as.p) == VG_OK);
    Owned out;
    CHECK(vg_generators(as.p, 8, 10, 0, &out.s) == VG_E_NOT_APPLICABLE);
    CHECK(std::string(vg_last_error()).find("d = 2") != std::string::npos);
    CHECK(vg_analyze(nullptr, 8, &out.s) == VG_E_ARGUMENT);
    CHECK(vg_analyze(as.p, 1, &out.s) == VG_E_ARGUMENT);
}

TEST_CASE("generators and expand are deterministic") {
    Ext e;
    REQUIRE(vg_extension_load(sqrt2, &e.p) == VG_OK);
    Owned a, b, c;
    REQUIRE(vg_generators(e.p, 8, 50, 3, &a.s) == VG_OK);
    REQUIRE(vg_generators(e.p, 8, 50, 3, &b.s) == VG_OK);
    CHECK(std::string(a.s) == std::string(b.s));
    CHECK(a.parse()["verification"]["verified"] == 50);
    REQUIRE(vg_expand(e.p, 8, 5, 3, &c.s) == VG_OK);
    CHECK(c.parse()["expansions"].size() == 5);
}

TEST_CASE("selftest and version") {
    Owned out;
    REQUIRE(vg_selftest(&out.s) == VG_OK);
    CHECK(out.parse()["passed"] == true);
    CHECK(std::string(vg_version()) == "0.1.0");
}
