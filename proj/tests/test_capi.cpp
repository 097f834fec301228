#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "tilt/tilt.h"

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { tilt_string_free(s); }
};

} // namespace

TEST_CASE("field and table handles") {
    tilt_field* F = nullptr;
    REQUIRE(tilt_field_create(3, 2, &F) == TILT_OK);
    CHECK(tilt_field_p(F) == 3);
    CHECK(tilt_field_k(F) == 2);

    tilt_table* T = nullptr;
    REQUIRE(tilt_table_create(F, 2, nullptr, &T) == TILT_OK);
    CHECK(tilt_table_size(T) == 9);
    int dims[9] = {1, 2, 3, 6, 6, 6, 12, 12, 9};
    for (int i = 0; i < 9; ++i) CHECK(tilt_table_entry_dim(T, i) == dims[i]);
    CHECK(tilt_table_entry_dim(T, 9) == -1);

    Str manifest;
    REQUIRE(tilt_table_manifest_json(T, &manifest.s) == TILT_OK);
    auto j = nlohmann::json::parse(manifest.s);
    CHECK(j["p"] == 3);
    CHECK(j["dims"].size() == 9);

    tilt_table_destroy(T);
    tilt_field_destroy(F);
}

TEST_CASE("error paths set messages and codes") {
    tilt_field* F = nullptr;
    CHECK(tilt_field_create(3, 1, &F) == TILT_OK);
    tilt_table* T = nullptr;
    CHECK(tilt_table_create(F, 2, nullptr, &T) == TILT_ERR_INVALID); // k < r
    CHECK(std::strlen(tilt_last_error()) > 0);
    int dependent[2] = {1, 2}; // 1 and 2 lie in F_3: not F_3-independent
    CHECK(tilt_table_create(F, 2, dependent, &T) == TILT_ERR_INVALID);
    tilt_module* M = nullptr;
    CHECK(tilt_module_from_json("not json", &M) != TILT_OK);
    tilt_field_destroy(F);
}

TEST_CASE("module round-trip and membership") {
    tilt_field* F = nullptr;
    REQUIRE(tilt_field_create(3, 2, &F) == TILT_OK);
    tilt_table* T = nullptr;
    REQUIRE(tilt_table_create(F, 2, nullptr, &T) == TILT_OK);

    Str entry;
    REQUIRE(tilt_table_entry_json(T, 1, &entry.s) == TILT_OK); // V, dim 2
    tilt_module* M = nullptr;
    REQUIRE(tilt_module_from_json(entry.s, &M) == TILT_OK);
    CHECK(tilt_module_dim(M) == 2);
    Str back;
    REQUIRE(tilt_module_to_json(M, &back.s) == TILT_OK);
    CHECK(std::string(entry.s) == back.s); // bit-identical round trip

    Str verdict;
    REQUIRE(tilt_check_membership(T, M, "V", &verdict.s) == TILT_OK);
    auto j = nlohmann::json::parse(verdict.s);
    CHECK(j["status"] == "IN_IDEAL");
    CHECK(j["input_id"] == "V");
    CHECK(j["tilt_multiset"] == nlohmann::json({{"3", 1}})); // S (x) V = T_3

    tilt_module_destroy(M);
    tilt_table_destroy(T);
    tilt_field_destroy(F);
}

TEST_CASE("fuzz and verify through the C surface") {
    tilt_field* F = nullptr;
    REQUIRE(tilt_field_create(3, 2, &F) == TILT_OK);
    tilt_table* T = nullptr;
    REQUIRE(tilt_table_create(F, 2, nullptr, &T) == TILT_OK);

    Str report;
    int candidates = -1;
    REQUIRE(tilt_fuzz(T, 7, 5, "loewy2", 40, nullptr, 2, &report.s, &candidates) == TILT_OK);
    auto j = nlohmann::json::parse(report.s);
    CHECK(j["in_ideal"] == 5);
    CHECK(candidates == 0);
    CHECK(tilt_fuzz(T, 7, 5, "nosuch", 40, nullptr, 1, &report.s, &candidates) ==
          TILT_ERR_INVALID);

    Str diag;
    int pass = 0;
    REQUIRE(tilt_verify(T, "omega", &diag.s, &pass) == TILT_OK);
    CHECK(pass == 1);
    CHECK(tilt_verify(T, "bogus", nullptr, &pass) == TILT_ERR_INVALID);

    const char* const* names = tilt_suite_names();
    int n = 0;
    bool has_omega = false;
    for (; names[n]; ++n)
        if (std::string(names[n]) == "omega") has_omega = true;
    CHECK(n == 10);
    CHECK(has_omega);

    tilt_table_destroy(T);
    tilt_field_destroy(F);
}
