#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sel3.h"

using nlohmann::json;

namespace {

struct Ctx {
    sel3_ctx* p;
    Ctx() : p(sel3_ctx_new()) {}
    ~Ctx() { sel3_ctx_free(p); }
};

json call1(sel3_ctx* ctx, const char* a, const char* opts = "") {
    char* out = nullptr;
    int rc = sel3_analyze_type1(ctx, a, opts, &out);
    REQUIRE(rc == SEL3_OK);
    json j = json::parse(out);
    sel3_free_string(out);
    return j;
}

}  // namespace

TEST_CASE("type1 through the C surface") {
    Ctx c;
    json j = call1(c.p, "5", "{\"rank\": 2}");
    CHECK(j["a_K"] == "5");
    CHECK(j["S_a"] == json::array({"2"}));
    CHECK(j["S_a_Q"] == json::array({"2"}));
    CHECK(j["S_aalpha2_Q"] == json::array());
    CHECK(j["size_S_a_L"] == "2");
    CHECK(j["sel_phi_K"]["lower"] == "0");
    CHECK(j["sel_phi_K"]["upper"] == "3");
    CHECK(j["sel3_K"]["lower"] == "2");
    CHECK(j["sel3_K"]["upper"] == "6");

    json j7 = call1(c.p, "7", "{\"root_number\": 1}");
    CHECK(j7["sel_phi_K_dim"] == "0");

    // JSON round-trips losslessly
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("error paths set codes and messages") {
    Ctx c;
    char* out = nullptr;
    CHECK(sel3_analyze_type1(c.p, "0", "", &out) == SEL3_ERR_INVALID);
    CHECK(std::string(sel3_last_error(c.p)).size() > 0);
    CHECK(sel3_analyze_type1(c.p, "xyz", "", &out) == SEL3_ERR_INVALID);
    CHECK(sel3_analyze_type2(c.p, "4", "8", "", &out) == SEL3_ERR_INVALID);
    CHECK(sel3_cube_sum(c.p, "12", "", &out) == SEL3_ERR_INVALID);

    Ctx small;
    sel3_ctx_set_disc_limit(small.p, 100);
    CHECK(sel3_analyze_type1(small.p, "359", "", &out) == SEL3_ERR_LIMIT);

    // inconsistent external inputs violate an interval: theorem-consistency code
    CHECK(sel3_analyze_type1(c.p, "7", "{\"root_number\": 1, \"rank\": 2}", &out) ==
          SEL3_ERR_INTERNAL);
}

TEST_CASE("type2 and cubesum through the C surface") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(sel3_analyze_type2(c.p, "79", "131", "", &out) == SEL3_OK);
    json j = json::parse(out);
    sel3_free_string(out);
    CHECK(j["S2"] == json::array({"131"}));
    CHECK(j["sel_psi"]["lower"] == "2");
    CHECK(j["sel_psi"]["upper"] == "4");
    CHECK(j["sel3_K"]["upper"] == "10");

    REQUIRE(sel3_cube_sum(c.p, "62", "", &out) == SEL3_OK);
    json v = json::parse(out);
    sel3_free_string(out);
    CHECK(v["status"] == "CubeSum");
    CHECK(v["certificate"]["x"] == "31");
    CHECK(v["certificate"]["y"] == "62");
}

TEST_CASE("table rows") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(sel3_table_header(1, &out) == SEL3_OK);
    std::string hdr = out;
    sel3_free_string(out);
    CHECK(hdr.substr(0, 2) == "a,");
    REQUIRE(sel3_table_row(c.p, 1, "5", "", "2", &out) == SEL3_OK);
    std::string row = out;
    sel3_free_string(out);
    CHECK(row == "5,{2},{2},{},2,0,2,0,3,2,6");
    REQUIRE(sel3_table_row(c.p, 2, "79", "131", "0", &out) == SEL3_OK);
    row = out;
    sel3_free_string(out);
    CHECK(row == "79,131,{},{131},{},2,2,0,2,4,2,10");
}

TEST_CASE("concurrent use of one context") {
    Ctx c;
    std::vector<std::thread> ts;
    std::atomic<int> bad{0};
    for (int i = 0; i < 4; ++i)
        ts.emplace_back([&, i] {
            const char* as[] = {"58", "62", "67", "74"};
            char* out = nullptr;
            if (sel3_analyze_type1(c.p, as[i], "", &out) != SEL3_OK)
                ++bad;
            else
                sel3_free_string(out);
        });
    for (auto& t : ts) t.join();
    CHECK(bad == 0);
}
