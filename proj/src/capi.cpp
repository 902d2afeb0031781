#include "sel3.h"

#include <chrono>
#include <cstring>
#include <functional>
#include <mutex>
#include <string>

#include <json.hpp>

#include "sel3/report.hpp"

using namespace sel3;
using nlohmann::json;

struct sel3_ctx {
    ClassGroupProvider cg;
};

namespace {
// errno-style: each thread sees the message of its own last failing call
thread_local std::string t_last_error;
}  // namespace

namespace {

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ZZ parse_zz(const char* s) {
    if (!s || !*s) throw invalid_input("empty integer argument");
    try {
        return ZZ(s);
    } catch (...) {
        throw invalid_input(std::string("not a decimal integer: ") + s);
    }
}

json parse_options(const char* options_json) {
    if (!options_json || !*options_json) return json::object();
    json j = json::parse(options_json, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw invalid_input("options must be a JSON object");
    return j;
}

int run(sel3_ctx* ctx, char** out, const std::function<std::string()>& fn) {
    if (!ctx || !out) return SEL3_ERR_INVALID;
    *out = nullptr;
    try {
        auto t0 = std::chrono::steady_clock::now();
        std::string s = fn();
        (void)t0;
        *out = dup_string(s);
        return SEL3_OK;
    } catch (const invalid_input& e) {
        t_last_error = e.what();
        return SEL3_ERR_INVALID;
    } catch (const limit_exceeded& e) {
        t_last_error = e.what();
        return SEL3_ERR_LIMIT;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SEL3_ERR_INTERNAL;
    }
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Type1Analysis analyze1(sel3_ctx* ctx, const char* a, const json& opt) {
    Type1Options o;
    if (opt.contains("root_number")) o.root_number = opt["root_number"].get<int>();
    if (opt.contains("rank")) o.rank = opt["rank"].get<long>();
    if (opt.contains("sha_phi")) o.sha_phi = opt["sha_phi"].get<int>();
    return analyze_type1(ctx->cg, parse_zz(a), o);
}

Type2Analysis analyze2(sel3_ctx* ctx, const char* a, const char* b, const json& opt) {
    Type2Options o;
    if (opt.contains("rank")) o.rank = opt["rank"].get<long>();
    return analyze_type2(ctx->cg, parse_zz(a), parse_zz(b), o);
}

}  // namespace

extern "C" {

sel3_ctx* sel3_ctx_new(void) { return new sel3_ctx(); }

void sel3_ctx_free(sel3_ctx* ctx) { delete ctx; }

int sel3_ctx_set_cache_path(sel3_ctx* ctx, const char* path) {
    if (!ctx) return SEL3_ERR_INVALID;
    ctx->cg.cache().set_path(path ? path : "");
    return SEL3_OK;
}

int sel3_ctx_set_disc_limit(sel3_ctx* ctx, long long limit) {
    if (!ctx || limit < 4) return SEL3_ERR_INVALID;
    ctx->cg.set_disc_limit(limit);
    return SEL3_OK;
}

const char* sel3_last_error(const sel3_ctx* ctx) {
    return ctx ? t_last_error.c_str() : "null context";
}

int sel3_analyze_type1(sel3_ctx* ctx, const char* a, const char* options_json, char** json_out) {
    return run(ctx, json_out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto R = analyze1(ctx, a, parse_options(options_json));
        return type1_report_json(R, ms_since(t0));
    });
}

int sel3_analyze_type2(sel3_ctx* ctx, const char* a, const char* b, const char* options_json,
                       char** json_out) {
    return run(ctx, json_out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto R = analyze2(ctx, a, b, parse_options(options_json));
        return type2_report_json(R, ms_since(t0));
    });
}

int sel3_cube_sum(sel3_ctx* ctx, const char* D, const char* options_json, char** json_out) {
    return run(ctx, json_out, [&] {
        auto t0 = std::chrono::steady_clock::now();
        json opt = parse_options(options_json);
        CubeSumFlags flags;
        if (opt.contains("assume_sha_even")) flags.sha_even = opt["assume_sha_even"].get<bool>();
        if (opt.contains("rank_positive")) flags.rank_positive = opt["rank_positive"].get<bool>();
        if (opt.contains("search_height")) flags.search_height = opt["search_height"].get<long>();
        auto V = cube_sum_verdict(parse_zz(D), flags);
        return cubesum_report_json(V, ms_since(t0));
    });
}

int sel3_table_row(sel3_ctx* ctx, int which, const char* a, const char* b, const char* r_ext,
                   char** csv_out) {
    return run(ctx, csv_out, [&]() -> std::string {
        std::string r = r_ext ? r_ext : "";
        if (which == 1) {
            auto R = analyze1(ctx, a, json::object());
            return table1_csv_row(R, r);
        }
        if (which == 2) {
            auto R = analyze2(ctx, a, b, json::object());
            return table2_csv_row(R, r);
        }
        throw invalid_input("table: which must be 1 or 2");
    });
}

int sel3_table_header(int which, char** csv_out) {
    if (!csv_out) return SEL3_ERR_INVALID;
    if (which == 1)
        *csv_out = dup_string(table1_csv_header());
    else if (which == 2)
        *csv_out = dup_string(table2_csv_header());
    else
        return SEL3_ERR_INVALID;
    return SEL3_OK;
}

void sel3_free_string(char* s) { std::free(s); }

const char* sel3_version(void) { return "0.1.0"; }

}  // extern "C"
