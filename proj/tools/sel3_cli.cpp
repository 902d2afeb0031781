// sel3 command-line tool. Talks to the core exclusively through the C API.
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sel3.h"

namespace {

struct CtxGuard {
    sel3_ctx* ctx;
    CtxGuard() : ctx(sel3_ctx_new()) {
        const char* cache = std::getenv("SEL3_CACHE");
        if (cache && *cache) sel3_ctx_set_cache_path(ctx, cache);
    }
    ~CtxGuard() { sel3_ctx_free(ctx); }
};

int report_error(sel3_ctx* ctx, int rc) {
    std::cerr << "error: " << sel3_last_error(ctx) << "\n";
    return rc;
}

int emit(sel3_ctx* ctx, int rc, char* out) {
    if (rc != SEL3_OK) return report_error(ctx, rc);
    std::cout << out << "\n";
    sel3_free_string(out);
    return 0;
}

struct TableRow {
    std::string a, b, r;
};

std::vector<TableRow> read_rows(const std::string& path, int which, bool& ok) {
    std::vector<TableRow> rows;
    ok = true;
    std::ifstream in(path);
    if (!in) {
        ok = false;
        return rows;
    }
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line = line.substr(0, pos);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        TableRow row;
        row.a = cells.empty() ? "" : cells[0];
        if (which == 2) {
            row.b = cells.size() > 1 ? cells[1] : "";
            row.r = cells.size() > 2 ? cells[2] : "";
        } else {
            row.r = cells.size() > 1 ? cells[1] : "";
        }
        rows.push_back(row);
    }
    return rows;
}

int run_table(sel3_ctx* ctx, int which, const std::string& rows_file, int jobs) {
    bool ok = false;
    auto rows = read_rows(rows_file, which, ok);
    if (!ok) {
        std::cerr << "error: cannot read rows file " << rows_file << "\n";
        return SEL3_ERR_INVALID;
    }
    char* hdr = nullptr;
    sel3_table_header(which, &hdr);
    std::cout << hdr << "\n";
    sel3_free_string(hdr);

    std::vector<std::string> results(rows.size());
    std::vector<int> codes(rows.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= rows.size()) break;
            char* out = nullptr;
            int rc = sel3_table_row(ctx, which, rows[i].a.c_str(), rows[i].b.c_str(),
                                    rows[i].r.c_str(), &out);
            codes[i] = rc;
            if (rc == SEL3_OK) {
                results[i] = out;
                sel3_free_string(out);
            } else {
                results[i] = "# row " + std::to_string(i + 1) + " (" + rows[i].a +
                             (which == 2 ? "," + rows[i].b : "") +
                             ") failed: " + sel3_last_error(ctx);
            }
        }
    };
    if (jobs < 1) jobs = 1;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    int worst = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::cout << results[i] << "\n";
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-isogeny Selmer bounds and rational cube sums"};
    app.require_subcommand(1);

    std::string a, b, D, rows_file, rank, root, sha_phi;
    bool json_out = false, csv_out = false, assume_sha = false, rank_positive = false;
    long search_height = 0;
    int which = 1, jobs = (int)std::thread::hardware_concurrency();
    long long disc_limit = 0;
    app.add_option("--disc-limit", disc_limit, "enumeration cap on |discriminant|");

    auto* t1 = app.add_subcommand("type1", "analyze E_a : y^2 = x^3 + a");
    t1->add_option("--a", a, "coefficient a")->required();
    t1->add_option("--rank", rank, "rk E_a(K), externally computed");
    t1->add_option("--root-number", root, "omega(E_a/Q), +1 or -1");
    t1->add_option("--sha-phi", sha_phi, "dim Sha(E_a/K)[phi], externally computed");
    t1->add_flag("--json", json_out, "JSON output (default)");
    t1->add_flag("--csv", csv_out, "CSV row output");

    auto* t2 = app.add_subcommand("type2", "analyze E_{a,b} : y^2 = x^3 + a(x-b)^2");
    t2->add_option("--a", a, "coefficient a")->required();
    t2->add_option("--b", b, "coefficient b")->required();
    t2->add_option("--rank", rank, "rk E_{a,b}(K), externally computed");
    t2->add_flag("--json", json_out, "JSON output (default)");
    t2->add_flag("--csv", csv_out, "CSV row output");

    auto* cs = app.add_subcommand("cubesum", "rational cube sum verdict for D = l, 2l, l^2");
    cs->add_option("--D", D, "the integer to test")->required();
    cs->add_flag("--assume-sha-even", assume_sha, "record the Sha-parity hypothesis as assumed");
    cs->add_flag("--rank-positive", rank_positive, "record rk > 0 as externally given");
    cs->add_option("--search-height", search_height, "naive point search height (0 = off)");

    auto* tb = app.add_subcommand("table", "batch CSV over a rows file");
    tb->add_option("--which", which, "1 (E_a) or 2 (E_{a,b})")->required();
    tb->add_option("--rows", rows_file, "CSV rows: a[,r] or a,b[,r]; # comments")->required();
    tb->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : SEL3_ERR_INVALID;
    }

    CtxGuard g;
    if (disc_limit > 0) sel3_ctx_set_disc_limit(g.ctx, disc_limit);

    auto opts_json = [&] {
        std::string j = "{";
        bool first = true;
        auto add = [&](const std::string& k, const std::string& v, bool quote) {
            if (v.empty()) return;
            if (!first) j += ",";
            first = false;
            j += "\"" + k + "\":" + (quote ? "\"" + v + "\"" : v);
        };
        std::string rn = root;
        if (!rn.empty() && rn[0] == '+') rn = rn.substr(1);
        add("rank", rank, false);
        add("root_number", rn, false);
        add("sha_phi", sha_phi, false);
        if (assume_sha) add("assume_sha_even", "true", false);
        if (rank_positive) add("rank_positive", "true", false);
        if (search_height > 0) add("search_height", std::to_string(search_height), false);
        return j + "}";
    };

    char* out = nullptr;
    int rc = SEL3_ERR_INVALID;
    if (t1->parsed()) {
        if (csv_out) {
            char* hdr = nullptr;
            sel3_table_header(1, &hdr);
            std::cout << hdr << "\n";
            sel3_free_string(hdr);
            rc = sel3_table_row(g.ctx, 1, a.c_str(), "", rank.c_str(), &out);
        } else {
            rc = sel3_analyze_type1(g.ctx, a.c_str(), opts_json().c_str(), &out);
        }
        return emit(g.ctx, rc, out);
    }
    if (t2->parsed()) {
        if (csv_out) {
            char* hdr = nullptr;
            sel3_table_header(2, &hdr);
            std::cout << hdr << "\n";
            sel3_free_string(hdr);
            rc = sel3_table_row(g.ctx, 2, a.c_str(), b.c_str(), rank.c_str(), &out);
        } else {
            rc = sel3_analyze_type2(g.ctx, a.c_str(), b.c_str(), opts_json().c_str(), &out);
        }
        return emit(g.ctx, rc, out);
    }
    if (cs->parsed()) {
        rc = sel3_cube_sum(g.ctx, D.c_str(), opts_json().c_str(), &out);
        return emit(g.ctx, rc, out);
    }
    if (tb->parsed()) return run_table(g.ctx, which, rows_file, jobs);
    return SEL3_ERR_INVALID;
}
