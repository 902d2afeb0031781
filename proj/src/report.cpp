#include "sel3/report.hpp"

#include <json.hpp>

namespace sel3 {

using nlohmann::json;

namespace {

json bounds_json(const SelmerBounds& b) {
    return json{{"lower", std::to_string(b.lower)},
                {"upper", std::to_string(b.upper)},
                {"lower_source", b.lower_source},
                {"upper_source", b.upper_source},
                {"assumptions", b.assumptions}};
}

json kprimes_json(const std::vector<KPrime>& S) {
    json a = json::array();
    for (auto& q : S) a.push_back(q.str());
    return a;
}

json rationals_json(const std::vector<ZZ>& S) {
    json a = json::array();
    for (auto& l : S) a.push_back(l.get_str());
    return a;
}

json point_json(const PtQ& P) {
    if (P.infinity) return json{{"infinity", true}};
    return json{{"x", P.x.get_str()}, {"y", P.y.get_str()}};
}

}  // namespace

std::string kprimes_str(const std::vector<KPrime>& S) {
    std::string s = "{";
    for (size_t i = 0; i < S.size(); ++i) {
        if (i) s += ";";
        s += S[i].str();
    }
    return s + "}";
}

std::string rationals_str(const std::vector<ZZ>& S) {
    std::string s = "{";
    for (size_t i = 0; i < S.size(); ++i) {
        if (i) s += ";";
        s += S[i].get_str();
    }
    return s + "}";
}

std::string type1_report_json(const Type1Analysis& R, double elapsed_ms) {
    json j{{"type", "type1"},
           {"a_input", R.a_input.get_str()},
           {"a_K", R.a_K.get_str()},
           {"a_Q", R.a_Q.get_str()},
           {"a_in_Ksq", R.a_in_Ksq},
           {"S_a", kprimes_json(R.sets.S_a)},
           {"S_a_Q", rationals_json(R.sets.S_a_Q)},
           {"S_aalpha2_Q", rationals_json(R.sets.S_aalpha2_Q)},
           {"size_S_a_L", std::to_string(R.sets.size_SaL)},
           {"sel_phi_K", bounds_json(R.phi_K)},
           {"sel_phi_Q", bounds_json(R.phi_Q)},
           {"sel3_K", bounds_json(R.sel3_K)},
           {"sel3_Q", bounds_json(R.sel3_Q)},
           {"elapsed_ms", elapsed_ms}};
    if (!R.a_in_Ksq) {
        j["h3_S_L"] = std::to_string(R.cd.h3_SL);
        j["h3_Q1"] = std::to_string(R.cd.h3_Q1);
        j["h3_Q2"] = std::to_string(R.cd.h3_Q2);
    }
    if (R.refined_phi_dim) j["sel_phi_K_dim"] = std::to_string(*R.refined_phi_dim);
    if (R.sha_phi_floor) j["sha_phi_floor"] = std::to_string(*R.sha_phi_floor);
    if (R.rank_Q_identity) j["rank_Q_identity"] = std::to_string(*R.rank_Q_identity);
    if (R.cert.rank) j["rank"] = std::to_string(*R.cert.rank);
    if (R.cert.root_number) j["root_number"] = std::to_string(*R.cert.root_number);
    return j.dump();
}

std::string type2_report_json(const Type2Analysis& R, double elapsed_ms) {
    json j{{"type", "type2"},
           {"a", R.E.a.get_str()},
           {"b", R.E.b.get_str()},
           {"d", R.E.d().get_str()},
           {"a_in_Ksq", R.a_in_Ksq},
           {"S1", kprimes_json(R.sets.S1)},
           {"S2", kprimes_json(R.sets.S2)},
           {"S3", kprimes_json(R.sets.S3)},
           {"size_S12_L", std::to_string(R.sets.size_S12L)},
           {"size_S13_L", std::to_string(R.sets.size_S13L)},
           {"sel_psi", bounds_json(R.psi)},
           {"sel_psi_hat", bounds_json(R.psi_hat)},
           {"sel3_K", bounds_json(R.sel3_K)},
           {"elapsed_ms", elapsed_ms}};
    if (!R.a_in_Ksq) {
        j["h3_S12_L"] = std::to_string(R.cd.h3_S12);
        j["h3_S13_L"] = std::to_string(R.cd.h3_S13);
    }
    if (R.cert.rank) j["rank"] = std::to_string(*R.cert.rank);
    return j.dump();
}

std::string cubesum_report_json(const CubeSumVerdict& V, double elapsed_ms) {
    json j{{"type", "cubesum"},
           {"D", V.D.get_str()},
           {"status", status_name(V.status)},
           {"hypotheses", V.hypotheses},
           {"selmer_dim", std::to_string(V.selmer_dim)},
           {"source", V.source},
           {"elapsed_ms", elapsed_ms}};
    if (V.rank) j["rank"] = std::to_string(*V.rank);
    if (V.certificate) {
        j["certificate"] = point_json(*V.certificate);
        j["certificate_curve_a"] = V.certificate_curve_a.get_str();
    }
    return j.dump();
}

std::string table1_csv_header() {
    return "a,S_a,S_a(Q),S_aa2(Q),|S_a(L)|,h3_SaL,r,s_phi_l,s_phi_u,s3_l,s3_u";
}

std::string table1_csv_row(const Type1Analysis& R, const std::string& r_ext) {
    long rk = 0;
    try {
        rk = std::stol(r_ext);
    } catch (...) {
    }
    int s3l = std::max<long>(R.phi_K.lower, rk);
    return R.a_input.get_str() + "," + kprimes_str(R.sets.S_a) + "," +
           rationals_str(R.sets.S_a_Q) + "," + rationals_str(R.sets.S_aalpha2_Q) + "," +
           std::to_string(R.sets.size_SaL) + "," + std::to_string(R.cd.h3_SL) + "," +
           (r_ext.empty() ? "?" : r_ext) + "," + std::to_string(R.phi_K.lower) + "," +
           std::to_string(R.phi_K.upper) + "," + std::to_string(s3l) + "," +
           std::to_string(2 * R.phi_K.upper);
}

std::string table2_csv_header() {
    return "a,b,S1,S2,S3,h3_S12L,h3_S13L,r,s_psi_l,s_psi_u,s3_l,s3_u";
}

std::string table2_csv_row(const Type2Analysis& R, const std::string& r_ext) {
    long rk = 0;
    try {
        rk = std::stol(r_ext);
    } catch (...) {
    }
    int s3l = std::max<long>(R.psi.lower, rk);
    int s3u = R.sel3_K.upper;
    return R.E.a.get_str() + "," + R.E.b.get_str() + "," + kprimes_str(R.sets.S1) + "," +
           kprimes_str(R.sets.S2) + "," + kprimes_str(R.sets.S3) + "," +
           std::to_string(R.cd.h3_S12) + "," + std::to_string(R.cd.h3_S13) + "," +
           (r_ext.empty() ? "?" : r_ext) + "," + std::to_string(R.psi.lower) + "," +
           std::to_string(R.psi.upper) + "," + std::to_string(s3l) + "," + std::to_string(s3u);
}

}  // namespace sel3
