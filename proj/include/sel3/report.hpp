#ifndef SEL3_REPORT_HPP
#define SEL3_REPORT_HPP

#include <string>
#include <vector>

#include "sel3/cubesum.hpp"
#include "sel3/selmer.hpp"

namespace sel3 {

// all integers rendered as decimal strings
std::string type1_report_json(const Type1Analysis& R, double elapsed_ms);
std::string type2_report_json(const Type2Analysis& R, double elapsed_ms);
std::string cubesum_report_json(const CubeSumVerdict& V, double elapsed_ms);

// CSV rows in the reference-table column layouts
std::string table1_csv_header();
std::string table1_csv_row(const Type1Analysis& R, const std::string& r_ext);
std::string table2_csv_header();
std::string table2_csv_row(const Type2Analysis& R, const std::string& r_ext);

std::string kprimes_str(const std::vector<KPrime>& S);  // "{}", "{2;p3}", "{7a;7b}"
std::string rationals_str(const std::vector<ZZ>& S);

}  // namespace sel3

#endif
