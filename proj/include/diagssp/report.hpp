#ifndef DIAGSSP_REPORT_HPP
#define DIAGSSP_REPORT_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "diagssp/bounds.hpp"
#include "diagssp/diagonal_count.hpp"
#include "diagssp/qsqrt.hpp"

namespace diagssp {

inline constexpr int kSchemaVersion = 1;

// Integers within 64-bit range serialize as JSON numbers, larger ones as
// decimal strings.
nlohmann::json json_mpz(const mpz_class& v);
nlohmann::json json_mpq(const mpq_class& v);

// {"a_num","a_den","b_num","b_den","q"} decimal strings.
nlohmann::json json_qsqrt(const QSqrt& v);

nlohmann::json json_solution_count(const SolutionCount& sc);
nlohmann::json json_count_report(const CountReport& rep);

// Report envelope: {schema_version, command, config_echo, rows, summary}.
nlohmann::json report_envelope(const std::string& command, const nlohmann::json& config_echo,
                               nlohmann::json rows);

std::string csv_header();
std::string csv_row(const CountReport& rep);

}  // namespace diagssp

#endif
