#include "diagssp/report.hpp"

#include <sstream>

namespace diagssp {

using nlohmann::json;

json json_mpz(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json json_mpq(const mpq_class& v) {
  if (v.get_den() == 1) return json_mpz(v.get_num());
  return json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

json json_qsqrt(const QSqrt& v) {
  return json{{"a_num", v.a().get_num().get_str()},
              {"a_den", v.a().get_den().get_str()},
              {"b_num", v.b().get_num().get_str()},
              {"b_den", v.b().get_den().get_str()},
              {"q", v.q().get_str()}};
}

json json_solution_count(const SolutionCount& sc) {
  return json{{"count", json_mpz(sc.count)},
              {"method", sc.method == CountMethod::DP ? "dp" : "brute"},
              {"q", sc.q},
              {"m", sc.m},
              {"l", sc.l},
              {"exponents", sc.exponents},
              {"b", sc.targets}};
}

json json_count_report(const CountReport& rep) {
  return json{{"instance_id", rep.instance_id},
              {"kind", rep.kind},
              {"q", json_mpz(rep.q)},
              {"p", rep.p},
              {"s", rep.s},
              {"k", rep.k},
              {"m", rep.m},
              {"exponents", rep.exponents},
              {"b", rep.targets},
              {"exact", json_mpz(rep.exact)},
              {"main_term", json_mpq(rep.main_term)},
              {"bound", json_qsqrt(rep.bound)},
              {"residual", json_mpq(rep.residual)},
              {"in_hypothesis", rep.in_hypothesis},
              {"pass", rep.pass},
              {"method", rep.method},
              {"note", rep.note}};
}

json report_envelope(const std::string& command, const json& config_echo, json rows) {
  std::size_t pass = 0, fail = 0, out_of_hyp = 0;
  for (const auto& row : rows) {
    if (row.contains("pass")) {
      if (row["pass"].get<bool>())
        ++pass;
      else
        ++fail;
    }
    if (row.contains("in_hypothesis") && !row["in_hypothesis"].get<bool>()) ++out_of_hyp;
  }
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"config_echo", config_echo},
              {"rows", std::move(rows)},
              {"summary",
               {{"total", pass + fail}, {"pass", pass}, {"fail", fail},
                {"out_of_hypothesis", out_of_hyp}}}};
}

std::string csv_header() {
  return "instance_id,q,p,s,k,m,exponents,b,exact,main_term,bound,residual,in_hypothesis,pass";
}

namespace {

std::string join_pipe(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "|" : "") << v[i];
  return os.str();
}

std::string mpq_str(const mpq_class& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace

std::string csv_row(const CountReport& rep) {
  std::ostringstream os;
  os << rep.instance_id << ',' << rep.q.get_str() << ',' << rep.p << ',' << rep.s << ',' << rep.k
     << ',' << rep.m << ',' << join_pipe(rep.exponents) << ','
     << join_pipe({rep.targets.begin(), rep.targets.end()}) << ',' << rep.exact.get_str() << ','
     << mpq_str(rep.main_term) << ',' << rep.bound.str() << ',' << mpq_str(rep.residual) << ','
     << (rep.in_hypothesis ? "true" : "false") << ',' << (rep.pass ? "true" : "false");
  return os.str();
}

}  // namespace diagssp
