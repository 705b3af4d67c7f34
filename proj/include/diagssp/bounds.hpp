#ifndef DIAGSSP_BOUNDS_HPP
#define DIAGSSP_BOUNDS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagssp/diagonal_count.hpp"
#include "diagssp/moment_ssp.hpp"
#include "diagssp/qsqrt.hpp"

namespace diagssp {

// An exactly evaluated estimate together with its provenance. in_hypothesis is
// false when the estimate's hypotheses do not cover the inputs; the
// value is still exact and callers decide whether to assert or just report.
struct BoundValue {
  QSqrt value;
  std::string formula;
  bool in_hypothesis = true;
};

// 27 * 2^(m-1) * (3 + d_m*m)^(k+1) * q^(k/2). Hypothesis: m <= (k-1)/2.
BoundValue bound_main_estimate(const mpz_class& q, std::uint32_t k, std::uint32_t m,
                               std::uint64_t d_m);

// M * (-1)^k * binom(-sqrt(q), k) with M = 81 * 2^(m-1) * (3 + d_m*m)^(k+1);
// always positive.
BoundValue error_term_M(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint64_t d_m);

// The predicted N_m(k,b) main term: binom(q,k)/q^m when p does not divide k,
// and (binom(q,k) + (-1)^(k+k/p) v(b) binom(q/p,k/p)) / q^m with
// v(b) = q^m - 1 for b = 0 and v(b) = -1 otherwise, when p divides k.
mpq_class nm_main_term(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint32_t p,
                       bool b_is_zero);

// q^(k-m) - (3 d_m m)^(k+1) q^(k/2) - (k^2/2)(q^(k-m-1) + (3 d_m m)^k q^((k-1)/2)).
// Positive value certifies N_m(k,b) > 0. Hypothesis: m <= (k-2)/2.
BoundValue brun_lower_bound(const mpz_class& q, std::uint32_t k, std::uint32_t m,
                            std::uint64_t d_m);

// Sign of the rearranged form of the same condition:
// q^((k-1)/2-m) (q - k^2/2) > (3 d_m m)^k (3 d_m m sqrt(q) + k^2/2).
bool brun_rearranged_holds(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint64_t d_m);

// One boolean per existence criterion, every fractional-power comparison
// integerized. b_is_zero = nullopt means the target vector is unknown; the
// b-dependent disjunction branches then evaluate to false.
struct ExistencePredicates {
  std::optional<bool> min_field_size;  // q^(k-2m) > (7/2 m d_m)^(2k+2); nullopt if k <= 2m
  bool large_q_generic = false;        // p >= 3, p|k only with b = 0, q > 2^20
  bool large_q_p_divides = false;      // p >= 3, p | k, b != 0, q >= 2^21
  bool brun_linear = false;            // m <= d_m <= (k-25)/50, k <= q^0.24
  bool brun_image = false;             // m*n < (k-25)/50, k <= q^0.24
};

ExistencePredicates existence_predicates(const mpz_class& q, std::uint32_t p, std::uint32_t s,
                                         std::uint32_t k, std::uint32_t m, std::uint64_t d_m,
                                         std::uint64_t n,
                                         std::optional<bool> b_is_zero = std::nullopt);

// The exact decision of k <= 2 q^(9/10) - sqrt(q) + 1, shared by several
// predicates: (k - 1 + sqrt(q))^10 <= 2^10 q^9 after moving terms.
bool k_within_range_condition(const mpz_class& q, std::uint32_t k);

// The two homogeneous-case error bounds:
// first  27 * 2^(m-1) * (m^2+3)^(k+1) * q^((k-m+1)/2),
// second (7/2 m^2)^(k+1) * (-1)^k binom(-sqrt(q),k) / q^((m-1)/2).
struct HomogeneousBounds {
  BoundValue diagonal;
  BoundValue ssp;
};

HomogeneousBounds homogeneous_bounds(const mpz_class& q, std::uint32_t k, std::uint32_t m);

// (q/(sqrt(q)+k-1))^k <= binom(q,k) / ((-1)^k binom(-sqrt(q),k)) <= q^(k/2),
// all three sides exact in Q[sqrt(q)]. Hypothesis: k <= q - sqrt(q) + 1.
struct SandwichResult {
  QSqrt lower;
  QSqrt ratio;
  QSqrt upper;
  bool pass;
};

SandwichResult sandwich_check(const mpz_class& q, std::uint32_t k);

// Auxiliary inequalities backing the main estimates; nullopt = hypothesis unmet.
struct RemarkChecks {
  std::optional<bool> sandwich;              // binomial-ratio sandwich
  std::optional<bool> ratio_dominates_qm;    // q^(0.1k)/2^k >= q^m
  std::optional<bool> binom_quotient_bound;  // binom(q/p,k/p) <= binom(q,k)(k/q)^(2p-2)
  std::optional<bool> error_term_dominates;  // both M_1-vs-secondary-term inequalities
};

RemarkChecks auxiliary_remarks_check(const mpz_class& q, std::uint32_t p, std::uint32_t k,
                                     std::uint32_t m, std::uint64_t d_m);

// One verified instance: exact count vs predicted main term and error bound.
struct CountReport {
  std::string instance_id;
  std::string kind;  // "diagonal" or "ssp"
  mpz_class q;
  std::uint32_t p = 0;
  std::uint32_t s = 0;
  std::uint32_t k = 0;  // number of variables / subset size
  std::uint32_t m = 0;
  std::vector<std::uint64_t> exponents;
  std::vector<FieldElem> targets;
  mpz_class exact;
  mpq_class main_term;
  QSqrt bound;
  mpq_class residual;  // |exact - main_term|
  bool in_hypothesis = false;
  bool pass = false;
  std::string method;
  std::string note;
};

// Verifies an unweighted full-field diagonal system: |count - q^(k-m)|
// against bound_main_estimate.
CountReport verify_diagonal_instance(const WeightedDiagonalSystem& sys,
                                     const CountLimits& limits = {});

// Verifies a moment subset-sum instance: |N - main term| against error_term_M.
CountReport verify_ssp_instance(const MomentInstance& inst, const CountLimits& limits = {});

}  // namespace diagssp

#endif
