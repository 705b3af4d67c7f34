#include "diagssp/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace diagssp {

namespace {

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpz_class pow_ui(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// M_1 = 27 * 2^(m-1) * (3 + d_m*m)^(k+1), exact integer (2^(m-1) = 1 at m=1).
mpz_class m1_constant(std::uint32_t k, std::uint32_t m, std::uint64_t d_m) {
  return 27 * pow_ui(2, m - 1) * pow_mpz(mpz_class(3) + mpz_class(d_m) * m, k + 1);
}

// (-1)^k * binom(-sqrt(q), k) = sqrt(q)(sqrt(q)+1)...(sqrt(q)+k-1)/k!,
// always positive.
QSqrt rising_binom(const mpz_class& q, std::uint32_t k) {
  QSqrt acc(mpq_class(1));
  const QSqrt root = QSqrt::root(q);
  for (std::uint32_t i = 0; i < k; ++i) acc = acc * (root + QSqrt(static_cast<long>(i)));
  return acc / QSqrt(mpq_class(factorial_mpz(k)));
}

}  // namespace

BoundValue bound_main_estimate(const mpz_class& q, std::uint32_t k, std::uint32_t m,
                               std::uint64_t d_m) {
  BoundValue out;
  out.formula = "diagonal-main-estimate";
  out.in_hypothesis = k >= 1 && 2 * m <= k - 1;
  out.value = QSqrt(mpq_class(m1_constant(k, m, d_m))) * q_half_power(q, k);
  return out;
}

BoundValue error_term_M(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint64_t d_m) {
  BoundValue out;
  out.formula = "ssp-error-term";
  const mpz_class big_m = 3 * m1_constant(k, m, d_m);  // 3^4 * 2^(m-1) * (...)^(k+1)
  out.value = QSqrt(mpq_class(big_m)) * rising_binom(q, k);
  if (out.value.sign() <= 0) throw internal_error("error_term_M must be positive");
  return out;
}

mpq_class nm_main_term(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint32_t p,
                       bool b_is_zero) {
  const mpz_class qm = pow_mpz(q, m);
  mpz_class numerator = binom_mpz(q, k);
  if (k % p == 0) {
    if (!mpz_divisible_ui_p(q.get_mpz_t(), p)) throw usage_error("nm_main_term: p must divide q");
    const mpz_class correction = binom_mpz(q / p, k / p);
    const mpz_class v = b_is_zero ? mpz_class(qm - 1) : mpz_class(-1);
    mpz_class signed_term = v * correction;
    if ((k + k / p) % 2 == 1) signed_term = -signed_term;
    numerator += signed_term;
  }
  mpq_class out(numerator, qm);
  out.canonicalize();
  return out;
}

BoundValue brun_lower_bound(const mpz_class& q, std::uint32_t k, std::uint32_t m,
                            std::uint64_t d_m) {
  BoundValue out;
  out.formula = "brun-lower-bound";
  out.in_hypothesis = (2 * m + 2 <= k);
  const mpz_class c = mpz_class(3) * d_m * m;  // 3*d_m*m
  // q^(k-m) and q^(k-m-1) as quotients so out-of-hypothesis m is still exact.
  mpq_class q_km(pow_mpz(q, k), pow_mpz(q, m));
  q_km.canonicalize();
  mpq_class q_km1(pow_mpz(q, k), pow_mpz(q, m + 1));
  q_km1.canonicalize();
  const mpq_class half_k2(mpz_class(k) * k, mpz_class(2));
  out.value = QSqrt(q_km) - QSqrt(mpq_class(pow_mpz(c, k + 1))) * q_half_power(q, k) -
              QSqrt(half_k2) *
                  (QSqrt(q_km1) + QSqrt(mpq_class(pow_mpz(c, k))) * q_half_power(q, k - 1));
  return out;
}

bool brun_rearranged_holds(const mpz_class& q, std::uint32_t k, std::uint32_t m, std::uint64_t d_m) {
  const mpz_class c = mpz_class(3) * d_m * m;
  const mpq_class half_k2(mpz_class(k) * k, mpz_class(2));
  // q^((k-1)/2 - m) = q^((k-1)/2) / q^m.
  const QSqrt lhs = q_half_power(q, k - 1) / QSqrt(mpq_class(pow_mpz(q, m))) *
                    (QSqrt(mpq_class(q)) - QSqrt(half_k2));
  const QSqrt rhs = QSqrt(mpq_class(pow_mpz(c, k))) *
                    (QSqrt(mpq_class(c)) * QSqrt::root(q) + QSqrt(half_k2));
  return lhs > rhs;
}

bool k_within_range_condition(const mpz_class& q, std::uint32_t k) {
  // k <= 2 q^(9/10) - sqrt(q) + 1  <=>  (k - 1 + sqrt(q))^10 <= 2^10 q^9.
  const QSqrt lhs = (QSqrt(static_cast<long>(k) - 1) + QSqrt::root(q)).pow(10);
  const QSqrt rhs(mpq_class(1024 * pow_mpz(q, 9)));
  return lhs <= rhs;
}

ExistencePredicates existence_predicates(const mpz_class& q, std::uint32_t p, std::uint32_t s,
                                         std::uint32_t k, std::uint32_t m, std::uint64_t d_m,
                                         std::uint64_t n, std::optional<bool> b_is_zero) {
  (void)s;
  ExistencePredicates out;

  // q^(k-2m) > (7/2 m d_m)^(2k+2), undefined when the exponent k-2m is <= 0.
  if (k > 2 * m) {
    const mpq_class lhs(pow_mpz(q, k - 2 * m));
    mpq_class rhs(pow_mpz(mpz_class(7) * m * d_m, 2 * k + 2), pow_ui(2, 2 * k + 2));
    rhs.canonicalize();
    out.min_field_size = lhs > rhs;
  }

  // d_m <= (sqrt(3)/3) k^(1/50)  <=>  3^50 * d_m^100 <= k^2.
  const bool dm_small = pow_ui(3, 50) * pow_mpz(mpz_class(d_m), 100) <= mpz_class(k) * k;
  const bool k_range = k_within_range_condition(q, k);
  const bool p_div_k = (k % p == 0);
  // p does not divide k, or p divides k and b = 0 (unknown b counts as false).
  const bool p_clause_generic = !p_div_k || (b_is_zero.has_value() && *b_is_zero);
  out.large_q_generic =
      p >= 3 && p_clause_generic && m <= d_m && dm_small && k_range && q > pow_ui(2, 20);
  out.large_q_p_divides = p >= 3 && p_div_k && b_is_zero.has_value() && !*b_is_zero && m <= d_m &&
                          dm_small && k_range && q >= pow_ui(2, 21);

  // k <= q^(6/25)  <=>  k^25 <= q^6.
  const bool k_small = pow_ui(k, 25) <= pow_mpz(q, 6);
  out.brun_linear = m <= d_m && 50 * d_m + 25 <= static_cast<std::uint64_t>(k) && k_small;
  out.brun_image = 50 * m * n + 25 < static_cast<std::uint64_t>(k) && k_small;
  return out;
}

HomogeneousBounds homogeneous_bounds(const mpz_class& q, std::uint32_t k, std::uint32_t m) {
  HomogeneousBounds out;
  out.diagonal.formula = "homogeneous-diagonal-bound";
  out.diagonal.value = QSqrt(mpq_class(27 * pow_ui(2, m - 1) *
                                       pow_mpz(mpz_class(m) * m + 3, k + 1))) *
                       q_half_power(q, k - m + 1);
  out.ssp.formula = "homogeneous-ssp-bound";
  mpq_class coeff(pow_ui(7, k + 1) * pow_ui(m, 2 * (k + 1)), pow_ui(2, k + 1));
  coeff.canonicalize();
  out.ssp.value = QSqrt(coeff) * rising_binom(q, k) / q_half_power(q, m - 1);
  return out;
}

SandwichResult sandwich_check(const mpz_class& q, std::uint32_t k) {
  const QSqrt root = QSqrt::root(q);
  // Hypothesis k <= q - sqrt(q) + 1, decided exactly.
  if (QSqrt(static_cast<long>(k)) > QSqrt(mpq_class(q + 1)) - root)
    throw usage_error("sandwich_check: hypothesis k <= q - sqrt(q) + 1 violated");

  SandwichResult out;
  mpz_class falling = 1;
  for (std::uint32_t i = 0; i < k; ++i) falling *= q - i;
  QSqrt rising(mpq_class(1));
  for (std::uint32_t i = 0; i < k; ++i) rising = rising * (root + QSqrt(static_cast<long>(i)));
  out.ratio = QSqrt(mpq_class(falling)) / rising;
  out.lower = (QSqrt(mpq_class(q)) / (root + QSqrt(static_cast<long>(k) - 1))).pow(k);
  out.upper = q_half_power(q, k);
  out.pass = out.lower <= out.ratio && out.ratio <= out.upper;
  return out;
}

RemarkChecks auxiliary_remarks_check(const mpz_class& q, std::uint32_t p, std::uint32_t k,
                                     std::uint32_t m, std::uint64_t d_m) {
  RemarkChecks out;

  const QSqrt root = QSqrt::root(q);
  if (QSqrt(static_cast<long>(k)) <= QSqrt(mpq_class(q + 1)) - root)
    out.sandwich = sandwich_check(q, k).pass;

  if (q >= pow_ui(2, 20) && 20 * m <= k && k_within_range_condition(q, k)) {
    // q^(k/10) / 2^k >= q^m  <=>  q^k >= 2^(10k) q^(10m).
    out.ratio_dominates_qm = pow_mpz(q, k) >= pow_ui(2, 10 * k) * pow_mpz(q, 10 * m);
  }

  if (k % p == 0 && k > p && mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    const mpq_class lhs(binom_mpz(q / p, k / p));
    mpq_class factor(pow_ui(k, 2 * p - 2), pow_mpz(q, 2 * p - 2));
    factor.canonicalize();
    out.binom_quotient_bound = lhs <= mpq_class(binom_mpz(q, k)) * factor;
  }

  const std::uint32_t kp = k / p;
  const bool hyp_small_k = (k < p) && (2 * m + kp + 1 <= k);
  const bool hyp_large_k = (k > p) && (2 * m + 2 * kp <= k);
  if (hyp_small_k || hyp_large_k) {
    const QSqrt lhs =
        QSqrt(mpq_class(m1_constant(k, m, d_m) * factorial_mpz(k))) * rising_binom(q, k);
    const QSqrt first = QSqrt(mpq_class(pow_mpz(mpz_class(d_m), m) * pow_ui(2, k + 2 * m))) *
                        q_half_power(q, 2 * m + 1);
    const QSqrt second =
        QSqrt(mpq_class(pow_mpz(q, m + kp) * pow_ui(2, k + 2 * m + kp + 1)));
    out.error_term_dominates = lhs >= first && lhs >= second;
  }

  return out;
}

namespace {

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "|" : "") << v[i];
  return os.str();
}

}  // namespace

CountReport verify_diagonal_instance(const WeightedDiagonalSystem& sys, const CountLimits& limits) {
  sys.validate();
  if (!sys.domain.full) throw usage_error("verify_diagonal_instance: full-field domain required");
  for (auto w : sys.weights)
    if (w != 1) throw usage_error("verify_diagonal_instance: weights must all be 1");

  const Fq& field = *sys.field;
  const std::uint32_t k = sys.l();
  const std::uint32_t m = sys.m();
  const std::uint64_t d_m = sys.exponents.back();

  CountReport rep;
  rep.kind = "diagonal";
  rep.q = static_cast<unsigned long>(field.q());
  rep.p = field.p();
  rep.s = field.s();
  rep.k = k;
  rep.m = m;
  rep.exponents = sys.exponents;
  rep.targets = sys.targets;

  const SolutionCount sc = count_points_dp(sys, limits);
  rep.exact = sc.count;
  rep.method = "dp";
  rep.main_term = mpq_class(pow_mpz(rep.q, k - m));

  const BoundValue bv = bound_main_estimate(rep.q, k, m, d_m);
  rep.bound = bv.value;
  bool p_coprime = true;
  for (auto d : sys.exponents)
    if (d % field.p() == 0) p_coprime = false;
  rep.in_hypothesis = bv.in_hypothesis && p_coprime && sys.exponents.front() >= 2;
  if (!rep.in_hypothesis) rep.note = "out of hypothesis";

  mpq_class residual = mpq_class(rep.exact) - rep.main_term;
  if (residual < 0) residual = -residual;
  rep.residual = residual;
  rep.pass = QSqrt(residual) <= rep.bound;

  std::ostringstream id;
  id << "diag;q=" << rep.q << ";k=" << k << ";m=" << m << ";d=" << join_u64(sys.exponents)
     << ";b=" << join_u64(std::vector<std::uint64_t>(sys.targets.begin(), sys.targets.end()));
  rep.instance_id = id.str();
  return rep;
}

CountReport verify_ssp_instance(const MomentInstance& inst, const CountLimits& limits) {
  inst.validate();
  if (!inst.domain.full) throw usage_error("verify_ssp_instance: D = F_q required");
  const Fq& field = *inst.field;
  const std::uint32_t k = inst.k;
  const std::uint32_t m = inst.m();
  const std::uint64_t d_m = inst.exponents.back();

  CountReport rep;
  rep.kind = "ssp";
  rep.q = static_cast<unsigned long>(field.q());
  rep.p = field.p();
  rep.s = field.s();
  rep.k = k;
  rep.m = m;
  rep.exponents = inst.exponents;
  rep.targets = inst.targets;

  rep.exact = count_subsets_inclusion_exclusion(inst, limits);
  rep.method = "inclusion-exclusion";

  const bool b_zero =
      std::all_of(inst.targets.begin(), inst.targets.end(), [](FieldElem b) { return b == 0; });
  rep.main_term = nm_main_term(rep.q, k, m, field.p(), b_zero);

  const BoundValue bv = error_term_M(rep.q, k, m, d_m);
  rep.bound = bv.value;

  // The q floor (2^20 / 2^21) in the hypotheses is never met at desk scale.
  const bool p_div_k = (k % field.p() == 0);
  if (p_div_k)
    rep.in_hypothesis = field.p() >= 3 && 20 * m <= k && k_within_range_condition(rep.q, k) &&
                        rep.q >= pow_ui(2, 21);
  else
    rep.in_hypothesis = field.p() >= 5 && m >= 2 && 20 * m <= k &&
                        k_within_range_condition(rep.q, k) && rep.q > pow_ui(2, 20);
  if (!rep.in_hypothesis) rep.note = "out of hypothesis";

  mpq_class residual = mpq_class(rep.exact) - rep.main_term;
  if (residual < 0) residual = -residual;
  rep.residual = residual;
  rep.pass = QSqrt(residual) <= rep.bound;

  std::ostringstream id;
  id << "ssp;q=" << rep.q << ";k=" << k << ";m=" << m << ";d=" << join_u64(inst.exponents)
     << ";b=" << join_u64(std::vector<std::uint64_t>(inst.targets.begin(), inst.targets.end()));
  rep.instance_id = id.str();
  return rep;
}

}  // namespace diagssp
