#include "diagssp/combinatorics.hpp"

#include <string>

namespace diagssp {

std::vector<std::uint32_t> CycleType::cycle_lengths() const {
  std::vector<std::uint32_t> lengths;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::uint32_t rep = 0; rep < c[i]; ++rep) lengths.push_back(static_cast<std::uint32_t>(i + 1));
  return lengths;
}

namespace {

void enumerate_partitions(std::uint32_t remaining, std::uint32_t max_part, CycleType& current,
                          std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
    ++current.c[part - 1];
    enumerate_partitions(remaining - part, part, current, out);
    --current.c[part - 1];
  }
}

}  // namespace

std::vector<CycleType> cycle_types(std::uint32_t k) {
  if (k < 1) throw usage_error("cycle_types: k must be >= 1");
  if (k > kMaxCycleTypeK)
    throw limit_exceeded("cycle_types: k exceeds limit " + std::to_string(kMaxCycleTypeK));
  std::vector<CycleType> out;
  CycleType current;
  current.c.assign(k, 0);
  enumerate_partitions(k, k, current, out);
  return out;
}

mpz_class conjugacy_class_size(const CycleType& t) {
  const std::uint32_t k = t.k();
  mpz_class num = factorial_mpz(k);
  mpz_class den = 1;
  for (std::size_t i = 0; i < t.c.size(); ++i) {
    if (t.c[i] == 0) continue;
    mpz_class len_pow;
    mpz_ui_pow_ui(len_pow.get_mpz_t(), static_cast<unsigned long>(i + 1), t.c[i]);
    den *= len_pow * factorial_mpz(t.c[i]);
  }
  mpz_class r, rem;
  mpz_tdiv_qr(r.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (rem != 0) throw internal_error("conjugacy_class_size: non-exact division");
  return r;
}

mpz_class p_cycles_count(std::uint32_t k, std::uint32_t j, std::uint32_t p) {
  if (j < 1 || j > k) throw usage_error("p_cycles_count: need 1 <= j <= k");
  mpz_class total = 0;
  for (const CycleType& tau : cycle_types(k)) {
    if (tau.num_cycles() != j) continue;
    bool all_divisible = true;
    for (std::size_t i = 0; i < tau.c.size() && all_divisible; ++i)
      if (tau.c[i] != 0 && (i + 1) % p != 0) all_divisible = false;
    if (all_divisible) total += conjugacy_class_size(tau);
  }
  return total;
}

mpz_class p_cycle_alternating_sum(std::uint32_t k, std::uint32_t p, const mpz_class& q) {
  {
    mpz_class rest = q;
    while (rest > 1 && mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
    if (rest != 1) throw usage_error("p_cycle_alternating_sum: q must be a power of p");
  }
  mpz_class total = 0;
  for (std::uint32_t j = 1; j <= k; ++j) {
    mpz_class qj;
    mpz_pow_ui(qj.get_mpz_t(), q.get_mpz_t(), j);
    mpz_class term = p_cycles_count(k, j, p) * qj;
    if ((k - j) % 2 == 1) term = -term;
    total += term;
  }
  return total;
}

mpz_class generating_C_alternating(std::uint32_t k, const mpz_class& q) {
  std::vector<mpz_class> t(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    mpz_class v = q;
    if (i % 2 == 1) v = -v;
    t[i] = v;
  }
  return generating_C<mpz_class>(k, t);
}

QSqrt generating_C_sqrt(std::uint32_t k, const mpz_class& q) {
  std::vector<QSqrt> t(k, QSqrt::root(q));
  return generating_C<QSqrt>(k, t);
}

SymmetricFunctions power_sums_and_elementary(const Fq& field, std::span<const FieldElem> values,
                                             std::uint32_t m) {
  if (m > values.size() && !values.empty())
    throw usage_error("power_sums_and_elementary: m exceeds number of values");
  SymmetricFunctions out;
  out.power_sums.assign(m, field.zero());
  out.elementary.assign(m, field.zero());
  for (FieldElem x : values) {
    FieldElem xp = field.one();
    for (std::uint32_t j = 0; j < m; ++j) {
      xp = field.mul(xp, x);
      out.power_sums[j] = field.add(out.power_sums[j], xp);
    }
  }
  // e_j coefficients of prod (1 + x_i t), truncated at degree m.
  std::vector<FieldElem> e(m + 1, field.zero());
  e[0] = field.one();
  for (FieldElem x : values)
    for (std::uint32_t j = m; j >= 1; --j) e[j] = field.add(e[j], field.mul(e[j - 1], x));
  for (std::uint32_t j = 1; j <= m; ++j) out.elementary[j - 1] = e[j];
  return out;
}

}  // namespace diagssp
