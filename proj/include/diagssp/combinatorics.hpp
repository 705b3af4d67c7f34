#ifndef DIAGSSP_COMBINATORICS_HPP
#define DIAGSSP_COMBINATORICS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "diagssp/errors.hpp"
#include "diagssp/field.hpp"
#include "diagssp/qsqrt.hpp"

namespace diagssp {

// A conjugacy class of S_k: c[i-1] cycles of length i, sum i*c_i = k.
struct CycleType {
  std::vector<std::uint32_t> c;

  std::uint32_t k() const {
    std::uint32_t total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) total += static_cast<std::uint32_t>(i + 1) * c[i];
    return total;
  }

  // l(tau), the number of cycles including fixed points.
  std::uint32_t num_cycles() const {
    std::uint32_t total = 0;
    for (auto ci : c) total += ci;
    return total;
  }

  // The multiset of cycle lengths, one entry per cycle.
  std::vector<std::uint32_t> cycle_lengths() const;

  bool operator==(const CycleType&) const = default;
};

inline constexpr std::uint32_t kMaxCycleTypeK = 40;

// All cycle types of S_k (i.e. partitions of k), deterministic order.
std::vector<CycleType> cycle_types(std::uint32_t k);

// C(tau) = k! / (1^c1 c1! 2^c2 c2! ... k^ck ck!), the conjugacy class size.
mpz_class conjugacy_class_size(const CycleType& t);

// p(k,j): permutations of S_k with j cycles, every cycle length divisible by p.
mpz_class p_cycles_count(std::uint32_t k, std::uint32_t j, std::uint32_t p);

// sum_{j=1..k} (-1)^(k-j) p(k,j) q^j. Equals 0 when p does not divide k, and
// (-1)^(k+k/p) binom(q/p, k/p) k! when p divides k; q must be a power of p.
mpz_class p_cycle_alternating_sum(std::uint32_t k, std::uint32_t p, const mpz_class& q);

// The cycle-index-style generating sum
//   C_k(t_1,...,t_k) = sum over types tau of C(tau) * prod t_i^{c_i},
// with every division folded into the integer class size, so evaluation is
// pure ring arithmetic.
template <class Ring>
Ring generating_C(std::uint32_t k, std::span<const Ring> t) {
  if (t.size() < k) throw usage_error("generating_C: need k ring values");
  Ring total{};
  for (const CycleType& tau : cycle_types(k)) {
    Ring term{conjugacy_class_size(tau)};
    for (std::size_t i = 0; i < tau.c.size(); ++i)
      for (std::uint32_t rep = 0; rep < tau.c[i]; ++rep) term = term * t[i];
    total = total + term;
  }
  return total;
}

// C_k(q, -q, ..., (-1)^(k-1) q); equals binom(q,k)*k!.
mpz_class generating_C_alternating(std::uint32_t k, const mpz_class& q);

// C_k(sqrt(q), ..., sqrt(q)); equals (-1)^k binom(-sqrt(q), k) k!.
QSqrt generating_C_sqrt(std::uint32_t k, const mpz_class& q);

// Power sums P_j = sum x_i^j and elementary symmetric functions Pi_j of the
// given field elements, for j = 1..m. Both computed directly (the elementary
// ones by the product-expansion recurrence, not via Newton inversion).
struct SymmetricFunctions {
  std::vector<FieldElem> power_sums;  // P_1..P_m
  std::vector<FieldElem> elementary;  // Pi_1..Pi_m
};

SymmetricFunctions power_sums_and_elementary(const Fq& field, std::span<const FieldElem> values,
                                             std::uint32_t m);

}  // namespace diagssp

#endif
