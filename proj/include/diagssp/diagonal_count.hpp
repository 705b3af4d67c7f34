#ifndef DIAGSSP_DIAGONAL_COUNT_HPP
#define DIAGSSP_DIAGONAL_COUNT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagssp/field.hpp"

namespace diagssp {

// Evaluation domain of a system: the whole field or an explicit subset.
struct Domain {
  bool full = true;
  std::vector<FieldElem> elems;  // canonical order when !full

  static Domain full_field() { return Domain{}; }
  static Domain subset(std::vector<FieldElem> e) { return Domain{false, std::move(e)}; }

  std::uint64_t size(const Fq& field) const { return full ? field.q() : elems.size(); }
  FieldElem at(const Fq& field, std::uint64_t i) const {
    return full ? static_cast<FieldElem>(i) : elems[i];
  }
};

// The system  sum_j a_j * y_j^{d_i} = b_i  (i = 1..m) over a domain. Weights
// are positive integers reduced mod p only at evaluation time. A system can be
// marked identically empty by normalize_exponents when two exponents collapse
// to the same reduced value with conflicting targets.
struct WeightedDiagonalSystem {
  const Fq* field = nullptr;
  std::vector<std::uint64_t> exponents;  // d_1 < ... < d_m
  std::vector<std::uint64_t> weights;    // a_1..a_l
  std::vector<FieldElem> targets;        // b_1..b_m
  Domain domain;
  bool infeasible = false;

  std::uint32_t m() const { return static_cast<std::uint32_t>(exponents.size()); }
  std::uint32_t l() const { return static_cast<std::uint32_t>(weights.size()); }

  void validate() const;
};

enum class CountMethod { DP, BruteForce };

struct SolutionCount {
  mpz_class count;
  CountMethod method;
  // Instance echo.
  std::uint64_t q = 0;
  std::uint32_t m = 0;
  std::uint32_t l = 0;
  std::vector<std::uint64_t> exponents;
  std::vector<FieldElem> targets;
};

struct CountLimits {
  // Upper bound on the DP state space q^m (dense array of big integers).
  std::uint64_t dp_states = 100'000'000;
  // Upper bound on |domain|^l for full enumeration.
  std::uint64_t enum_tuples = 100'000'000;
};

// Strips characteristic powers from the exponents: d = p^r * t with p not
// dividing t becomes t, and the target is replaced by its p^r-th Frobenius
// preimage, which leaves the full-field solution set unchanged. Duplicate
// reduced exponents merge when their adjusted targets agree and mark the
// system infeasible otherwise.
WeightedDiagonalSystem normalize_exponents(const WeightedDiagonalSystem& sys);

// Exact count by dynamic programming over the value-vector group F_q^m:
// the distribution of partial target vectors is convolved with the value
// distribution of each variable in turn. Cost O(l * |domain| + l * D * q^m)
// where D is the number of distinct per-variable value vectors.
SolutionCount count_points_dp(const WeightedDiagonalSystem& sys, const CountLimits& limits = {});

// Exact count by full enumeration of domain^l (the oracle).
SolutionCount count_points_bruteforce(const WeightedDiagonalSystem& sys,
                                      const CountLimits& limits = {});

// Count of solutions with X_1 = X_2 for an unweighted system: the collapsed
// system with weights (2,1,...,1) and one variable fewer.
SolutionCount count_slice_equal_coords(const WeightedDiagonalSystem& sys,
                                       const CountLimits& limits = {});

// Exhaustive comparison of the solution sets of {P_1=...=P_m=0} (power sums)
// and {Pi_1=...=Pi_m=0} (elementary symmetric) in F_q^k. Requires p > k so
// that p does not divide k!.
struct HomogeneousEquivalence {
  bool equal;
  mpz_class power_sum_solutions;
  mpz_class elementary_solutions;
};

HomogeneousEquivalence homogeneous_equivalence_check(const Fq& field, std::uint32_t k,
                                                     std::uint32_t m,
                                                     const CountLimits& limits = {});

}  // namespace diagssp

#endif
