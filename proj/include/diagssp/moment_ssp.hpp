#ifndef DIAGSSP_MOMENT_SSP_HPP
#define DIAGSSP_MOMENT_SSP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "diagssp/diagonal_count.hpp"
#include "diagssp/field.hpp"

namespace diagssp {

// One N_m(k,b,D) instance: count the k-subsets S of D with
// sum_{a in S} a^{d_i} = b_i for i = 1..m. The classical problem has
// exponents (1,...,m); any strictly increasing list is accepted.
struct MomentInstance {
  const Fq* field = nullptr;
  Domain domain;
  std::uint32_t k = 0;
  std::vector<std::uint64_t> exponents;
  std::vector<FieldElem> targets;

  std::uint32_t m() const { return static_cast<std::uint32_t>(exponents.size()); }
  void validate() const;
};

// The full map b -> N_m(k,b,D); values sum to binom(|D|,k).
using MomentDistribution = std::map<std::vector<FieldElem>, mpz_class>;

// N via the signed sum over cycle types:
//   N = (1/k!) * sum_tau (-1)^(k-l(tau)) C(tau) |X_tau|,
// where |X_tau| is the count of the collapsed weighted system whose weights
// are the cycle lengths of tau. Note that X_tau identifies coordinates within
// each cycle but imposes no distinctness across cycles; the collapsed count is
// a plain weighted diagonal count. The division by k! must be exact.
mpz_class count_subsets_inclusion_exclusion(const MomentInstance& inst,
                                            const CountLimits& limits = {});

// The oracle: literal enumeration of all k-subsets of D.
mpz_class count_subsets_enum(const MomentInstance& inst, const CountLimits& limits = {});

// Third independent algorithm: 0/1 subset DP over the elements of D with state
// (number chosen, partial moment vector). Returns the whole distribution.
MomentDistribution moment_distribution_dp(const Fq& field, const Domain& domain, std::uint32_t k,
                                          const std::vector<std::uint64_t>& exponents,
                                          const CountLimits& limits = {});

// N_m(k,b,D) for D = f(F_q), together with the cross-check of the two tuple
// sets: |A| counts distinct-coordinate tuples over D, |B| counts tuples
// (x_1..x_k) over F_q with pairwise distinct x_i AND pairwise distinct f(x_i)
// whose moment vector of f-values hits b. |A| = |B| always; the pair is
// returned so callers can assert it.
struct ImageCountResult {
  mpz_class n;        // N_m(k,b,D) = |A| / k!
  mpz_class a_count;  // |A|
  mpz_class b_count;  // |B|
};

ImageCountResult count_subsets_image(const Fq& field, const Poly& f, std::uint32_t k,
                                     const std::vector<std::uint64_t>& exponents,
                                     const std::vector<FieldElem>& targets,
                                     const CountLimits& limits = {});

}  // namespace diagssp

#endif
