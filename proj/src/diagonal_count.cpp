#include "diagssp/diagonal_count.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "diagssp/combinatorics.hpp"

namespace diagssp {

void WeightedDiagonalSystem::validate() const {
  if (field == nullptr) throw usage_error("system has no field");
  if (exponents.empty()) throw usage_error("system needs at least one equation");
  if (weights.empty()) throw usage_error("system needs at least one variable");
  if (targets.size() != exponents.size())
    throw usage_error("system target count must match equation count");
  for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
    if (exponents[i] >= exponents[i + 1])
      throw usage_error("system exponents must be strictly increasing");
  for (auto d : exponents)
    if (d == 0) throw usage_error("system exponents must be positive");
  for (auto w : weights)
    if (w == 0) throw usage_error("system weights must be positive");
  for (auto b : targets)
    if (b >= field->q()) throw usage_error("target outside field");
  if (!domain.full)
    for (auto e : domain.elems)
      if (e >= field->q()) throw usage_error("domain element outside field");
}

namespace {

SolutionCount make_count(const WeightedDiagonalSystem& sys, mpz_class count, CountMethod method) {
  SolutionCount out;
  out.count = std::move(count);
  out.method = method;
  out.q = sys.field->q();
  out.m = sys.m();
  out.l = sys.l();
  out.exponents = sys.exponents;
  out.targets = sys.targets;
  return out;
}

// Mixed-radix encoding of a vector in F_q^m (component 0 least significant).
std::uint64_t encode_vector(const std::vector<FieldElem>& v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
  return idx;
}

// Componentwise field addition of two encoded vectors.
std::uint64_t add_encoded(const Fq& field, std::uint64_t a, std::uint64_t b, std::uint32_t m) {
  const std::uint64_t q = field.q();
  std::uint64_t r = 0, mult = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += field.add(a % q, b % q) * mult;
    a /= q;
    b /= q;
    mult *= q;
  }
  return r;
}

// The encoded value vector a_j * (y^{d_1}, ..., y^{d_m}) of one variable at y.
std::uint64_t variable_offset(const WeightedDiagonalSystem& sys, std::uint64_t weight, FieldElem y) {
  const Fq& field = *sys.field;
  const FieldElem w = field.from_int(weight);
  std::vector<FieldElem> v(sys.m());
  for (std::uint32_t i = 0; i < sys.m(); ++i)
    v[i] = field.mul(w, field.pow(y, sys.exponents[i]));
  return encode_vector(v, field.q());
}

}  // namespace

WeightedDiagonalSystem normalize_exponents(const WeightedDiagonalSystem& sys) {
  sys.validate();
  const Fq& field = *sys.field;
  const std::uint32_t p = field.p();
  const std::uint32_t s = field.s();

  std::map<std::uint64_t, FieldElem> reduced;  // t -> adjusted target
  bool infeasible = sys.infeasible;
  for (std::size_t i = 0; i < sys.exponents.size(); ++i) {
    std::uint64_t t = sys.exponents[i];
    std::uint32_t r = 0;
    while (t % p == 0) {
      t /= p;
      ++r;
    }
    const FieldElem b_adj = field.frobenius_inverse(sys.targets[i], r % s);
    auto [it, inserted] = reduced.emplace(t, b_adj);
    if (!inserted && it->second != b_adj) infeasible = true;
  }

  WeightedDiagonalSystem out = sys;
  out.exponents.clear();
  out.targets.clear();
  for (const auto& [t, b] : reduced) {
    out.exponents.push_back(t);
    out.targets.push_back(b);
  }
  out.infeasible = infeasible;
  return out;
}

SolutionCount count_points_dp(const WeightedDiagonalSystem& sys, const CountLimits& limits) {
  sys.validate();
  if (sys.infeasible) return make_count(sys, 0, CountMethod::DP);
  const Fq& field = *sys.field;
  const std::uint64_t q = field.q();
  const std::uint32_t m = sys.m();

  std::uint64_t states = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (states > limits.dp_states / q)
      throw limit_exceeded("count_points_dp: state space q^m exceeds limit");
    states *= q;
  }

  const std::uint64_t dom_size = sys.domain.size(field);
  std::vector<mpz_class> dist(states, 0);
  dist[0] = 1;
  std::vector<mpz_class> next(states);

  for (std::uint64_t j = 0; j < sys.l(); ++j) {
    // Distribution of this variable's value vector over the domain.
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t i = 0; i < dom_size; ++i)
      ++hist[variable_offset(sys, sys.weights[j], sys.domain.at(field, i))];

    for (auto& cell : next) cell = 0;
    for (const auto& [offset, mult] : hist) {
      // Precompute the state permutation t -> t (+) offset componentwise.
      for (std::uint64_t t = 0; t < states; ++t) {
        if (sgn(dist[t]) == 0) continue;
        next[add_encoded(field, t, offset, m)] += dist[t] * mult;
      }
    }
    dist.swap(next);
  }

  return make_count(sys, dist[encode_vector(sys.targets, q)], CountMethod::DP);
}

SolutionCount count_points_bruteforce(const WeightedDiagonalSystem& sys, const CountLimits& limits) {
  sys.validate();
  if (sys.infeasible) return make_count(sys, 0, CountMethod::BruteForce);
  const Fq& field = *sys.field;
  const std::uint32_t m = sys.m();
  const std::uint32_t l = sys.l();
  const std::uint64_t dom_size = sys.domain.size(field);

  std::uint64_t tuples = 1;
  for (std::uint32_t j = 0; j < l; ++j) {
    if (dom_size != 0 && tuples > limits.enum_tuples / dom_size)
      throw limit_exceeded("count_points_bruteforce: |domain|^l exceeds limit");
    tuples *= dom_size;
  }

  // Per-variable per-domain-element partial sums, encoded.
  std::vector<std::vector<std::uint64_t>> offsets(l, std::vector<std::uint64_t>(dom_size));
  for (std::uint32_t j = 0; j < l; ++j)
    for (std::uint64_t i = 0; i < dom_size; ++i)
      offsets[j][i] = variable_offset(sys, sys.weights[j], sys.domain.at(field, i));

  const std::uint64_t target = encode_vector(sys.targets, field.q());
  mpz_class count = 0;
  std::vector<std::uint64_t> idx(l, 0);
  std::vector<std::uint64_t> partial(l + 1, 0);
  std::uint32_t depth = 0;
  if (dom_size == 0) return make_count(sys, 0, CountMethod::BruteForce);
  while (true) {
    while (depth < l) {
      partial[depth + 1] = add_encoded(field, partial[depth], offsets[depth][idx[depth]], m);
      ++depth;
    }
    if (partial[l] == target) ++count;
    // Odometer step; dropping depth below an incremented digit forces the
    // partial sums above it to be rebuilt.
    while (depth > 0) {
      --depth;
      if (++idx[depth] < dom_size) break;
      idx[depth] = 0;
    }
    if (depth == 0 && idx[0] == 0) break;
  }
  return make_count(sys, count, CountMethod::BruteForce);
}

SolutionCount count_slice_equal_coords(const WeightedDiagonalSystem& sys, const CountLimits& limits) {
  sys.validate();
  if (sys.l() < 2) throw usage_error("count_slice_equal_coords: need at least two variables");
  for (auto w : sys.weights)
    if (w != 1) throw usage_error("count_slice_equal_coords: weights must all be 1");
  WeightedDiagonalSystem collapsed = sys;
  collapsed.weights.assign(sys.l() - 1, 1);
  collapsed.weights[0] = 2;
  return count_points_dp(collapsed, limits);
}

HomogeneousEquivalence homogeneous_equivalence_check(const Fq& field, std::uint32_t k,
                                                     std::uint32_t m, const CountLimits& limits) {
  if (m < 1 || m > k) throw usage_error("homogeneous_equivalence_check: need 1 <= m <= k");
  if (field.p() <= k)
    throw usage_error("homogeneous_equivalence_check: requires p > k so that p does not divide k!");
  std::uint64_t tuples = 1;
  for (std::uint32_t j = 0; j < k; ++j) {
    if (tuples > limits.enum_tuples / field.q())
      throw limit_exceeded("homogeneous_equivalence_check: q^k exceeds limit");
    tuples *= field.q();
  }

  HomogeneousEquivalence out{true, 0, 0};
  std::vector<FieldElem> x(k, 0);
  for (std::uint64_t code = 0; code < tuples; ++code) {
    std::uint64_t rest = code;
    for (std::uint32_t j = 0; j < k; ++j) {
      x[j] = rest % field.q();
      rest /= field.q();
    }
    const SymmetricFunctions sf = power_sums_and_elementary(field, x, m);
    const bool power_zero =
        std::all_of(sf.power_sums.begin(), sf.power_sums.end(), [](FieldElem e) { return e == 0; });
    const bool elem_zero =
        std::all_of(sf.elementary.begin(), sf.elementary.end(), [](FieldElem e) { return e == 0; });
    if (power_zero) ++out.power_sum_solutions;
    if (elem_zero) ++out.elementary_solutions;
    if (power_zero != elem_zero) out.equal = false;
  }
  return out;
}

}  // namespace diagssp
