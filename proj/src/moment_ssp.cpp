#include "diagssp/moment_ssp.hpp"

#include <algorithm>

#include "diagssp/combinatorics.hpp"

namespace diagssp {

void MomentInstance::validate() const {
  if (field == nullptr) throw usage_error("moment instance has no field");
  if (exponents.empty()) throw usage_error("moment instance needs m >= 1");
  if (targets.size() != exponents.size())
    throw usage_error("moment instance target count must match exponent count");
  for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
    if (exponents[i] >= exponents[i + 1])
      throw usage_error("moment instance exponents must be strictly increasing");
  if (k < 1 || k > domain.size(*field))
    throw usage_error("moment instance needs 1 <= k <= |D|");
}

namespace {

std::vector<FieldElem> moment_vector(const Fq& field, const std::vector<std::uint64_t>& exponents,
                                     FieldElem a) {
  std::vector<FieldElem> v(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) v[i] = field.pow(a, exponents[i]);
  return v;
}

void add_into(const Fq& field, std::vector<FieldElem>& acc, const std::vector<FieldElem>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = field.add(acc[i], v[i]);
}

std::uint64_t encode(const std::vector<FieldElem>& v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
  return idx;
}

}  // namespace

mpz_class count_subsets_inclusion_exclusion(const MomentInstance& inst, const CountLimits& limits) {
  inst.validate();
  mpz_class signed_sum = 0;
  for (const CycleType& tau : cycle_types(inst.k)) {
    WeightedDiagonalSystem collapsed;
    collapsed.field = inst.field;
    collapsed.exponents = inst.exponents;
    collapsed.targets = inst.targets;
    collapsed.domain = inst.domain;
    std::vector<std::uint32_t> lengths = tau.cycle_lengths();
    collapsed.weights.assign(lengths.begin(), lengths.end());
    mpz_class term = conjugacy_class_size(tau) * count_points_dp(collapsed, limits).count;
    if ((inst.k - tau.num_cycles()) % 2 == 1) term = -term;
    signed_sum += term;
  }
  mpz_class n, rem;
  mpz_class kfact = factorial_mpz(inst.k);
  mpz_tdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), signed_sum.get_mpz_t(), kfact.get_mpz_t());
  if (rem != 0)
    throw internal_error("count_subsets_inclusion_exclusion: signed sum not divisible by k!");
  return n;
}

mpz_class count_subsets_enum(const MomentInstance& inst, const CountLimits& limits) {
  inst.validate();
  const Fq& field = *inst.field;
  const std::uint64_t n = inst.domain.size(field);
  const std::uint32_t k = inst.k;
  {
    mpz_class combos = binom_mpz(mpz_class(static_cast<unsigned long>(n)), k);
    if (combos > limits.enum_tuples)
      throw limit_exceeded("count_subsets_enum: binom(|D|,k) exceeds limit");
  }

  std::vector<std::vector<FieldElem>> moments(n);
  for (std::uint64_t i = 0; i < n; ++i)
    moments[i] = moment_vector(field, inst.exponents, inst.domain.at(field, i));

  mpz_class count = 0;
  std::vector<FieldElem> partial(inst.m(), field.zero());
  // Strictly increasing k-combinations of [0, n) with prefix moment sums.
  auto recurse = [&](auto&& self, std::uint64_t start, std::uint32_t chosen) -> void {
    if (chosen == k) {
      if (partial == inst.targets) ++count;
      return;
    }
    for (std::uint64_t i = start; i + (k - chosen) <= n; ++i) {
      std::vector<FieldElem> saved = partial;
      add_into(field, partial, moments[i]);
      self(self, i + 1, chosen + 1);
      partial = std::move(saved);
    }
  };
  recurse(recurse, 0, 0);
  return count;
}

MomentDistribution moment_distribution_dp(const Fq& field, const Domain& domain, std::uint32_t k,
                                          const std::vector<std::uint64_t>& exponents,
                                          const CountLimits& limits) {
  const std::uint64_t q = field.q();
  const std::uint32_t m = static_cast<std::uint32_t>(exponents.size());
  std::uint64_t states = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (states > limits.dp_states / q)
      throw limit_exceeded("moment_distribution_dp: state space exceeds limit");
    states *= q;
  }
  if (states > limits.dp_states / (k + 1))
    throw limit_exceeded("moment_distribution_dp: state space exceeds limit");

  const std::uint64_t n = domain.size(field);
  // dist[j][t]: number of j-subsets of the elements seen so far whose moment
  // vector encodes to t.
  std::vector<std::vector<mpz_class>> dist(k + 1, std::vector<mpz_class>(states, 0));
  dist[0][0] = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::vector<FieldElem> mv = moment_vector(field, exponents, domain.at(field, i));
    const std::uint64_t offset = encode(mv, q);
    for (std::uint32_t j = std::min<std::uint64_t>(k, i + 1); j >= 1; --j) {
      for (std::uint64_t t = 0; t < states; ++t) {
        if (sgn(dist[j - 1][t]) == 0) continue;
        // Componentwise field addition of the encoded vectors.
        std::uint64_t a = t, b = offset, shifted = 0, mult = 1;
        for (std::uint32_t c = 0; c < m; ++c) {
          shifted += field.add(a % q, b % q) * mult;
          a /= q;
          b /= q;
          mult *= q;
        }
        dist[j][shifted] += dist[j - 1][t];
      }
    }
  }

  MomentDistribution out;
  std::vector<FieldElem> b(m, 0);
  for (std::uint64_t t = 0; t < states; ++t) {
    std::uint64_t rest = t;
    for (std::uint32_t c = 0; c < m; ++c) {
      b[c] = rest % q;
      rest /= q;
    }
    out[b] = dist[k][t];
  }
  return out;
}

ImageCountResult count_subsets_image(const Fq& field, const Poly& f, std::uint32_t k,
                                     const std::vector<std::uint64_t>& exponents,
                                     const std::vector<FieldElem>& targets,
                                     const CountLimits& limits) {
  ImageCountResult out;
  std::vector<FieldElem> image = image_set(field, f);

  MomentInstance inst;
  inst.field = &field;
  inst.domain = Domain::subset(image);
  inst.k = k;
  inst.exponents = exponents;
  inst.targets = targets;
  out.n = count_subsets_inclusion_exclusion(inst, limits);
  out.a_count = out.n * factorial_mpz(k);

  // |B|: tuples over F_q^k with distinct coordinates, distinct f-values and
  // matching f-value moments.
  const std::uint64_t q = field.q();
  std::uint64_t tuples = 1;
  for (std::uint32_t j = 0; j < k; ++j) {
    if (tuples > limits.enum_tuples / q)
      throw limit_exceeded("count_subsets_image: q^k exceeds limit");
    tuples *= q;
  }
  std::vector<FieldElem> values(q);
  std::vector<std::vector<FieldElem>> value_moments(q);
  for (FieldElem x = 0; x < q; ++x) {
    values[x] = poly_eval(field, f, x);
    value_moments[x] = moment_vector(field, exponents, values[x]);
  }
  mpz_class b_count = 0;
  std::vector<FieldElem> x(k);
  for (std::uint64_t code = 0; code < tuples; ++code) {
    std::uint64_t rest = code;
    for (std::uint32_t j = 0; j < k; ++j) {
      x[j] = rest % q;
      rest /= q;
    }
    bool ok = true;
    for (std::uint32_t i = 0; i < k && ok; ++i)
      for (std::uint32_t j = i + 1; j < k && ok; ++j)
        if (x[i] == x[j] || values[x[i]] == values[x[j]]) ok = false;
    if (!ok) continue;
    std::vector<FieldElem> acc(exponents.size(), field.zero());
    for (std::uint32_t j = 0; j < k; ++j) add_into(field, acc, value_moments[x[j]]);
    if (acc == targets) ++b_count;
  }
  out.b_count = b_count;
  return out;
}

}  // namespace diagssp
