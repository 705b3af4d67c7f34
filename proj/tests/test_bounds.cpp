#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diagssp/bounds.hpp"

using namespace diagssp;

namespace {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

TEST_CASE("diagonal main estimate: worked value") {
  // q = 9, k = 5, m = 2, d_m = 3: 27 * 2 * (3+6)^6 * 9^(5/2) = 54 * 531441 * 243.
  auto bv = bound_main_estimate(9, 5, 2, 3);
  CHECK(bv.in_hypothesis);
  CHECK(bv.value == QSqrt(mpq_class(mpz_class(54) * 531441 * 243)));
  // Odd k leaves a sqrt factor: q = 2, k = 1, m = 0 is invalid (m >= 1), use
  // k = 3, m = 1, d = 2: 27 * (3+2)^4 * 2^(3/2) = 16875 * 2 * sqrt(2).
  auto bv2 = bound_main_estimate(2, 3, 1, 2);
  CHECK(bv2.in_hypothesis);
  CHECK(bv2.value == QSqrt(mpq_class(0), mpq_class(mpz_class(27) * 625 * 2), mpz_class(2)));
  CHECK_FALSE(bound_main_estimate(5, 2, 1, 2).in_hypothesis);  // needs 2m <= k-1
}

TEST_CASE("ssp error term is positive and scales as stated") {
  // M = 81 * 2^(m-1) (3 + d_m m)^(k+1), times the rising product over k!.
  auto bv = error_term_M(4, 2, 1, 1);
  // rising = sqrt(4)(sqrt(4)+1)/2! = 3; M = 81 * 4^3 = 5184; total 15552.
  CHECK(bv.value == QSqrt(mpq_class(15552)));
  CHECK(error_term_M(7, 3, 1, 2).value.sign() > 0);
}

TEST_CASE("main term for N_m(k,b): worked values over GF(4) and GF(5)") {
  // GF(4), k=2, m=1, p=2 | k: correction applies.
  CHECK(nm_main_term(4, 2, 1, 2, true) == mpq_class(0));   // (6 - 3*2)/4
  CHECK(nm_main_term(4, 2, 1, 2, false) == mpq_class(2));  // (6 + 2)/4
  // p does not divide k: plain binom(q,k)/q^m.
  CHECK(nm_main_term(5, 3, 1, 5, false) == mpq_class(2));  // binom(5,3)/5
  CHECK(nm_main_term(5, 3, 2, 5, true) == mpq_class(2, 5));
  // Exact subset counts over GF(4) match the predicted main term exactly.
  Fq F(2, 2);
  for (FieldElem b0 = 0; b0 < 4; ++b0) {
    MomentInstance inst;
    inst.field = &F;
    inst.k = 2;
    inst.exponents = {1};
    inst.targets = {b0};
    const mpz_class n = count_subsets_enum(inst);
    CHECK(mpq_class(n) == nm_main_term(4, 2, 1, 2, b0 == 0));
  }
}

TEST_CASE("sandwich: worked example and sampled hypothesis grid") {
  auto r = sandwich_check(4, 2);
  CHECK(r.ratio == QSqrt(mpq_class(2)));
  CHECK(r.lower == QSqrt(mpq_class(16, 9)));
  CHECK(r.upper == QSqrt(mpq_class(4)));
  CHECK(r.pass);

  std::mt19937_64 rng(11);
  for (const mpz_class& q : {mpz_class(4), mpz_class(9), mpz_class(25), mpz_class(49)}) {
    // Hypothesis: k <= q - sqrt(q) + 1 (q a square here, so exact integer).
    const unsigned long kmax = mpz_class(q - sqrt(q) + 1).get_ui();
    for (int t = 0; t < 12; ++t) {
      const std::uint32_t k = 1 + rng() % kmax;
      CAPTURE(q.get_str()); CAPTURE(k);
      CHECK(sandwich_check(q, k).pass);
    }
  }
  CHECK_THROWS_AS(sandwich_check(4, 4), usage_error);  // 4 > 4 - 2 + 1
}

TEST_CASE("binomial quotient remark: worked q=16, p=2, k=4") {
  auto rc = auxiliary_remarks_check(16, 2, 4, 1, 1);
  REQUIRE(rc.binom_quotient_bound.has_value());
  // binom(8,2)=28 <= binom(16,4)*(4/16)^2 = 1820/16.
  CHECK(*rc.binom_quotient_bound);
  // k <= p leaves the remark out of hypothesis.
  CHECK_FALSE(auxiliary_remarks_check(16, 2, 2, 1, 1).binom_quotient_bound.has_value());
}

TEST_CASE("ratio-dominates remark holds for large q in hypothesis") {
  const mpz_class q = pow_z(2, 40);
  auto rc = auxiliary_remarks_check(q, 2, 64, 3, 3);
  REQUIRE(rc.ratio_dominates_qm.has_value());
  CHECK(*rc.ratio_dominates_qm);
  // Small q: hypothesis q >= 2^20 unmet.
  CHECK_FALSE(auxiliary_remarks_check(49, 7, 8, 1, 1).ratio_dominates_qm.has_value());
}

TEST_CASE("error-term-dominates remark on a large in-hypothesis instance") {
  const mpz_class q = pow_z(2, 30);
  // k > p with 2m + 2*floor(k/p) <= k: p = 3, k = 30, m = 2 -> 4 + 20 <= 30.
  auto rc = auxiliary_remarks_check(q, 3, 30, 2, 2);
  REQUIRE(rc.error_term_dominates.has_value());
  CHECK(*rc.error_term_dominates);
}

TEST_CASE("brun lower bound: two forms agree in sign") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t k = 4 + rng() % 20;
    const std::uint32_t m = 1 + rng() % ((k - 2) / 2);
    const std::uint64_t d_m = m + rng() % 5;
    mpz_class q = mpz_class(2) + static_cast<unsigned long>(rng() % 1000);
    if (t % 3 == 0) q = pow_z(10, 40) + static_cast<unsigned long>(rng() % 997);
    const bool direct = brun_lower_bound(q, k, m, d_m).value.sign() > 0;
    const bool rearranged = brun_rearranged_holds(q, k, m, d_m);
    CAPTURE(q.get_str()); CAPTURE(k); CAPTURE(m); CAPTURE(d_m);
    CHECK(direct == rearranged);
  }
  // A concrete certified-positive instance.
  CHECK(brun_lower_bound(pow_z(2, 100), 1000, 19, 19).value.sign() > 0);
}

TEST_CASE("brun positivity certifies actual solutions at desk scale") {
  // Where the bound is positive at small q, the DP count must be positive too.
  for (auto [p, s] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {13u, 1u}}) {
    Fq F(p, s);
    for (std::uint32_t k = 3; k <= 5; ++k) {
      WeightedDiagonalSystem sys;
      sys.field = &F;
      sys.exponents = {2};
      sys.weights.assign(k, 1);
      sys.targets = {1};
      if (2 % p == 0) continue;
      if (brun_lower_bound(F.q(), k, 1, 2).value.sign() > 0) {
        CAPTURE(F.q()); CAPTURE(k);
        CHECK(count_points_dp(sys).count > 0);
      }
    }
  }
}

TEST_CASE("existence predicates on synthetic instances") {
  const mpz_class q100 = pow_z(2, 100);
  auto ep = existence_predicates(q100, 2, 100, 1000, 19, 19, 1);
  CHECK(ep.brun_linear);
  REQUIRE(ep.min_field_size.has_value());
  CHECK(*ep.min_field_size);
  // b unknown and p | k: both large-q branches must stay false.
  CHECK_FALSE(ep.large_q_generic);
  CHECK_FALSE(ep.large_q_p_divides);

  // The d_m <= (sqrt(3)/3) k^(1/50) clause needs k >= 3^25 even for d_m = 1,
  // which exceeds any 32-bit k: both large-q branches are exactly false on
  // every representable instance.
  const mpz_class q3 = pow_z(3, 50);
  auto ep2 = existence_predicates(q3, 3, 50, 1000, 2, 19, 1, true);
  CHECK_FALSE(ep2.large_q_generic);
  auto ep3 = existence_predicates(q3, 3, 50, 999, 2, 19, 1, false);
  CHECK_FALSE(ep3.large_q_p_divides);

  // Monotonicity in q: once true, raising q keeps the Brun branches true.
  for (unsigned e = 50; e <= 400; e += 50) {
    auto step = existence_predicates(pow_z(2, e), 2, e, 1000, 19, 19, 1);
    CHECK(step.brun_linear);
    auto img = existence_predicates(pow_z(2, e), 2, e, 1000, 3, 4, 5);
    CHECK(img.brun_image);
  }

  // Tiny q fails everything.
  auto ep4 = existence_predicates(49, 7, 2, 6, 1, 2, 1, true);
  CHECK_FALSE(ep4.large_q_generic);
  CHECK_FALSE(ep4.brun_linear);

  // Image variant: m*n small relative to k.
  auto ep5 = existence_predicates(q100, 2, 100, 1000, 3, 4, 5);
  CHECK(ep5.brun_image);
  auto ep6 = existence_predicates(q100, 2, 100, 1000, 3, 4, 7);
  CHECK_FALSE(ep6.brun_image);  // 50*21+25 > 1000
}

TEST_CASE("k range condition against high-precision expectations") {
  // q = 4: 2*4^0.9 - 2 + 1 = 5.96... so k <= 5 passes, k = 6 fails.
  CHECK(k_within_range_condition(4, 5));
  CHECK_FALSE(k_within_range_condition(4, 6));
  // q = 2^20: 2*q^0.9 = 2^(1+18) = 524288 exactly; boundary k = 2^19 - 2^10 + 1.
  const mpz_class q20 = pow_z(2, 20);
  CHECK(k_within_range_condition(q20, 524288 - 1024 + 1));
  CHECK_FALSE(k_within_range_condition(q20, 524288 - 1024 + 2));
}

TEST_CASE("homogeneous bounds: worked values") {
  auto hb = homogeneous_bounds(9, 4, 2);
  // diagonal: 27 * 2 * (4+3)^5 * 9^(3/2) = 54 * 16807 * 27.
  CHECK(hb.diagonal.value == QSqrt(mpq_class(mpz_class(54) * 16807 * 27)));
  // ssp: (7/2 * 4)^5 * rising(9,4)/4! / 9^(1/2); rising = 3*4*5*6/24 = 15.
  CHECK(hb.ssp.value == QSqrt(mpq_class(mpz_class(14) * 14 * 14 * 14 * 14 * 15, 3)));
}

TEST_CASE("verify_diagonal_instance on a grid slice") {
  Fq F(5, 1);
  WeightedDiagonalSystem sys;
  sys.field = &F;
  sys.exponents = {2};
  sys.weights.assign(5, 1);
  sys.targets = {3};
  auto rep = verify_diagonal_instance(sys);
  CHECK(rep.kind == "diagonal");
  CHECK(rep.in_hypothesis);  // m=1 <= (k-1)/2 = 2, gcd(2,5)=1, d1 >= 2
  CHECK(rep.pass);
  CHECK(rep.main_term == mpq_class(625));  // q^(k-m) = 5^4
  CHECK(rep.exact == count_points_bruteforce(sys).count);

  // d_1 = 1 is reported out of hypothesis but still measured.
  WeightedDiagonalSystem lin = sys;
  lin.exponents = {1};
  auto rep2 = verify_diagonal_instance(lin);
  CHECK_FALSE(rep2.in_hypothesis);
  CHECK(rep2.exact == 625);  // one linear equation: exactly q^(k-1) solutions
}

TEST_CASE("verify_ssp_instance flags desk scale as out of hypothesis but passing") {
  Fq F(2, 2);
  MomentInstance inst;
  inst.field = &F;
  inst.k = 2;
  inst.exponents = {1};
  inst.targets = {1};
  auto rep = verify_ssp_instance(inst);
  CHECK(rep.kind == "ssp");
  CHECK_FALSE(rep.in_hypothesis);  // q floor 2^21 unreachable here
  CHECK(rep.pass);
  CHECK(rep.exact == 2);
  CHECK(rep.main_term == mpq_class(2));
  CHECK(rep.residual == mpq_class(0));
}
