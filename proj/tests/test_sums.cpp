#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lchi/bump.hpp"
#include "lchi/gauss.hpp"
#include "lchi/lfunc.hpp"
#include "lchi/sums.hpp"
#include "lchi/zeros.hpp"
#include "oracles.hpp"

using lchi::cplx;

namespace {

const lchi::DirichletCharacter& chi4() {
  static const auto c = lchi::character(4, 1);
  return c;
}

const lchi::DirichletCharacter& zeta() {
  static const auto c = lchi::character(1, 0);
  return c;
}

const lchi::ZeroList& chi4_zeros() {
  static const auto z = lchi::scan_zeros(chi4(), 140.0);
  return z;
}

cplx to_d(oracle::lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// sum over n <= N of Lambda(n) chi(n) e(-n xi / q) times tau(conj chi)/q, all in long double
oracle::lcplx prime_sum_oracle(const lchi::DirichletCharacter& chi, long double xi, std::int64_t N) {
  const std::int64_t q = chi.modulus();
  const auto lam = oracle::mangoldt_sieve(std::max<std::int64_t>(N, 2));
  oracle::lcplx acc = 0;
  for (std::int64_t n = 2; n <= N; ++n) {
    const long double l = lam[static_cast<std::size_t>(n)];
    if (l == 0.0L) continue;
    acc += l * oracle::value(chi, n) * oracle::e(-n * xi / q);
  }
  return oracle::gauss_sum(chi.conj()) / static_cast<long double>(q) * acc;
}

}  // namespace

TEST(Sigma1, Examples) {
  const auto list = lchi::scan_zeros(zeta(), 20.0);
  EXPECT_EQ(lchi::sigma1_sharp(zeta(), 1.0, 10.0, list), cplx(0.0, 0.0));

  const cplx one = lchi::sigma1_sharp(zeta(), lchi::RationalXi(1, 1), 15.0, list);
  EXPECT_NEAR(std::abs(one), 1.0, 1e-12);
  const double g1 = list.positive_up_to(15.0).at(0);
  EXPECT_LE(std::abs(one - lchi::x_factor_exact({0.5, -g1}, zeta()).value), 1e-13);
}

TEST(Sigma1, LongDoubleResummation) {
  const lchi::RationalXi xi(1, 3);
  const auto& zeros = chi4_zeros();
  const cplx got = lchi::sigma1_sharp(chi4(), xi, 50.0, zeros);
  const cplx eps_bar = lchi::root_number(chi4().conj());
  oracle::lcplx ref = 0;
  const long double log_xi = std::log(1.0L / 3.0L);
  for (double g : zeros.positive_up_to(50.0)) {
    const oracle::lcplx rho{0.5L, static_cast<long double>(g)};
    ref += std::exp(-rho * log_xi) *
           lchi::x_factor_value<long double>({0.5L, -static_cast<long double>(g)}, eps_bar, 4, chi4().kappa());
  }
  EXPECT_LE(std::abs(got - to_d(ref)), 1e-7);
  EXPECT_GT(zeros.positive_up_to(50.0).size(), 10u);
}

TEST(Sigma1, CoverageIsEnforced) {
  const auto list = lchi::scan_zeros(zeta(), 20.0);
  EXPECT_THROW(lchi::sigma1_sharp(zeta(), 1.0, 25.0, list), lchi::CoverageError);
  EXPECT_THROW(lchi::sigma1_sharp(chi4(), 1.0, 10.0, list), std::invalid_argument);
  const auto b = lchi::default_bump(1.0, 2.0);
  EXPECT_THROW(lchi::smooth_zero_sum(zeta(), 1.0, 2.0, b, list), lchi::CoverageError);
}

TEST(Sigma2, Examples) {
  // cutoff q T / (2 pi xi) < 2
  EXPECT_EQ(lchi::sigma2_sharp(zeta(), 1.0, 6.0), cplx(0.0, 0.0));

  // cutoff 10: e(-n) = 1, so the sum is psi(10) = log 2520
  const cplx s = lchi::sigma2_sharp(zeta(), lchi::RationalXi(1, 1), 2.0 * std::numbers::pi * 10.0);
  EXPECT_EQ(lchi::sigma2_cutoff(zeta(), 1.0, 2.0 * std::numbers::pi * 10.0), 10);
  EXPECT_NEAR(s.real(), std::log(2520.0), 1e-13);
  EXPECT_NEAR(s.imag(), 0.0, 1e-13);

  // q = 4, xi = 1/2, T = pi gives cutoff 4; only n = 3 survives
  const lchi::RationalXi half(1, 2);
  EXPECT_EQ(lchi::sigma2_cutoff(chi4(), half, std::numbers::pi), 4);
  const cplx got = lchi::sigma2_sharp(chi4(), half, std::numbers::pi);
  const oracle::lcplx expected = oracle::gauss_sum(chi4().conj()) / 4.0L * std::log(3.0L) *
                                 oracle::value(chi4(), 3) * oracle::e(-3.0L / 8.0L);
  EXPECT_LE(std::abs(got - to_d(expected)), 1e-14);

  EXPECT_THROW(lchi::sigma2_sharp(chi4(), half, 0.0), std::invalid_argument);
}

TEST(Sigma2, MatchesDirectSum) {
  for (std::int64_t q : {1, 3, 4, 5, 7}) {
    for (const auto& chi : lchi::enumerate_characters(q)) {
      for (const lchi::RationalXi xi : {lchi::RationalXi(1, 1), lchi::RationalXi(1, 3), lchi::RationalXi(5, 2)}) {
        const double T = 120.0;
        const std::int64_t N = lchi::sigma2_cutoff(chi, xi, T);
        const auto ref = prime_sum_oracle(chi, static_cast<long double>(xi.h()) / xi.k(), N);
        EXPECT_LE(std::abs(lchi::sigma2_sharp(chi, xi, T) - to_d(ref)), 1e-10) << "q=" << q << " xi=" << xi.str();
      }
    }
  }
}

TEST(Sigma2, IrrationalXi) {
  const double xi = std::numbers::sqrt2;
  const std::int64_t N = lchi::sigma2_cutoff(chi4(), xi, 200.0);
  const auto ref = prime_sum_oracle(chi4(), std::numbers::sqrt2_v<long double>, N);
  EXPECT_LE(std::abs(lchi::sigma2_sharp(chi4(), xi, 200.0) - to_d(ref)), 1e-10);
  EXPECT_THROW(lchi::Xi(-1.0), std::invalid_argument);
  EXPECT_THROW(lchi::Xi(std::nan("")), std::invalid_argument);
}

TEST(Sums, ShardInvariance) {
  const lchi::RationalXi xi(1, 3);
  const cplx s1 = lchi::sigma1_sharp(chi4(), xi, 130.0, chi4_zeros());
  const cplx s2 = lchi::sigma2_sharp(chi4(), xi, 400.0);
  for (unsigned shards : {2u, 3u, 7u, 64u}) {
    EXPECT_LE(std::abs(lchi::sigma1_sharp(chi4(), xi, 130.0, chi4_zeros(), shards) - s1), 1e-10);
    EXPECT_LE(std::abs(lchi::sigma2_sharp(chi4(), xi, 400.0, shards) - s2), 1e-10);
  }
  auto term = [](std::size_t i) { return cplx(std::sin(0.37 * static_cast<double>(i)), 1.0 / (1.0 + i)); };
  for (unsigned shards : {1u, 4u, 9u}) {
    EXPECT_EQ(lchi::sharded_sum(10000, term, shards, false), lchi::sharded_sum(10000, term, shards, true));
  }
}

TEST(SmoothSums, EmptySupport) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const auto list = lchi::scan_zeros(chi4(), 10.0);
  // 2 pi X b = 2.5 lies below the first ordinate
  EXPECT_EQ(lchi::smooth_zero_sum(chi4(), 1.0, 0.2, b, list), cplx(0.0, 0.0));
  // q X b < 2
  EXPECT_EQ(lchi::smooth_prime_sum(chi4(), 1.0, 0.2, b), cplx(0.0, 0.0));
  EXPECT_EQ(lchi::smooth_prime_sum(zeta(), 1.0, 0.9, b), cplx(0.0, 0.0));
}

TEST(SmoothSums, ZeroSumStieltjes) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const cplx direct = lchi::smooth_zero_sum(chi4(), 1.0, 5.0, b, chi4_zeros());
  const cplx parts = lchi::smooth_zero_sum_by_parts(chi4(), 1.0, 5.0, b, chi4_zeros());
  EXPECT_GT(std::abs(direct), 1e-3);
  EXPECT_LE(std::abs(direct - parts), 1e-6);
}

TEST(SmoothSums, PrimeSumStieltjes) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const lchi::RationalXi xi(1, 3);
  const cplx direct = lchi::smooth_prime_sum(chi4(), xi, 10.0, b);
  const cplx parts = lchi::smooth_prime_sum_by_parts(chi4(), xi, 10.0, b);
  EXPECT_GT(std::abs(direct), 1e-3);
  EXPECT_LE(std::abs(direct - parts), 1e-6);
}

TEST(SmoothSums, CeilingBeyondSupportChangesNothing) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const auto tight = lchi::scan_zeros(chi4(), 2.0 * std::numbers::pi * 5.0 * 2.0);
  const cplx a = lchi::smooth_zero_sum(chi4(), 1.0, 5.0, b, tight);
  const cplx c = lchi::smooth_zero_sum(chi4(), 1.0, 5.0, b, chi4_zeros());
  EXPECT_EQ(a, c);
}

TEST(SmoothSums, ModulusOneDirect) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const cplx got = lchi::smooth_prime_sum(zeta(), lchi::RationalXi(1, 1), 4.0, b);
  long double ref = 0.0L;
  for (std::int64_t n = 4; n <= 8; ++n) {
    const long double u = n / 4.0L;
    const long double w = (u <= 1.0L || u >= 2.0L) ? 0.0L : std::exp(-1.0L / ((u - 1.0L) * (2.0L - u)));
    ref += oracle::mangoldt(n) * w;
  }
  EXPECT_NEAR(got.real(), static_cast<double>(ref), 1e-15);
  EXPECT_NEAR(got.imag(), 0.0, 1e-15);
  EXPECT_GT(ref, 0.0L);
}

TEST(GrhDagger, CoprimeFailureDropsMainTerm) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const lchi::RationalXi xi(2, 3);
  EXPECT_EQ(lchi::c_tilde(chi4(), xi), cplx(0.0, 0.0));
  EXPECT_EQ(lchi::grh_dagger_lhs(chi4(), xi, 5.0, b, chi4_zeros()),
            lchi::smooth_zero_sum(chi4(), xi, 5.0, b, chi4_zeros()));
}

TEST(GrhDagger, MainTermAndSmallX) {
  const auto b = lchi::default_bump(1.0, 2.0);
  const lchi::RationalXi xi(1, 3);
  const cplx ct = lchi::c_tilde(chi4(), xi);
  ASSERT_NE(ct, cplx(0.0, 0.0));
  const cplx full = lchi::grh_dagger_lhs(chi4(), xi, 10.0, b, chi4_zeros());
  EXPECT_LE(std::abs(full - lchi::smooth_zero_sum(chi4(), xi, 10.0, b, chi4_zeros()) - b.integral() * ct * 10.0),
            1e-12);
  double prev = std::numeric_limits<double>::infinity();
  for (double X : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double v = std::abs(lchi::grh_dagger_lhs(chi4(), xi, X, b, chi4_zeros()));
    EXPECT_LT(v, prev);
    EXPECT_LE(v, b.integral() * std::abs(ct) * X * (1.0 + 1e-12));
    prev = v;
  }
}

TEST(FloorCutoff, RoundsNearIntegers) {
  EXPECT_EQ(lchi::floor_cutoff(9.999999999999998), 10);
  EXPECT_EQ(lchi::floor_cutoff(9.5), 9);
  EXPECT_EQ(lchi::floor_cutoff(-1.0), 0);
  EXPECT_EQ(lchi::floor_cutoff(std::nan("")), 0);
}
