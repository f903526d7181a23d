#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lchi/arithmetic.hpp"
#include "lchi/characters.hpp"
#include "oracles.hpp"

using lchi::cplx;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST(Characters, TrivialModulusOne) {
  const auto chars = lchi::enumerate_characters(1);
  ASSERT_EQ(chars.size(), 1u);
  const auto& one = chars.front();
  for (std::int64_t n : {-7, 0, 1, 2, 13, 1000}) EXPECT_EQ(one(n), cplx(1.0, 0.0));
  EXPECT_EQ(one.conductor(), 1);
  EXPECT_TRUE(one.primitive());
  EXPECT_TRUE(one.principal());
  EXPECT_EQ(one.kappa(), 0);
}

TEST(Characters, ModulusFour) {
  const auto chars = lchi::enumerate_characters(4);
  ASSERT_EQ(chars.size(), 2u);
  const auto& chi = chars[1];
  EXPECT_EQ(chi(3), cplx(-1.0, 0.0));
  EXPECT_EQ(chi(2), cplx(0.0, 0.0));
  EXPECT_EQ(chi(7), cplx(-1.0, 0.0));
  EXPECT_EQ(chi(-1), cplx(-1.0, 0.0));
  EXPECT_EQ(chi(-3), cplx(1.0, 0.0));
  EXPECT_EQ(chi.kappa(), 1);
  EXPECT_TRUE(chi.primitive());
  EXPECT_EQ(chi.conductor(), 4);
  EXPECT_EQ(oracle::conductor(chi), 4);

  const auto& principal = chars[0];
  EXPECT_EQ(principal.conductor(), 1);
  EXPECT_FALSE(principal.primitive());
  EXPECT_EQ(oracle::conductor(principal), 1);
}

TEST(Characters, ModulusFive) {
  const auto chars = lchi::enumerate_characters(5);
  ASSERT_EQ(chars.size(), 4u);
  for (std::size_t i = 1; i < chars.size(); ++i) {
    EXPECT_TRUE(chars[i].primitive());
    EXPECT_EQ(chars[i].conductor(), 5);
  }
}

TEST(Characters, LabelsArePositions) {
  for (std::int64_t q = 1; q <= 30; ++q) {
    const auto chars = lchi::enumerate_characters(q);
    ASSERT_EQ(static_cast<std::int64_t>(chars.size()), oracle::phi(q));
    for (std::size_t i = 0; i < chars.size(); ++i) {
      EXPECT_EQ(chars[i].label(), static_cast<int>(i));
      EXPECT_EQ(lchi::character(q, static_cast<int>(i)), chars[i]);
    }
    EXPECT_TRUE(chars[0].principal());
  }
}

TEST(Characters, UnknownLabelThrows) {
  EXPECT_THROW(lchi::character(4, 2), std::out_of_range);
  EXPECT_THROW(lchi::character(5, -1), std::out_of_range);
}

TEST(Characters, ConductorMatchesInductionScan) {
  for (std::int64_t q = 1; q <= 64; ++q) {
    for (const auto& chi : lchi::enumerate_characters(q)) {
      ASSERT_EQ(chi.conductor(), oracle::conductor(chi)) << "q=" << q << " label=" << chi.label();
      EXPECT_EQ(chi.primitive(), chi.conductor() == q);
    }
  }
}

TEST(Characters, PrimitiveCountMatchesMoebiusConvolution) {
  // number of primitive characters mod q is sum_{d | q} mu(d) phi(q/d)
  for (std::int64_t q = 1; q <= 100; ++q) {
    std::int64_t expected = 0;
    for (std::int64_t d = 1; d <= q; ++d) {
      if (q % d == 0) expected += oracle::moebius(d) * oracle::phi(q / d);
    }
    EXPECT_EQ(static_cast<std::int64_t>(lchi::primitive_characters(q).size()), expected) << "q=" << q;
  }
}

TEST(Characters, PrimeModulusNontrivialArePrimitive) {
  for (std::int64_t q = 2; q <= 97; ++q) {
    if (!oracle::is_prime(q)) continue;
    for (const auto& chi : lchi::enumerate_characters(q)) {
      if (chi.principal()) continue;
      EXPECT_TRUE(chi.primitive()) << "q=" << q << " label=" << chi.label();
    }
  }
}

TEST(Characters, Multiplicativity) {
  std::mt19937_64 rng(7);
  for (std::int64_t q = 1; q <= 50; ++q) {
    std::uniform_int_distribution<std::int64_t> pick(-5 * q, 5 * q);
    for (const auto& chi : lchi::enumerate_characters(q)) {
      ASSERT_EQ(chi(1), cplx(1.0, 0.0));
      for (int trial = 0; trial < 1000; ++trial) {
        const std::int64_t a = pick(rng);
        const std::int64_t b = pick(rng);
        ASSERT_LE(dist(chi(a * b), chi(a) * chi(b)), 1e-14) << "q=" << q << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Characters, ZeroExactlyOffUnits) {
  for (std::int64_t q = 1; q <= 50; ++q) {
    for (const auto& chi : lchi::enumerate_characters(q)) {
      for (std::int64_t a = 0; a < q; ++a) {
        const bool unit = std::gcd(a, q) == 1;
        EXPECT_EQ(chi(a) == cplx(0.0, 0.0), !unit);
        if (unit) EXPECT_NEAR(std::abs(chi(a)), 1.0, 1e-15);
      }
    }
  }
}

TEST(Characters, RowOrthogonality) {
  for (std::int64_t q = 1; q <= 40; ++q) {
    const auto chars = lchi::enumerate_characters(q);
    for (const auto& chi : chars) {
      for (const auto& psi : chars) {
        oracle::lcplx s = 0;
        for (std::int64_t a = 0; a < q; ++a) s += oracle::value(chi, a) * std::conj(oracle::value(psi, a));
        const long double expected = chi == psi ? static_cast<long double>(oracle::phi(q)) : 0.0L;
        EXPECT_LE(std::abs(s - expected), 1e-12) << "q=" << q;
      }
    }
  }
}

TEST(Characters, ConjugateClosure) {
  for (std::int64_t q = 1; q <= 50; ++q) {
    const auto chars = lchi::enumerate_characters(q);
    for (const auto& chi : chars) {
      const auto bar = chi.conj();
      ASSERT_GE(bar.label(), 0);
      ASSERT_LT(bar.label(), static_cast<int>(chars.size()));
      const auto& listed = chars[static_cast<std::size_t>(bar.label())];
      EXPECT_EQ(listed, bar);
      EXPECT_EQ(listed.kappa(), chi.kappa());
      for (std::int64_t a = 0; a < q; ++a) EXPECT_LE(dist(listed(a), std::conj(chi(a))), 1e-15);
    }
  }
}

TEST(Characters, ParityFromMinusOne) {
  for (std::int64_t q = 1; q <= 50; ++q) {
    for (const auto& chi : lchi::enumerate_characters(q)) {
      const cplx m = chi(q - 1);
      if (chi.kappa() == 0) {
        EXPECT_EQ(m, cplx(1.0, 0.0));
      } else {
        EXPECT_EQ(m, cplx(-1.0, 0.0));
      }
    }
  }
}

TEST(Arithmetic, Examples) {
  EXPECT_NEAR(lchi::von_mangoldt(8), 0.6931471805599453, 1e-15);
  EXPECT_EQ(lchi::moebius(12), 0);
  EXPECT_EQ(lchi::euler_phi(12), 4);
  EXPECT_EQ(lchi::von_mangoldt(1), 0.0);
  EXPECT_EQ(lchi::moebius(1), 1);
  EXPECT_EQ(lchi::euler_phi(1), 1);
  EXPECT_THROW(lchi::von_mangoldt(0), std::invalid_argument);
}

TEST(Arithmetic, AgreesWithTrialDivision) {
  const lchi::MangoldtTable table(5000);
  for (std::int64_t n = 1; n <= 5000; ++n) {
    const double lam = static_cast<double>(oracle::mangoldt(n));
    ASSERT_NEAR(lchi::von_mangoldt(n), lam, 1e-14) << n;
    ASSERT_NEAR(table[n], lam, 1e-14) << n;
    ASSERT_EQ(lchi::moebius(n), oracle::moebius(n)) << n;
    if (n <= 2000) ASSERT_EQ(lchi::euler_phi(n), oracle::phi(n)) << n;
  }
}

TEST(Arithmetic, MangoldtTableExtends) {
  lchi::MangoldtTable table(10);
  table.extend(100);
  EXPECT_EQ(table.limit(), 100);
  EXPECT_NEAR(table[97], std::log(97.0), 1e-15);
  EXPECT_NEAR(table[64], std::log(2.0), 1e-15);
  table.extend(50);
  EXPECT_EQ(table.limit(), 100);
}

TEST(Arithmetic, NonCoprimePrimePowerMassIsSmall) {
  // sum over n <= N with gcd(n, M) > 1 of Lambda(n) is at most 2 log M log N
  const lchi::MangoldtTable table(10000);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pick(2, 10000);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t M = pick(rng);
    double running = 0.0;
    for (std::int64_t n = 1; n <= 10000; ++n) {
      if (std::gcd(n, M) > 1) running += table[n];
      if (n >= 2) {
        ASSERT_LE(running, 2.0 * std::log(static_cast<double>(M)) * std::log(static_cast<double>(n)) + 1e-12)
            << "M=" << M << " N=" << n;
      }
    }
  }
}

TEST(RationalXi, ReducesAndParses) {
  const lchi::RationalXi xi(4, 6);
  EXPECT_EQ(xi.h(), 2);
  EXPECT_EQ(xi.k(), 3);
  EXPECT_DOUBLE_EQ(xi.value(), 2.0 / 3.0);
  EXPECT_EQ(lchi::RationalXi::parse("10/4"), lchi::RationalXi(5, 2));
  EXPECT_EQ(lchi::RationalXi::parse("7"), lchi::RationalXi(7, 1));
  EXPECT_EQ(xi.str(), "2/3");
}

TEST(RationalXi, RejectsMalformed) {
  for (const char* bad : {"", "0/3", "3/0", "-1/2", "1/-2", "a/b", "1/2/3", "1.5", "1/2x", "/3"}) {
    EXPECT_THROW(lchi::RationalXi::parse(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(lchi::RationalXi(0, 1), std::invalid_argument);
}
