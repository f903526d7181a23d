#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lchi/fit.hpp"
#include "lchi/verify.hpp"
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
  static const auto z = lchi::scan_zeros(chi4(), 680.0);
  return z;
}

std::vector<double> column(const lchi::ExperimentReport& r, const char* key) {
  std::vector<double> out;
  for (const auto& row : r.rows) out.push_back(row.at(key).get<double>());
  return out;
}

// every check's pass flag agrees with its relation and every value is finite
void expect_consistent(const lchi::ExperimentReport& r) {
  for (const auto& c : r.checks) {
    EXPECT_TRUE(std::isfinite(c.value)) << c.name;
    const bool holds = c.relation == "<=" ? c.value <= c.threshold : c.value >= c.threshold;
    EXPECT_EQ(c.pass, holds) << c.name;
  }
  for (const auto& [k, v] : r.fits) EXPECT_TRUE(std::isfinite(v)) << k;
  const auto j = lchi::to_json(r);
  EXPECT_EQ(j.at("passed").get<bool>(), r.passed());
  EXPECT_EQ(j.at("experiment").get<std::string>(), r.experiment);
}

}  // namespace

TEST(Fit, LogLog) {
  const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
  const std::vector<double> y = {3.0, 3.0 * std::sqrt(2.0), 6.0, 6.0 * std::sqrt(2.0)};
  const auto f = lchi::loglog_fit(x, y);
  EXPECT_NEAR(f.slope, 0.5, 1e-14);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-13);
  EXPECT_EQ(f.points, 4);
  EXPECT_THROW(lchi::loglog_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(lchi::loglog_fit(std::vector<double>{2.0, 2.0}, std::vector<double>{1.0, 3.0}), std::invalid_argument);
  EXPECT_NEAR(lchi::envelope_constant(x, y, 0.5), 3.0, 1e-14);
  EXPECT_EQ(lchi::median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(lchi::median({4.0, 1.0, 2.0, 3.0}), 2.5);
  const auto g = lchi::geometric_grid(10.0, 160.0, 5);
  EXPECT_NEAR(g[1], 20.0, 1e-12);
  EXPECT_EQ(g.back(), 160.0);
}

TEST(SharpCancellation, ModFourCancellation) {
  const auto grid = lchi::geometric_grid(32.0, 300.0, 12);
  const auto r = lchi::thm31_cancellation(chi4(), lchi::RationalXi(1, 1), grid, chi4_zeros());
  expect_consistent(r);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.fit("slope"), 0.75);
  EXPECT_GE(r.fit("slope_sigma2"), 0.9);
  EXPECT_LE(r.fit("max_ratio"), 5.0 * r.fit("median_ratio"));

  // slopes re-derived from the rows
  const auto comb = column(r, "abs_combined");
  EXPECT_NEAR(oracle::loglog_slope(grid, comb), r.fit("slope"), 1e-12);
  EXPECT_NEAR(oracle::loglog_slope(grid, column(r, "abs_sigma2")), r.fit("slope_sigma2"), 1e-12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& row = r.rows[i];
    const cplx s1{row.at("re_sigma1").get<double>(), row.at("im_sigma1").get<double>()};
    const cplx s2{row.at("re_sigma2").get<double>(), row.at("im_sigma2").get<double>()};
    EXPECT_EQ(std::abs(s1 + s2), comb[i]);
    const double T = grid[i];
    EXPECT_NEAR(row.at("ratio").get<double>(), comb[i] / (std::sqrt(4.0 * T) * std::log(T) * std::log(T)), 1e-15);
  }
}

TEST(SharpCancellation, ZetaSpecialization) {
  const auto zeros = lchi::scan_zeros(zeta(), 300.0);
  const auto r = lchi::thm31_cancellation(zeta(), lchi::RationalXi(1, 1), lchi::geometric_grid(32.0, 300.0, 10), zeros);
  expect_consistent(r);
  EXPECT_EQ(r.fit("c_tilde_abs"), 1.0);
  EXPECT_GE(r.fit("slope_sigma2"), 0.9);
  EXPECT_LE(r.fit("slope"), 0.75);
}

TEST(SharpCancellation, Preconditions) {
  EXPECT_THROW(lchi::thm31_cancellation(chi4(), 1.0, {100.0}, chi4_zeros()), std::invalid_argument);
  EXPECT_THROW(lchi::thm31_cancellation(chi4(), 1.0, lchi::geometric_grid(10.0, 300.0, 8), chi4_zeros()),
               std::invalid_argument);
  EXPECT_THROW(lchi::thm31_cancellation(chi4(), 1.0, lchi::geometric_grid(40.0, 450.0, 8), chi4_zeros()),
               std::invalid_argument);
  const auto short_list = lchi::scan_zeros(chi4(), 100.0);
  EXPECT_THROW(lchi::thm31_cancellation(chi4(), 1.0, lchi::geometric_grid(40.0, 300.0, 8), short_list),
               lchi::CoverageError);
}

TEST(SharpCancellation, IrrationalXiSkipsLinearCheck) {
  const auto r = lchi::thm31_cancellation(chi4(), std::numbers::sqrt2, lchi::geometric_grid(32.0, 300.0, 8), chi4_zeros());
  EXPECT_THROW(r.check("slope_sigma2"), std::out_of_range);
  EXPECT_NO_THROW(r.check("slope_combined"));
}

TEST(SmoothCancellation, ModFourThird) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {10.0, 20.0, 40.0, 80.0, 160.0};
  const auto r = lchi::corB_smooth_cancellation(chi4(), lchi::RationalXi(1, 3), grid, bump, chi4_zeros());
  expect_consistent(r);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.fit("slope"), 0.75);
  EXPECT_NEAR(oracle::loglog_slope(grid, column(r, "abs_combined")), r.fit("slope"), 1e-12);
}

TEST(SmoothCancellation, EmptyZeroSupportStillFinite) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  // 2 pi X b stays below the first ordinate near 6.02 while q X b > 3 keeps n = 3
  const std::vector<double> grid = {0.38, 0.4, 0.43, 0.47};
  const auto r = lchi::corB_smooth_cancellation(chi4(), 1.0, grid, bump, chi4_zeros());
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.at("re_zero_sum").get<double>(), 0.0);
    EXPECT_EQ(row.at("im_zero_sum").get<double>(), 0.0);
    EXPECT_TRUE(std::isfinite(row.at("abs_combined").get<double>()));
    EXPECT_GT(row.at("abs_combined").get<double>(), 0.0);
  }
}

TEST(SmoothCancellation, WiderBumpSameConclusion) {
  const auto bump = lchi::default_bump(2.0, 4.0);
  const std::vector<double> grid = {10.0, 20.0, 40.0, 80.0, 160.0};
  const lchi::RationalXi xi(1, 3);
  const auto zeros = lchi::scan_zeros(chi4(), 2.0 * std::numbers::pi / 3.0 * 160.0 * 4.0);
  const auto r = lchi::corB_smooth_cancellation(chi4(), xi, grid, bump, zeros);
  expect_consistent(r);
  EXPECT_LE(r.fit("slope"), 0.75);
  EXPECT_TRUE(lchi::completeness(zeros).pass);
}

TEST(SmoothEnvelope, Envelope) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {10.0, 20.0, 40.0, 80.0, 160.0};
  const auto r = lchi::superbound_envelope(chi4(), lchi::RationalXi(1, 3), grid, bump, chi4_zeros());
  expect_consistent(r);
  EXPECT_LE(r.fit("slope"), 0.6);
  EXPECT_LE(r.check("rearrangement_identity").value, 1e-9);
  const auto lhs = column(r, "abs_lhs");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(lhs[i], r.fit("constant") * std::pow(grid[i], 0.6) * (1.0 + 1e-14));
  }
}

TEST(SmoothEnvelope, NonCoprimeXiHasNoMainTerm) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {10.0, 20.0, 40.0, 80.0};
  const auto r = lchi::superbound_envelope(chi4(), lchi::RationalXi(2, 3), grid, bump, chi4_zeros());
  EXPECT_EQ(r.fit("re_c_tilde"), 0.0);
  EXPECT_EQ(r.fit("im_c_tilde"), 0.0);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.at("re_lhs").get<double>(), row.at("re_zero_sum").get<double>());
    EXPECT_EQ(row.at("im_lhs").get<double>(), row.at("im_zero_sum").get<double>());
  }
}

TEST(ContourIntegral, Examples) {
  const auto a = lchi::lemma23_contour_check(zeta(), 3.0, 1.0, 100.0);
  expect_consistent(a);
  EXPECT_TRUE(a.passed());
  EXPECT_LE(a.fit("ratio"), 5.0);
  EXPECT_LE(a.fit("doubling_difference"), 1e-6);
  EXPECT_TRUE(a.rows[0].at("in_window").get<bool>());
  EXPECT_NEAR(a.rows[0].at("re_main_term").get<double>(), 1.0, 1e-15);

  const auto b = lchi::lemma23_contour_check(zeta(), 0.05, 1.0, 100.0);
  EXPECT_FALSE(b.rows[0].at("in_window").get<bool>());
  EXPECT_EQ(b.rows[0].at("re_main_term").get<double>(), 0.0);
  EXPECT_TRUE(b.passed());

  const auto c = lchi::lemma23_contour_check(chi4(), 5.0, 0.5, 120.0);
  EXPECT_TRUE(c.passed());
  EXPECT_LE(c.fit("ratio"), 5.0);

  EXPECT_THROW(lchi::lemma23_contour_check(zeta(), 3.0, 0.05, 100.0), std::invalid_argument);
  EXPECT_THROW(lchi::lemma23_contour_check(zeta(), 3.0, 1.0, 250.0), std::invalid_argument);
}

TEST(ContourIntegral, IntegralMatchesPlainQuadrature) {
  // same integrand through the generic adaptive rule on unit panels
  const double v = 3.0, c = 1.0, T = 40.0;
  const auto r = lchi::lemma23_contour_check(zeta(), v, c, T);
  const cplx eps = lchi::root_number(zeta());
  auto f = [&](double t) {
    return std::exp(-cplx{c, t} * std::log(v)) * lchi::x_factor_value<double>(cplx{1.0 - c, -t}, eps, 1, 0) /
           (2.0 * std::numbers::pi);
  };
  cplx acc = 0.0;
  for (double lo = 1.0; lo < T; lo += 0.25) acc += lchi::integrate<cplx>(f, lo, lo + 0.25, {1e-14, 1e-12, 200}).value;
  const cplx got{r.rows[0].at("re_integral").get<double>(), r.rows[0].at("im_integral").get<double>()};
  EXPECT_LE(std::abs(got - acc), 1e-9);
}

TEST(PhaseIntegral, Examples) {
  const auto inside = lchi::lemma22_phase_check(50.0, 90.0, 1.0, 70.0);
  expect_consistent(inside);
  EXPECT_TRUE(inside.passed());
  EXPECT_LE(inside.fit("doubling_difference"), 1e-6);

  const auto outside = lchi::lemma22_phase_check(50.0, 90.0, 1.0, 25.0);
  EXPECT_EQ(outside.rows[0].at("re_main_term").get<double>(), 0.0);
  EXPECT_TRUE(outside.passed());

  const auto edge = lchi::lemma22_phase_check(50.0, 90.0, 1.0, 90.0);
  EXPECT_THROW(edge.check("residual_over_error_scale"), std::out_of_range);
  EXPECT_TRUE(std::isfinite(edge.fit("ratio_indicator_one")));
  EXPECT_TRUE(std::isfinite(edge.fit("ratio_indicator_zero")));

  EXPECT_THROW(lchi::lemma22_phase_check(50.0, 120.0, 1.0, 70.0), std::invalid_argument);
}

TEST(PhaseIntegral, IntegralMatchesPlainQuadrature) {
  const double a = 50.0, b = 90.0, c = 1.0, u = 70.0;
  const auto r = lchi::lemma22_phase_check(a, b, c, u);
  auto f = [&](double t) {
    return std::polar(std::pow(t / (2.0 * std::numbers::pi), c - 0.5), t * std::log(t / (u * std::numbers::e)));
  };
  cplx acc = 0.0;
  for (double lo = a; lo < b; lo += 0.5) acc += lchi::integrate<cplx>(f, lo, lo + 0.5, {1e-14, 1e-12, 200}).value;
  const cplx got{r.rows[0].at("re_integral").get<double>(), r.rows[0].at("im_integral").get<double>()};
  EXPECT_LE(std::abs(got - acc), 1e-9);
}

TEST(Cross, ModFourWithModThree) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const auto r = lchi::cross_character_decomposition(chi4(), lchi::character(3, 1), 500.0, bump);
  expect_consistent(r);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.fit("pointwise_max_error"), 1e-10);
  EXPECT_LE(r.fit("decomposition_error"), 1e-8);
}

TEST(Cross, TrivialWithModFour) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const auto psi = chi4();
  const double X = 500.0;
  const auto r = lchi::cross_character_decomposition(zeta(), psi, X, bump);
  EXPECT_TRUE(r.passed());

  // W = tau(conj psi) sum Lambda(n) psi(n) B(n/X), summed independently
  const auto lam = oracle::mangoldt_sieve(1000);
  oracle::lcplx w = 0;
  for (std::int64_t n = 2; n <= 1000; ++n) {
    const long double u = n / static_cast<long double>(X);
    if (u <= 1.0L || u >= 2.0L) continue;
    w += lam[static_cast<std::size_t>(n)] * oracle::value(psi, n) * std::exp(-1.0L / ((u - 1.0L) * (2.0L - u)));
  }
  w *= oracle::gauss_sum(psi.conj());
  const auto& row = r.rows.at(0);
  ASSERT_TRUE(row.contains("re_W_full"));
  const cplx got{row.at("re_W_full").get<double>(), row.at("im_W_full").get<double>()};
  EXPECT_LE(std::abs(got - cplx(static_cast<double>(w.real()), static_cast<double>(w.imag()))), 1e-9);
}

TEST(Cross, SameCharacter) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const auto r = lchi::cross_character_decomposition(chi4(), chi4(), 300.0, bump);
  expect_consistent(r);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.fit("decomposition_error"), 1e-8);
}

TEST(Cross, RequiresPrimitive) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  EXPECT_THROW(lchi::cross_character_decomposition(lchi::character(4, 0), chi4(), 100.0, bump), std::invalid_argument);
}

TEST(Chebyshev, ResidualsMatchDirectSum) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5};
  const auto r = lchi::smooth_chebyshev_check(bump, grid);
  expect_consistent(r);
  const auto lam = oracle::mangoldt_sieve(200000);
  const auto res = column(r, "residual");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long double X = grid[i];
    long double s = 0.0L;
    for (std::int64_t n = static_cast<std::int64_t>(X) + 1; n < static_cast<std::int64_t>(2 * X); ++n) {
      const long double u = n / X;
      s += lam[static_cast<std::size_t>(n)] * std::exp(-1.0L / ((u - 1.0L) * (2.0L - u)));
    }
    EXPECT_NEAR(res[i], static_cast<double>(s - bump.integral() * X), 1e-9 * X) << grid[i];
  }
  EXPECT_LT(r.rows[1].at("relative_residual").get<double>(), 0.05);
  std::vector<double> abs_res;
  for (double v : res) abs_res.push_back(std::abs(v));
  EXPECT_NEAR(oracle::loglog_slope(grid, abs_res), r.fit("slope"), 1e-12);
}

TEST(Chebyshev, EmptySums) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {0.1, 0.3, 0.6, 0.9};
  const auto r = lchi::smooth_chebyshev_check(bump, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(r.rows[i].at("residual").get<double>(), -bump.integral() * grid[i]);
  }
  EXPECT_THROW(lchi::smooth_chebyshev_check(bump, {1e2, 1e3, 1e4, 2e5}), std::invalid_argument);
}

TEST(Reports, Deterministic) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  const std::vector<double> grid = {10.0, 20.0, 40.0, 80.0, 160.0};
  const lchi::RationalXi xi(1, 3);
  const auto a = lchi::to_json(lchi::corB_smooth_cancellation(chi4(), xi, grid, bump, chi4_zeros())).dump();
  const auto b = lchi::to_json(lchi::corB_smooth_cancellation(chi4(), xi, grid, bump, chi4_zeros())).dump();
  EXPECT_EQ(a, b);
  const auto c1 = lchi::to_json(lchi::cross_character_decomposition(chi4(), lchi::character(3, 1), 200.0, bump)).dump();
  const auto c2 = lchi::to_json(lchi::cross_character_decomposition(chi4(), lchi::character(3, 1), 200.0, bump)).dump();
  EXPECT_EQ(c1, c2);
}

TEST(Reports, ThreadInvariance) {
  const auto bump = lchi::default_bump(1.0, 2.0);
  lchi::VerifyOptions one, many;
  many.threads = 4;
  const auto grid = lchi::geometric_grid(32.0, 300.0, 12);
  EXPECT_EQ(lchi::to_json(lchi::thm31_cancellation(chi4(), 1.0, grid, chi4_zeros(), one)).dump(),
            lchi::to_json(lchi::thm31_cancellation(chi4(), 1.0, grid, chi4_zeros(), many)).dump());
  EXPECT_EQ(lchi::to_json(lchi::cross_character_decomposition(chi4(), lchi::character(3, 1), 200.0, bump, one)).dump(),
            lchi::to_json(lchi::cross_character_decomposition(chi4(), lchi::character(3, 1), 200.0, bump, many)).dump());
  const std::vector<double> xg4 = {1e2, 1e3, 1e4, 3e4};
  EXPECT_EQ(lchi::to_json(lchi::smooth_chebyshev_check(bump, xg4, one)).dump(),
            lchi::to_json(lchi::smooth_chebyshev_check(bump, xg4, many)).dump());
}

TEST(Reports, SmoothSharpConsistencyIsReportOnly) {
  const auto r = lchi::smooth_sharp_consistency(chi4(), 1.0, 10.0, {0.2, 0.1, 0.05, 0.02}, chi4_zeros());
  EXPECT_TRUE(r.checks.empty());
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) EXPECT_TRUE(std::isfinite(row.at("difference").get<double>()));
}
