#include "collrates/ratecalc.hpp"

#include <cmath>
#include <random>

#include "collrates/errors.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace collrates;
using testutil::rel_diff;

TEST_SUITE_BEGIN("ratecalc");

namespace {

const std::vector<double> oracle_temps = {20.0, 100.0, 500.0, 1000.0, 1500.0, 2000.0};

SymmetrizedXsec symmetrized_elastic(const CrossSectionTable& table) {
    return symmetrize(table, {{0, 0}, {0, 0}}, MissingReversePolicy::require_both);
}

}  // namespace

TEST_CASE("mean speed") {
    const PipelineConfig cfg;
    SUBCASE("sqrt scalings are exact") {
        CHECK(mean_speed(400.0, 2.0, cfg) / mean_speed(100.0, 2.0, cfg) ==
              doctest::Approx(2.0).epsilon(1e-14));
        CHECK(mean_speed(300.0, 8.0, cfg) / mean_speed(300.0, 2.0, cfg) ==
              doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("matches an independently entered CGS evaluation") {
        // sqrt(8 kB T / (pi mu)) with every constant typed in again
        const double kbt_erg = 0.695034800 * 300.0 * 1.986445857e-16;
        const double mu_g = 1.81277 * 1.66053907e-24;
        const double expect = std::sqrt(8.0 * kbt_erg / (3.14159265358979323846 * mu_g));
        CHECK(rel_diff(mean_speed(300.0, 1.81277, cfg), expect) < 1e-10);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(mean_speed(-1.0, 2.0, cfg), ConfigError);
        CHECK_THROWS_AS(mean_speed(300.0, 0.0, cfg), ConfigError);
    }
}

TEST_CASE("natural cubic spline") {
    SUBCASE("interpolates the knots and reproduces straight lines") {
        const std::vector<double> x = {0.0, 1.0, 2.5, 4.0, 7.0};
        std::vector<double> y;
        for (double v : x) y.push_back(3.0 * v - 2.0);
        const CubicSpline s(x, y);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(s(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
        for (double v : {0.3, 1.7, 3.9, 6.2})
            CHECK(s(v) == doctest::Approx(3.0 * v - 2.0).epsilon(1e-13));
        CHECK(s.derivative(2.0) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("two knots degenerate to a line") {
        const CubicSpline s({1.0, 3.0}, {2.0, 8.0});
        CHECK(s(2.0) == doctest::Approx(5.0).epsilon(1e-15));
        CHECK(s.derivative(1.5) == doctest::Approx(3.0).epsilon(1e-15));
    }
    SUBCASE("bad knots are rejected") {
        CHECK_THROWS(CubicSpline({1.0}, {2.0}));
        CHECK_THROWS(CubicSpline({1.0, 1.0}, {2.0, 3.0}));
    }
}

TEST_CASE("transition context") {
    const LevelList target = testutil::target_levels(3);
    const LevelList projectile = testutil::projectile_levels(2);
    const TransitionKey key{{2, 1}, {0, 0}};
    const auto ctx = TransitionContext::from(key, target, projectile);
    const double expect_de = (target.at(0).energy_cm1 + projectile.at(0).energy_cm1) -
                             (target.at(2).energy_cm1 + projectile.at(1).energy_cm1);
    CHECK(ctx.delta_e_cm1 == doctest::Approx(expect_de).epsilon(1e-15));
    CHECK(ctx.u_min() == doctest::Approx(std::abs(expect_de) / 4.0));
    CHECK(ctx.g2 == 3.0);   // projectile j=1
    CHECK(ctx.g2p == 1.0);  // projectile j=0
    CHECK(TransitionContext{}.u_min() == 0.0);
}

TEST_CASE("integrand curve") {
    const PipelineConfig cfg;

    SUBCASE("constant sigma~, dE = 0: matches c U exp(-U/kBT) at the grid points") {
        const CrossSectionTable table = testutil::elastic_table(2.5, 0.0);
        const auto sx = symmetrized_elastic(table);
        const TransitionContext ctx = TransitionContext::from(
            {{0, 0}, {0, 0}}, table.target(), table.projectile());
        const IntegrandCurve curve(sx, ctx, 300.0, cfg);
        const double kbt = cfg.kb_cm1_per_k * 300.0;
        const double c = 3.0 * 2.5;  // degeneracy-weighted constant
        for (double u : testutil::ten_point_grid())
            CHECK(rel_diff(curve(u), c * u * std::exp(-u / kbt)) < 1e-12);
    }

    SUBCASE("curve vanishes at the threshold") {
        CrossSectionTable table(EnergyGrid(testutil::ten_point_grid()), testutil::target_levels(3),
                                testutil::projectile_levels(1));
        std::vector<double> sigma(10, 4.0);
        table.add({{2, 0}, {0, 0}}, sigma);
        table.add({{0, 0}, {2, 0}}, sigma);
        const auto sx = symmetrize(table, {{2, 0}, {0, 0}}, MissingReversePolicy::require_both);
        const auto ctx =
            TransitionContext::from({{2, 0}, {0, 0}}, table.target(), table.projectile());
        REQUIRE(ctx.u_min() > 0);
        const IntegrandCurve curve(sx, ctx, 500.0, cfg);
        CHECK(curve(ctx.u_min()) == 0.0);
        CHECK(curve(0.5 * ctx.u_min()) == 0.0);
        CHECK(curve(ctx.u_min() * 1.0001) > 0.0);
    }

    SUBCASE("non-negative everywhere over randomized fixtures") {
        std::mt19937 rng(20240201);
        std::uniform_real_distribution<double> sig(0.0, 10.0), de(-800.0, 800.0);
        std::uniform_int_distribution<int> zero_one_in(0, 6);
        for (int fixture = 0; fixture < 20; ++fixture) {
            SymmetrizedXsec sx;
            sx.u_cm1 = testutil::ten_point_grid();
            sx.sigma.clear();
            for (std::size_t i = 0; i < sx.u_cm1.size(); ++i)
                sx.sigma.push_back(zero_one_in(rng) == 0 ? 0.0 : sig(rng));
            TransitionContext ctx;
            ctx.delta_e_cm1 = de(rng);
            const IntegrandCurve curve(sx, ctx, 300.0, cfg);
            std::uniform_real_distribution<double> u(ctx.u_min(), 2.0 * sx.u_cm1.back());
            for (int i = 0; i < 500; ++i) CHECK(curve(u(rng)) >= 0.0);
        }
    }

    SUBCASE("fewer than 2 usable points is a data error") {
        SymmetrizedXsec sx;
        sx.u_cm1 = {10.0, 20.0, 30.0};
        sx.sigma = {1.0, absent_xsec, absent_xsec};
        TransitionContext ctx;
        CHECK_THROWS_AS(IntegrandCurve(sx, ctx, 300.0, cfg), DataError);
        ctx.delta_e_cm1 = 4.0 * 25.0;  // threshold above all but the last point
        sx.sigma = {1.0, 1.0, 1.0};
        CHECK_THROWS_AS(IntegrandCurve(sx, ctx, 300.0, cfg), DataError);
    }
}

TEST_CASE("rate quadrature oracles") {
    const PipelineConfig cfg;

    SUBCASE("oracle A: constant sigma, k = v_ave sigma0 1e-16") {
        for (double sigma0 : {0.1, 10.0, 1000.0}) {
            const CrossSectionTable table = testutil::elastic_table(sigma0, 0.0);
            const auto sx = symmetrized_elastic(table);
            const auto ctx = TransitionContext::from(
                {{0, 0}, {0, 0}}, table.target(), table.projectile());
            for (double t : oracle_temps) {
                const IntegrandCurve curve(sx, ctx, t, cfg);
                const double k = integrate_rate(curve, ctx, t, cfg);
                const double expect = mean_speed(t, cfg.mu_u, cfg) * sigma0 * 1e-16;
                CHECK(rel_diff(k, expect) < 1e-5);
            }
        }
    }

    SUBCASE("oracle B: sigma = sigma0 exp(-U/U0), k = v sigma0 1e-16 [U0/(U0+kBT)]^2") {
        const double sigma0 = 7.5;
        for (double u0 : {300.0, 700.0, 2000.0}) {
            const CrossSectionTable table = testutil::elastic_table(sigma0, u0);
            const auto sx = symmetrized_elastic(table);
            const auto ctx = TransitionContext::from(
                {{0, 0}, {0, 0}}, table.target(), table.projectile());
            for (double t : oracle_temps) {
                const IntegrandCurve curve(sx, ctx, t, cfg);
                const double k = integrate_rate(curve, ctx, t, cfg);
                const double kbt = cfg.kb_cm1_per_k * t;
                const double expect = mean_speed(t, cfg.mu_u, cfg) * sigma0 * 1e-16 *
                                      std::pow(u0 / (u0 + kbt), 2);
                CHECK(rel_diff(k, expect) < 1e-5);
            }
        }
    }

    SUBCASE("adaptive quadrature matches dense trapezoid sums on generic curves") {
        std::mt19937 rng(555);
        std::uniform_real_distribution<double> amp(0.2, 9.0), decay(150.0, 4000.0),
            de(-900.0, 900.0);
        for (int fixture = 0; fixture < 6; ++fixture) {
            SymmetrizedXsec sx;
            sx.u_cm1 = testutil::ten_point_grid();
            const double a = amp(rng), ud = decay(rng), b = 0.05 * amp(rng);
            for (double u : sx.u_cm1) sx.sigma.push_back(a * std::exp(-u / ud) + b);
            TransitionContext ctx;
            ctx.delta_e_cm1 = de(rng);
            ctx.g1 = 3;
            ctx.g1p = 5;
            for (double t : {150.0, 1200.0}) {
                const IntegrandCurve curve(sx, ctx, t, cfg);
                const double kbt = cfg.kb_cm1_per_k * t;
                const double prefactor = mean_speed(t, cfg.mu_u, cfg) / (kbt * kbt) *
                                         std::exp(-ctx.delta_e_cm1 / (2.0 * kbt)) /
                                         (ctx.g1 * ctx.g2) * 1e-16;
                const double k = integrate_rate(curve, ctx, t, cfg);
                // dense trapezoid over [u_min, u_last + 40 kBT]
                const double lo = curve.u_min();
                const double hi = sx.u_cm1.back() + 40.0 * kbt;
                const int n = 400000;
                double sum = 0.5 * (curve(lo) + curve(hi));
                for (int i = 1; i < n; ++i) sum += curve(lo + (hi - lo) * i / n);
                sum *= (hi - lo) / n;
                CHECK(rel_diff(k, prefactor * sum) < 1e-4);
            }
        }
    }

    SUBCASE("quadrature failure is loud") {
        PipelineConfig tight = cfg;
        tight.quad_rtol = 1e-14;
        tight.max_refinements = 2;
        const CrossSectionTable table = testutil::elastic_table(5.0, 400.0);
        const auto sx = symmetrized_elastic(table);
        const auto ctx =
            TransitionContext::from({{0, 0}, {0, 0}}, table.target(), table.projectile());
        const IntegrandCurve curve(sx, ctx, 300.0, tight);
        CHECK_THROWS_AS(integrate_rate(curve, ctx, 300.0, tight), NumericalError);
    }

    SUBCASE("redundant knot on the curve leaves k unchanged") {
        const double sigma0 = 3.0, u0 = 900.0;
        std::vector<double> grid = testutil::ten_point_grid();
        const CrossSectionTable base = testutil::elastic_table(sigma0, u0, grid);
        grid.push_back(250.0);
        std::sort(grid.begin(), grid.end());
        const CrossSectionTable refined = testutil::elastic_table(sigma0, u0, grid);
        const auto ctx =
            TransitionContext::from({{0, 0}, {0, 0}}, base.target(), base.projectile());
        for (double t : {100.0, 1000.0}) {
            const IntegrandCurve c1(symmetrized_elastic(base), ctx, t, cfg);
            const IntegrandCurve c2(symmetrized_elastic(refined), ctx, t, cfg);
            const double k1 = integrate_rate(c1, ctx, t, cfg);
            const double k2 = integrate_rate(c2, ctx, t, cfg);
            CHECK(rel_diff(k1, k2) < 10.0 * cfg.quad_rtol);
        }
    }
}

TEST_CASE("detailed balance") {
    const PipelineConfig cfg;
    const CrossSectionTable table = testutil::synthetic_dataset(6, 2, 12, 77);
    const std::vector<double> temps = {100.0, 500.0, 1000.0, 1500.0};
    const RateBatchResult result = rate_table(table, temps, cfg);
    REQUIRE(result.failures.empty());

    int checked = 0;
    for (const auto& [key, k_fwd] : result.table.entries) {
        if (key.elastic() || key.canonical() != key) continue;
        const auto& k_bwd = result.table.entries.at(key.reversed());
        const auto ctx = TransitionContext::from(key, table.target(), table.projectile());
        for (std::size_t t = 0; t < temps.size(); ++t) {
            const double kbt = cfg.kb_cm1_per_k * temps[t];
            const double lhs = ctx.g1 * ctx.g2 * k_fwd[t];
            const double rhs =
                ctx.g1p * ctx.g2p * k_bwd[t] * std::exp(-ctx.delta_e_cm1 / kbt);
            CHECK(rel_diff(lhs, rhs) < 1e-5);
            ++checked;
        }
    }
    CHECK(checked == 12 * 4);
}

TEST_CASE("rate table batch") {
    const PipelineConfig cfg;

    SUBCASE("empty table gives an empty result with the grid echoed") {
        CrossSectionTable table(EnergyGrid({10.0, 100.0}), testutil::target_levels(2),
                                testutil::projectile_levels(1));
        const RateBatchResult result = rate_table(table, {100.0, 500.0}, cfg);
        CHECK(result.table.entries.empty());
        CHECK(result.table.temps_k == std::vector<double>{100.0, 500.0});
        CHECK(result.failures.empty());
    }

    SUBCASE("single elastic fixture matches integrate_rate exactly") {
        const CrossSectionTable table = testutil::elastic_table(5.0, 0.0);
        const RateBatchResult result = rate_table(table, {100.0, 500.0}, cfg);
        REQUIRE(result.table.entries.size() == 1);
        const auto& row = result.table.entries.begin()->second;
        const auto ctx =
            TransitionContext::from({{0, 0}, {0, 0}}, table.target(), table.projectile());
        const auto sx = symmetrized_elastic(table);
        for (std::size_t t = 0; t < row.size(); ++t) {
            const double temp = result.table.temps_k[t];
            const double direct =
                integrate_rate(IntegrandCurve(sx, ctx, temp, cfg), ctx, temp, cfg);
            CHECK(row[t] == direct);
        }
    }

    SUBCASE("both directions are reported for inelastic pairs") {
        const CrossSectionTable table = testutil::synthetic_dataset(5, 2, 6, 3);
        const RateBatchResult result = rate_table(table, {300.0}, cfg);
        CHECK(result.table.entries.size() == 12);
        for (const auto& [key, k] : result.table.entries) {
            (void)k;
            CHECK(result.table.entries.count(key.reversed()) == 1);
        }
    }

    SUBCASE("worker count does not change the result") {
        const CrossSectionTable table = testutil::synthetic_dataset(10, 2, 30, 11);
        const RateBatchResult serial = rate_table(table, {100.0, 1000.0}, cfg, 1);
        const RateBatchResult parallel = rate_table(table, {100.0, 1000.0}, cfg, 8);
        REQUIRE(serial.table.entries.size() == parallel.table.entries.size());
        auto it = parallel.table.entries.begin();
        for (const auto& [key, k] : serial.table.entries) {
            CHECK(key == it->first);
            for (std::size_t t = 0; t < k.size(); ++t) CHECK(k[t] == it->second[t]);
            ++it;
        }
    }

    SUBCASE("a batch at the intended working scale stays deterministic") {
        const CrossSectionTable table = testutil::synthetic_dataset(49, 6, 2000, 4242);
        const RateBatchResult serial = rate_table(table, {100.0, 1500.0}, cfg, 1);
        const RateBatchResult parallel = rate_table(table, {100.0, 1500.0}, cfg, 8);
        REQUIRE(serial.failures.empty());
        REQUIRE(serial.table.entries.size() == 4000);
        REQUIRE(parallel.table.entries.size() == 4000);
        auto it = parallel.table.entries.begin();
        int mismatches = 0;
        for (const auto& [key, k] : serial.table.entries) {
            if (key != it->first) ++mismatches;
            for (std::size_t t = 0; t < k.size(); ++t)
                if (k[t] != it->second[t]) ++mismatches;
            ++it;
        }
        CHECK(mismatches == 0);
    }

    SUBCASE("failures are collected, not fatal") {
        CrossSectionTable table(EnergyGrid(testutil::ten_point_grid()), testutil::target_levels(3),
                                testutil::projectile_levels(1));
        std::vector<double> good(10, 2.0);
        table.add({{1, 0}, {0, 0}}, good);
        table.add({{0, 0}, {1, 0}}, good);
        std::vector<double> sparse(10, absent_xsec);
        sparse[0] = 1.0;  // a single usable point
        table.add({{2, 0}, {0, 0}}, sparse);
        table.add({{0, 0}, {2, 0}}, sparse);
        const RateBatchResult result = rate_table(table, {300.0}, cfg);
        CHECK(result.table.entries.size() == 2);
        REQUIRE(result.failures.size() == 1);
        CHECK(result.failures[0].kind == RateFailure::Kind::data);
    }

    SUBCASE("require-both policy turns one-sided pairs into data failures") {
        PipelineConfig strict = cfg;
        strict.missing_reverse = MissingReversePolicy::require_both;
        CrossSectionTable table(EnergyGrid(testutil::ten_point_grid()), testutil::target_levels(3),
                                testutil::projectile_levels(1));
        table.add({{1, 0}, {0, 0}}, std::vector<double>(10, 2.0));
        const RateBatchResult result = rate_table(table, {300.0}, strict);
        CHECK(result.table.entries.empty());
        REQUIRE(result.failures.size() == 1);
        CHECK(result.failures[0].kind == RateFailure::Kind::data);
    }

    SUBCASE("smoothness report rows per pair and temperature") {
        const CrossSectionTable table = testutil::synthetic_dataset(5, 2, 4, 5);
        std::vector<SmoothnessRecord> records;
        rate_table(table, {100.0, 1000.0}, cfg, 1, &records);
        CHECK(records.size() == 4 * 2);
        for (const auto& rec : records) {
            CHECK(rec.n_points >= 2);
            CHECK(rec.min_scan_value >= 0.0);
            CHECK(rec.log_interpolation);
        }
    }
}

TEST_SUITE_END();
