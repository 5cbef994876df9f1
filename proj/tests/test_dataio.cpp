#include "collrates/dataio.hpp"

#include <fstream>
#include <random>
#include <string>

#include "collrates/errors.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace collrates;

TEST_SUITE_BEGIN("dataio");

namespace {

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

}  // namespace

TEST_CASE("config defaults and parsing") {
    const testutil::TempDir dir("config");

    SUBCASE("defaults are the documented ones") {
        const PipelineConfig cfg;
        CHECK(cfg.quad_rtol == 1e-6);
        CHECK(cfg.max_refinements == 30);
        CHECK(cfg.weight_floor == 1e-4);
        CHECK(cfg.kb_cm1_per_k == 0.695034800);
        CHECK(cfg.missing_reverse == MissingReversePolicy::one_sided);
        CHECK(cfg.missing_final == MissingFinalPolicy::flag);
        CHECK(cfg.missing_initial == MissingInitialPolicy::error);
        CHECK(cfg.temps_k == std::vector<double>{100.0, 500.0, 1000.0, 1500.0});
        CHECK(cfg.included_j2.empty());
        CHECK_NOTHROW(cfg.validate());
    }

    SUBCASE("round trip") {
        std::mt19937 rng(5);
        for (int i = 0; i < 20; ++i) {
            const PipelineConfig cfg = testutil::random_config(rng);
            save_config(dir / "cfg.txt", cfg);
            CHECK(testutil::config_eq(load_config(dir / "cfg.txt"), cfg));
        }
    }

    SUBCASE("unknown keys are rejected") {
        write(dir / "bad.txt", "# format: config v1\nquat_rtol = 1e-6\n");
        CHECK_THROWS_AS(load_config(dir / "bad.txt"), ConfigError);
    }

    SUBCASE("unsorted temperature grid is rejected") {
        write(dir / "bad.txt", "# format: config v1\ntemps = 500,100\n");
        CHECK_THROWS_AS(load_config(dir / "bad.txt"), ConfigError);
    }

    SUBCASE("version mismatch is rejected") {
        write(dir / "bad.txt", "# format: config v2\n");
        CHECK_THROWS_AS(load_config(dir / "bad.txt"), ConfigError);
    }
}

TEST_CASE("levels round trip and errors") {
    const testutil::TempDir dir("levels");

    SUBCASE("round trip keeps labels, filter, provenance") {
        std::mt19937 rng(7);
        for (int i = 0; i < 20; ++i) {
            const LevelList levels = testutil::random_levels(rng);
            save_levels(dir / "levels.txt", levels);
            CHECK(testutil::levels_eq(load_levels(dir / "levels.txt"), levels));
        }
    }

    SUBCASE("generated lists are marked synthetic on disk") {
        save_levels(dir / "gen.txt", testutil::projectile_levels(3));
        const std::string text = testutil::slurp(dir / "gen.txt");
        CHECK(text.find("synthetic") != std::string::npos);
    }

    SUBCASE("parse errors carry line numbers") {
        write(dir / "bad.txt", "# format: levels-linear v1\n0 0 0.0\n1 1 oops\n");
        try {
            load_levels(dir / "bad.txt");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
    }

    SUBCASE("wrong format name is rejected") {
        write(dir / "bad.txt", "# format: rates v1\n");
        CHECK_THROWS_AS(load_levels(dir / "bad.txt"), DataError);
    }
}

TEST_CASE("cross-section files") {
    const testutil::TempDir dir("xsec");
    const LevelList target = testutil::target_levels(4);
    const LevelList projectile = testutil::projectile_levels(3);

    SUBCASE("round trip with absent points") {
        std::mt19937 rng(11);
        for (int i = 0; i < 20; ++i) {
            const CrossSectionTable table = testutil::random_xsec(rng);
            save_xsec(dir / "x.txt", table);
            CHECK(testutil::xsec_eq(load_xsec(dir / "x.txt", target, projectile), table));
        }
    }

    SUBCASE("canonical save is byte-stable") {
        std::mt19937 rng(13);
        const CrossSectionTable table = testutil::random_xsec(rng);
        save_xsec(dir / "a.txt", table);
        save_xsec(dir / "b.txt", load_xsec(dir / "a.txt", target, projectile));
        CHECK(testutil::slurp(dir / "a.txt") == testutil::slurp(dir / "b.txt"));
    }

    SUBCASE("empty body with a valid header loads as an empty table") {
        write(dir / "empty.txt",
              "# format: xsec v1\n# U_grid_cm1: 1.0e+01 1.0e+02\n");
        const CrossSectionTable table = load_xsec(dir / "empty.txt", target, projectile);
        CHECK(table.entries().empty());
        CHECK(table.grid().size() == 2);
    }

    SUBCASE("unknown state index names the line") {
        write(dir / "bad.txt",
              "# format: xsec v1\n# U_grid_cm1: 1.0e+01 1.0e+02\n0 0 99 0 1.0 2.0\n");
        try {
            load_xsec(dir / "bad.txt", target, projectile);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            const std::string msg = e.what();
            CHECK(msg.find(":3:") != std::string::npos);
            CHECK(msg.find("99") != std::string::npos);
        }
    }

    SUBCASE("negative cross sections and short rows are rejected") {
        write(dir / "neg.txt",
              "# format: xsec v1\n# U_grid_cm1: 1.0e+01 1.0e+02\n0 0 1 0 1.0 -2.0\n");
        CHECK_THROWS_AS(load_xsec(dir / "neg.txt", target, projectile), DataError);
        write(dir / "short.txt",
              "# format: xsec v1\n# U_grid_cm1: 1.0e+01 1.0e+02\n0 0 1 0 1.0\n");
        CHECK_THROWS_AS(load_xsec(dir / "short.txt", target, projectile), DataError);
    }

    SUBCASE("non-finite tokens are malformed, not data") {
        write(dir / "nan.txt",
              "# format: xsec v1\n# U_grid_cm1: 1.0e+01 1.0e+02\n0 0 1 0 nan 2.0\n");
        CHECK_THROWS_AS(load_xsec(dir / "nan.txt", target, projectile), DataError);
        write(dir / "inf.txt",
              "# format: xsec v1\n# U_grid_cm1: inf 1.0e+02\n");
        CHECK_THROWS_AS(load_xsec(dir / "inf.txt", target, projectile), DataError);
    }
}

TEST_CASE("rate, effective, thermal, weights, statemap round trips") {
    const testutil::TempDir dir("tables");
    std::mt19937 rng(17);

    SUBCASE("rates") {
        for (int i = 0; i < 20; ++i) {
            const RateTable table = testutil::random_rates(rng);
            save_rates(dir / "r.txt", table);
            CHECK(testutil::rates_eq(load_rates(dir / "r.txt"), table));
        }
    }
    SUBCASE("effective") {
        for (int i = 0; i < 20; ++i) {
            const EffectiveRateTable table = testutil::random_effective(rng);
            save_effective(dir / "e.txt", table);
            CHECK(testutil::effective_eq(load_effective(dir / "e.txt"), table));
        }
    }
    SUBCASE("thermal") {
        for (int i = 0; i < 20; ++i) {
            const ThermalRateTable table = testutil::random_thermal(rng);
            save_thermal(dir / "t.txt", table);
            CHECK(testutil::thermal_eq(load_thermal(dir / "t.txt"), table));
        }
    }
    SUBCASE("weights and statemap") {
        const std::map<int, double> weights = {{0, 0.5}, {2, 0.25}, {4, 0.25}};
        save_weights(dir / "w.txt", weights);
        const auto loaded = load_weights(dir / "w.txt");
        REQUIRE(loaded.size() == weights.size());
        for (const auto& [n2, w] : weights) CHECK(testutil::float_eq(loaded.at(n2), w));

        StateMap map;
        map.target = {{0, 3}, {1, 4}};
        map.projectile = {{2, 0}};
        save_statemap(dir / "m.txt", map);
        const StateMap loaded_map = load_statemap(dir / "m.txt");
        CHECK(loaded_map.target == map.target);
        CHECK(loaded_map.projectile == map.projectile);
    }
}

TEST_SUITE_END();
