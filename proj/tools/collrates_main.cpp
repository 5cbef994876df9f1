// Command-line front end: one subcommand per pipeline stage so external data
// can be spliced in at any point (state-to-state -> effective -> thermal).
//
// Exit codes: 0 success, 1 data error, 2 config/usage error, 3 numerical
// failure. Warnings go to stderr, summaries to stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collrates/dataio.hpp"
#include "collrates/errors.hpp"

namespace {

using namespace collrates;

struct CommandOutcome {
    int exit_code = 0;
    int errors = 0;
    std::vector<std::string> summary;
    std::vector<std::string> warnings;
};

std::vector<double> parse_temps(const std::string& spec) {
    std::vector<double> out;
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("malformed temperature '" + item + "' in --temps");
        }
    }
    if (out.empty()) throw ConfigError("--temps is empty");
    return out;
}

PipelineConfig config_from(const std::string& path) {
    if (path.empty()) return {};
    return load_config(path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot write " + path);
    return os;
}

// ---------------------------------------------------------------------------

struct RatesArgs {
    std::string xsec, levels_target, levels_projectile, config, temps, report, out;
    int jobs = 1;
    bool strict = false;
};

CommandOutcome run_rates(const RatesArgs& args) {
    CommandOutcome outcome;
    PipelineConfig cfg = config_from(args.config);
    if (!args.temps.empty()) cfg.temps_k = parse_temps(args.temps);
    cfg.validate();
    if (args.jobs < 1) throw ConfigError("--jobs must be >= 1");

    const LevelList target = load_levels(args.levels_target);
    const LevelList projectile = load_levels(args.levels_projectile);
    const CrossSectionTable table = load_xsec(args.xsec, target, projectile);

    std::vector<SmoothnessRecord> smoothness;
    const RateBatchResult result =
        rate_table(table, cfg.temps_k, cfg, args.jobs,
                   args.report.empty() ? nullptr : &smoothness);

    save_rates(std::filesystem::path(args.out), result.table);
    if (!args.report.empty()) save_smoothness(args.report, smoothness);

    const PairInventory inv = pair_inventory(table);
    outcome.summary.push_back("transitions in: " + std::to_string(table.entries().size()) +
                              " (" + std::to_string(inv.complete_pairs) + " complete pairs, " +
                              std::to_string(inv.one_sided) + " one-sided, " +
                              std::to_string(inv.elastic) + " elastic)");
    outcome.summary.push_back("rates out: " + std::to_string(result.table.entries.size()) +
                              " rows x " + std::to_string(cfg.temps_k.size()) +
                              " temperatures -> " + args.out);
    outcome.warnings = result.warnings;

    int data_failures = 0, numerical_failures = 0;
    for (const auto& f : result.failures) {
        const bool is_data = f.kind == RateFailure::Kind::data;
        (is_data ? data_failures : numerical_failures)++;
        outcome.warnings.push_back("failed pair " + to_string(f.key) + ": " + f.reason);
    }
    if (data_failures > 0) {
        outcome.errors = data_failures;
        outcome.exit_code = 1;
    } else if (numerical_failures > 0 && args.strict) {
        outcome.errors = numerical_failures;
        outcome.exit_code = 3;
    }
    if (!result.failures.empty())
        outcome.summary.push_back("failed pairs: " + std::to_string(result.failures.size()));
    return outcome;
}

// ---------------------------------------------------------------------------

struct EffectiveArgs {
    std::string rates, levels_projectile, config, policy, out;
};

CommandOutcome run_effective(const EffectiveArgs& args) {
    CommandOutcome outcome;
    PipelineConfig cfg = config_from(args.config);
    if (!args.policy.empty()) cfg.missing_final = missing_final_policy_from_string(args.policy);
    cfg.validate();

    const RateTable rates = load_rates(args.rates);
    const LevelList projectile = load_levels(args.levels_projectile);
    const EffectiveRateTable eff = effective_rates(rates, projectile, cfg.missing_final, cfg);
    save_effective(std::filesystem::path(args.out), eff);

    int partial = 0;
    for (const auto& [key, entry] : eff.entries)
        if (!entry.complete) ++partial;
    outcome.summary.push_back("effective rates: " + std::to_string(eff.entries.size()) +
                              " rows (" + std::to_string(partial) + " partial) -> " + args.out);
    if (partial > 0)
        outcome.warnings.push_back(std::to_string(partial) +
                                   " entries are partial sums (missing final projectile states)");
    return outcome;
}

// ---------------------------------------------------------------------------

struct ThermalArgs {
    std::string effective, levels_projectile, symmetry, policy, weights, config, temps, out;
};

CommandOutcome run_thermal(const ThermalArgs& args) {
    CommandOutcome outcome;
    PipelineConfig cfg = config_from(args.config);
    if (!args.policy.empty()) cfg.missing_initial = missing_initial_policy_from_string(args.policy);

    Symmetry symmetry;
    if (args.symmetry == "para") symmetry = Symmetry::para;
    else if (args.symmetry == "ortho") symmetry = Symmetry::ortho;
    else throw ConfigError("--symmetry must be para or ortho");

    const EffectiveRateTable eff = load_effective(args.effective);
    const LevelList projectile = load_levels(args.levels_projectile);
    const std::vector<double> temps =
        args.temps.empty() ? eff.temps_k : parse_temps(args.temps);

    ThermalRateTable thermal;
    if (args.weights.empty()) {
        thermal = thermal_rates(eff, projectile, symmetry, temps, cfg.missing_initial, cfg);
    } else {
        const auto weights = load_weights(args.weights);
        thermal = thermal_rates_custom(eff, weights, symmetry, projectile, temps,
                                       cfg.missing_initial, cfg);
        outcome.warnings.push_back("using custom weights from " + args.weights +
                                   " instead of Boltzmann averaging");
    }
    save_thermal(std::filesystem::path(args.out), thermal);
    outcome.summary.push_back("thermal rates: " + std::to_string(thermal.entries.size()) +
                              " rows (" + to_string(symmetry) + ", policy " +
                              to_string(cfg.missing_initial) + ") -> " + args.out);
    return outcome;
}

// ---------------------------------------------------------------------------

struct PopulationsArgs {
    std::string levels, temps, mode = "combined", config, out;
};

CommandOutcome run_populations(const PopulationsArgs& args) {
    CommandOutcome outcome;
    const PipelineConfig cfg = config_from(args.config);
    const LevelList levels = load_levels(args.levels);
    const std::vector<double> temps = parse_temps(args.temps);
    PopulationMode mode;
    if (args.mode == "combined") mode = PopulationMode::combined;
    else if (args.mode == "per-symmetry") mode = PopulationMode::per_symmetry;
    else throw ConfigError("--mode must be combined or per-symmetry");

    std::vector<std::vector<double>> w;
    w.reserve(temps.size());
    for (double t : temps) w.push_back(boltzmann_populations(levels, t, mode, cfg.kb_cm1_per_k));

    auto os = open_out(args.out);
    os << "# format: populations v1\n";
    os << "# mode: " << args.mode << "\n";
    os << "# T_grid_K:";
    for (double t : temps) os << " " << format_float(t);
    os << "\n# columns: index j sym w(T1..TM)\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Level& lev = levels.levels()[i];
        os << lev.index << " " << lev.j << " "
           << to_string(classify_symmetry(lev, levels.species()));
        for (std::size_t t = 0; t < temps.size(); ++t) os << " " << format_float(w[t][i]);
        os << "\n";
    }
    outcome.summary.push_back("populations: " + std::to_string(levels.size()) + " states x " +
                              std::to_string(temps.size()) + " temperatures -> " + args.out);
    return outcome;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string tables, out_prefix;
    std::vector<std::string> maps;
    double factor = 2.0;
    double threshold = 1e-11;
};

CommandOutcome run_compare(const CompareArgs& args) {
    CommandOutcome outcome;
    std::vector<std::string> paths;
    {
        std::istringstream is(args.tables);
        std::string item;
        while (std::getline(is, item, ',')) paths.push_back(item);
    }
    if (paths.size() != 2 && paths.size() != 3)
        throw ConfigError("--tables needs 2 or 3 comma-separated rate files");

    std::vector<RateTable> tables;
    tables.reserve(paths.size());
    for (const auto& p : paths) tables.push_back(load_rates(p));

    // --map B:file remaps the indices of table B (A, B or C) before matching.
    for (const auto& spec : args.maps) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos || colon != 1)
            throw ConfigError("--map expects <table letter>:<file>, e.g. B:map.txt");
        const std::size_t idx = static_cast<std::size_t>(spec[0] - 'A');
        if (idx >= tables.size()) throw ConfigError("--map table letter out of range");
        tables[idx] = apply_state_map(tables[idx], load_statemap(spec.substr(colon + 1)));
    }

    std::vector<const RateTable*> ptrs;
    ptrs.reserve(tables.size());
    for (const auto& t : tables) ptrs.push_back(&t);
    const std::vector<TransitionKey> matched = match_tables(ptrs);
    if (matched.empty())
        outcome.warnings.push_back("no transitions are present in every table");
    outcome.summary.push_back("matched transitions: " + std::to_string(matched.size()));

    // agreement.csv: table A against reference B at every common temperature
    const std::vector<double>& temps = tables[0].temps_k;
    {
        auto os = open_out(args.out_prefix + "agreement.csv");
        os << "# reference: table B (" << paths[1] << ")\n";
        os << "T,F,within,total,mean_pct_diff,excluded\n";
        for (double t : temps) {
            const AgreementEntry entry =
                factor_stats(tables[0], tables[1], t, args.factor, args.threshold);
            os << format_float(t) << "," << format_float(entry.factor) << "," << entry.within
               << "," << entry.total << "," << format_float(entry.mean_pct_diff) << ","
               << entry.excluded << "\n";
        }
        outcome.summary.push_back("agreement stats -> " + args.out_prefix + "agreement.csv");
    }

    if (tables.size() == 3) {
        auto os = open_out(args.out_prefix + "dalitz.csv");
        os << "key,T,zeta_a,zeta_b,zeta_c\n";
        int skipped = 0;
        for (double t : temps) {
            for (const TransitionKey& key : matched) {
                const auto at = [&](const RateTable& tab) {
                    const auto it = std::find(tab.temps_k.begin(), tab.temps_k.end(), t);
                    if (it == tab.temps_k.end())
                        throw DataError("temperature " + std::to_string(t) +
                                        " K missing from a compared table");
                    return tab.entries.at(key)[static_cast<std::size_t>(
                        it - tab.temps_k.begin())];
                };
                const double ka = at(tables[0]), kb = at(tables[1]), kc = at(tables[2]);
                if (ka + kb + kc == 0) {
                    ++skipped;
                    continue;
                }
                const DalitzPoint p = dalitz(ka, kb, kc);
                os << to_string(key) << "," << format_float(t) << "," << format_float(p.zeta_a)
                   << "," << format_float(p.zeta_b) << "," << format_float(p.zeta_c) << "\n";
            }
        }
        if (skipped > 0)
            outcome.warnings.push_back(std::to_string(skipped) +
                                       " all-zero triples skipped in the Dalitz output");
        outcome.summary.push_back("dalitz coordinates -> " + args.out_prefix + "dalitz.csv");
    }
    return outcome;
}

// ---------------------------------------------------------------------------

struct ScalingArgs {
    std::string effective, out;
    int reference_j2 = 0;
};

CommandOutcome run_scaling(const ScalingArgs& args) {
    CommandOutcome outcome;
    const EffectiveRateTable eff = load_effective(args.effective);
    const ScalingReport report = scaling_ratios(eff, args.reference_j2);

    auto os = open_out(args.out);
    os << "n1,n1p,T,j2,R\n";
    for (const ScalingRow& row : report.rows) {
        os << row.n1 << "," << row.n1p << "," << format_float(row.temperature_k) << "," << row.j2
           << "," << format_float(row.ratio) << "\n";
    }
    for (const auto& [n1, n1p] : report.skipped)
        outcome.warnings.push_back("transition " + std::to_string(n1) + "->" +
                                   std::to_string(n1p) + " skipped: reference j2 = " +
                                   std::to_string(args.reference_j2) + " absent or zero");
    outcome.summary.push_back("scaling ratios: " + std::to_string(report.rows.size()) +
                              " rows -> " + args.out);
    return outcome;
}

int finish(const CommandOutcome& outcome) {
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& s : outcome.summary) std::cout << s << "\n";
    return outcome.exit_code;
}

}  // namespace

namespace {

int cli_main(int argc, char** argv) {
    CLI::App app{"collisional rate-coefficient pipeline"};
    app.require_subcommand(1);

    RatesArgs rates_args;
    auto* rates = app.add_subcommand(
        "rates", "state-to-state rate coefficients from cross sections");
    rates->add_option("--xsec", rates_args.xsec, "cross-section file")->required();
    rates->add_option("--levels-target", rates_args.levels_target, "target level file")
        ->required();
    rates->add_option("--levels-projectile", rates_args.levels_projectile,
                      "projectile level file")->required();
    rates->add_option("--config", rates_args.config, "pipeline config file");
    rates->add_option("--temps", rates_args.temps, "comma-separated temperatures, K");
    rates->add_option("--jobs", rates_args.jobs, "worker threads (output independent of N)");
    rates->add_option("--report", rates_args.report, "write per-transition smoothness report");
    rates->add_flag("--strict", rates_args.strict, "numerical failures become exit code 3");
    rates->add_option("--out", rates_args.out, "output rate file")->required();

    EffectiveArgs eff_args;
    auto* effective = app.add_subcommand(
        "effective", "sum state-to-state rates over final projectile states");
    effective->add_option("--rates", eff_args.rates, "state-to-state rate file")->required();
    effective->add_option("--levels-projectile", eff_args.levels_projectile,
                          "projectile level file")->required();
    effective->add_option("--policy", eff_args.policy, "flag | strict");
    effective->add_option("--config", eff_args.config, "pipeline config file");
    effective->add_option("--out", eff_args.out, "output effective-rate file")->required();

    ThermalArgs thermal_args;
    auto* thermal = app.add_subcommand(
        "thermal", "Boltzmann-average effective rates over initial projectile states");
    thermal->add_option("--effective", thermal_args.effective, "effective-rate file")->required();
    thermal->add_option("--levels-projectile", thermal_args.levels_projectile,
                        "projectile level file")->required();
    thermal->add_option("--symmetry", thermal_args.symmetry, "para | ortho")->required();
    thermal->add_option("--policy", thermal_args.policy,
                        "error | renormalize | substitute-highest | zero");
    thermal->add_option("--weights", thermal_args.weights,
                        "custom weights file (bypasses Boltzmann averaging)");
    thermal->add_option("--temps", thermal_args.temps, "comma-separated temperatures, K");
    thermal->add_option("--config", thermal_args.config, "pipeline config file");
    thermal->add_option("--out", thermal_args.out, "output thermal-rate file")->required();

    PopulationsArgs pop_args;
    auto* populations = app.add_subcommand("populations", "Boltzmann populations of a level list");
    populations->add_option("--levels", pop_args.levels, "level file")->required();
    populations->add_option("--temps", pop_args.temps, "comma-separated temperatures, K")
        ->required();
    populations->add_option("--mode", pop_args.mode, "combined | per-symmetry");
    populations->add_option("--config", pop_args.config, "pipeline config file");
    populations->add_option("--out", pop_args.out, "output populations file")->required();

    CompareArgs cmp_args;
    auto* compare = app.add_subcommand("compare", "database agreement statistics");
    compare->add_option("--tables", cmp_args.tables, "2 or 3 comma-separated rate files (A,B[,C])")
        ->required();
    compare->add_option("--map", cmp_args.maps,
                        "state map per table, e.g. --map B:map.txt (repeatable)");
    compare->add_option("--factor", cmp_args.factor, "agreement factor F (default 2)");
    compare->add_option("--threshold", cmp_args.threshold,
                        "intensity cut on the reference rates, cm^3/s (default 1e-11)");
    compare->add_option("--out-prefix", cmp_args.out_prefix, "prefix for output CSV files")
        ->required();

    ScalingArgs scaling_args;
    auto* scaling = app.add_subcommand(
        "scaling", "effective rates relative to a reference projectile state");
    scaling->add_option("--effective", scaling_args.effective, "effective-rate file")->required();
    scaling->add_option("--reference-j2", scaling_args.reference_j2,
                        "reference projectile state index (0 for para, 1 for ortho)")
        ->required();
    scaling->add_option("--out", scaling_args.out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rates->parsed()) return finish(run_rates(rates_args));
        if (effective->parsed()) return finish(run_effective(eff_args));
        if (thermal->parsed()) return finish(run_thermal(thermal_args));
        if (populations->parsed()) return finish(run_populations(pop_args));
        if (compare->parsed()) return finish(run_compare(cmp_args));
        if (scaling->parsed()) return finish(run_scaling(scaling_args));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return cli_main(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 3;
    } catch (...) {
        std::cerr << "fatal: unknown error\n";
        return 3;
    }
}
