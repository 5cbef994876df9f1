#include "collrates/dataio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "collrates/errors.hpp"

namespace collrates {

std::string format_float(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.7e", value);
    return buf;
}

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& msg) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

struct Reader {
    std::filesystem::path path;
    std::ifstream stream;
    int line_no = 0;

    explicit Reader(const std::filesystem::path& p) : path(p), stream(p) {
        if (!stream) throw DataError("cannot open " + p.string());
    }

    bool next(std::string& line) {
        if (!std::getline(stream, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    [[noreturn]] void error(const std::string& msg) const { fail(path, line_no, msg); }
};

// First line must be `# format: <name> v1`.
void check_format(Reader& r, const std::string& expected) {
    std::string line;
    if (!r.next(line)) r.error("empty file");
    std::istringstream is(line);
    std::string hash, word, name, version;
    is >> hash >> word >> name >> version;
    if (hash != "#" || word != "format:") r.error("missing `# format: <name> v1` header");
    if (name != expected) r.error("expected format '" + expected + "', found '" + name + "'");
    if (version != "v1") r.error("unsupported version '" + version + "' (this reader handles v1)");
}

bool is_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t");
    return pos == std::string::npos || line[pos] == '#';
}

// `# key: v1 v2 ...` -> values, or nullopt when the comment is not that key.
std::optional<std::vector<std::string>> directive(const std::string& line, const std::string& key) {
    std::istringstream is(line);
    std::string hash, word;
    is >> hash >> word;
    if (hash != "#" || word != key + ":") return std::nullopt;
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_double(Reader& r, const std::string& tok) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        r.error("malformed number '" + tok + "'");
    }
}

int parse_int(Reader& r, const std::string& tok) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        r.error("malformed integer '" + tok + "'");
    }
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<double> parse_grid(Reader& r, const std::vector<std::string>& toks) {
    std::vector<double> grid;
    grid.reserve(toks.size());
    for (const auto& t : toks) grid.push_back(parse_double(r, t));
    return grid;
}

void write_grid(std::ostream& os, const std::string& key, const std::vector<double>& grid) {
    os << "# " << key << ":";
    for (double v : grid) os << " " << format_float(v);
    os << "\n";
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot write " + path.string());
    return os;
}

}  // namespace

// ---------------------------------------------------------------------------
// levels

void save_levels(std::ostream& os, const LevelList& levels) {
    const bool asym = levels.species() == Species::asym_top;
    os << "# format: " << (asym ? "levels-asymtop" : "levels-linear") << " v1\n";
    os << "# symmetry_filter: " << to_string(levels.filter()) << "\n";
    os << "# energy_reference: " << to_string(levels.reference()) << "\n";
    if (levels.synthetic()) os << "# provenance: synthetic-rigid-rotor\n";
    os << "# columns: index j " << (asym ? "ka kc " : "") << "energy_cm1\n";
    for (const Level& lev : levels.levels()) {
        os << lev.index << " " << lev.j << " ";
        if (asym) os << lev.ka << " " << lev.kc << " ";
        os << format_float(lev.energy_cm1) << "\n";
    }
}

void save_levels(const std::filesystem::path& path, const LevelList& levels) {
    auto os = open_out(path);
    save_levels(os, levels);
}

LevelList load_levels(const std::filesystem::path& path) {
    Reader r(path);
    std::string line;
    if (!r.next(line)) r.error("empty file");
    Species species;
    {
        std::istringstream is(line);
        std::string hash, word, name, version;
        is >> hash >> word >> name >> version;
        if (hash != "#" || word != "format:") r.error("missing `# format: <name> v1` header");
        if (name == "levels-asymtop")
            species = Species::asym_top;
        else if (name == "levels-linear")
            species = Species::linear_rotor;
        else
            r.error("expected a levels format, found '" + name + "'");
        if (version != "v1") r.error("unsupported version '" + version + "'");
    }

    SymmetryFilter filter = SymmetryFilter::all;
    EnergyReference reference = EnergyReference::absolute;
    bool synthetic = false;
    std::vector<Level> levels;
    while (r.next(line)) {
        if (is_comment(line)) {
            if (auto v = directive(line, "symmetry_filter"); v && !v->empty()) {
                if ((*v)[0] == "all") filter = SymmetryFilter::all;
                else if ((*v)[0] == "para") filter = SymmetryFilter::para;
                else if ((*v)[0] == "ortho") filter = SymmetryFilter::ortho;
                else r.error("unknown symmetry filter '" + (*v)[0] + "'");
            } else if (auto e = directive(line, "energy_reference"); e && !e->empty()) {
                if ((*e)[0] == "absolute") reference = EnergyReference::absolute;
                else if ((*e)[0] == "per-symmetry") reference = EnergyReference::per_symmetry;
                else r.error("unknown energy reference '" + (*e)[0] + "'");
            } else if (auto p = directive(line, "provenance"); p) {
                synthetic = true;
            }
            continue;
        }
        const auto toks = tokens_of(line);
        const std::size_t expect = species == Species::asym_top ? 5 : 3;
        if (toks.size() != expect)
            r.error("expected " + std::to_string(expect) + " columns, found " +
                    std::to_string(toks.size()));
        Level lev;
        lev.index = parse_int(r, toks[0]);
        lev.j = parse_int(r, toks[1]);
        if (species == Species::asym_top) {
            lev.ka = parse_int(r, toks[2]);
            lev.kc = parse_int(r, toks[3]);
        }
        lev.energy_cm1 = parse_double(r, toks.back());
        if (lev.energy_cm1 < 0) r.error("negative level energy");
        levels.push_back(lev);
    }
    try {
        LevelList list(species, std::move(levels), filter, reference);
        if (synthetic) list.mark_synthetic();
        return list;
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// cross sections

void save_xsec(std::ostream& os, const CrossSectionTable& table) {
    os << "# format: xsec v1\n";
    write_grid(os, "U_grid_cm1", table.grid().values());
    os << "# columns: n1 n2 n1p n2p sigma_ang2(U1..UN), NA = no data\n";
    for (const auto& [key, sigma] : table.entries()) {
        os << key.initial.n1 << " " << key.initial.n2 << " " << key.final.n1 << " "
           << key.final.n2;
        for (double s : sigma) os << " " << (is_absent(s) ? std::string("NA") : format_float(s));
        os << "\n";
    }
}

void save_xsec(const std::filesystem::path& path, const CrossSectionTable& table) {
    auto os = open_out(path);
    save_xsec(os, table);
}

CrossSectionTable load_xsec(const std::filesystem::path& path, const LevelList& target,
                            const LevelList& projectile) {
    Reader r(path);
    check_format(r, "xsec");
    std::string line;
    std::optional<EnergyGrid> grid;
    std::optional<CrossSectionTable> table;
    while (r.next(line)) {
        if (is_comment(line)) {
            if (auto g = directive(line, "U_grid_cm1")) {
                if (table) r.error("duplicate `# U_grid_cm1:` header");
                try {
                    grid.emplace(parse_grid(r, *g));
                } catch (const DataError& e) {
                    r.error(e.what());
                }
                table.emplace(*grid, target, projectile);
            }
            continue;
        }
        if (!table) r.error("data row before `# U_grid_cm1:` header");
        const auto toks = tokens_of(line);
        if (toks.size() != 4 + grid->size())
            r.error("expected 4 indices + " + std::to_string(grid->size()) +
                    " cross sections, found " + std::to_string(toks.size()) + " fields");
        TransitionKey key;
        key.initial = {parse_int(r, toks[0]), parse_int(r, toks[1])};
        key.final = {parse_int(r, toks[2]), parse_int(r, toks[3])};
        std::vector<double> sigma;
        sigma.reserve(grid->size());
        for (std::size_t i = 4; i < toks.size(); ++i)
            sigma.push_back(toks[i] == "NA" ? absent_xsec : parse_double(r, toks[i]));
        try {
            table->add(key, std::move(sigma));
        } catch (const DataError& e) {
            r.error(e.what());
        }
    }
    if (!table) fail(path, r.line_no, "missing `# U_grid_cm1:` header");
    return std::move(*table);
}

// ---------------------------------------------------------------------------
// rate tables

void save_rates(std::ostream& os, const RateTable& table) {
    os << "# format: rates v1\n";
    write_grid(os, "T_grid_K", table.temps_k);
    os << "# columns: n1 n2 n1p n2p k_cm3_per_s(T1..TM)\n";
    for (const auto& [key, k] : table.entries) {
        os << key.initial.n1 << " " << key.initial.n2 << " " << key.final.n1 << " "
           << key.final.n2;
        for (double v : k) os << " " << format_float(v);
        os << "\n";
    }
}

void save_rates(const std::filesystem::path& path, const RateTable& table) {
    auto os = open_out(path);
    save_rates(os, table);
}

RateTable load_rates(const std::filesystem::path& path) {
    Reader r(path);
    check_format(r, "rates");
    RateTable table;
    std::string line;
    bool have_grid = false;
    while (r.next(line)) {
        if (is_comment(line)) {
            if (auto g = directive(line, "T_grid_K")) {
                table.temps_k = parse_grid(r, *g);
                have_grid = true;
            }
            continue;
        }
        if (!have_grid) r.error("data row before `# T_grid_K:` header");
        const auto toks = tokens_of(line);
        if (toks.size() != 4 + table.temps_k.size())
            r.error("expected 4 indices + " + std::to_string(table.temps_k.size()) +
                    " rates, found " + std::to_string(toks.size()) + " fields");
        TransitionKey key;
        key.initial = {parse_int(r, toks[0]), parse_int(r, toks[1])};
        key.final = {parse_int(r, toks[2]), parse_int(r, toks[3])};
        std::vector<double> k;
        for (std::size_t i = 4; i < toks.size(); ++i) {
            k.push_back(parse_double(r, toks[i]));
            if (k.back() < 0) r.error("negative rate coefficient");
        }
        if (!table.entries.emplace(key, std::move(k)).second)
            r.error("duplicate transition " + to_string(key));
    }
    if (!have_grid) fail(path, r.line_no, "missing `# T_grid_K:` header");
    return table;
}

// ---------------------------------------------------------------------------
// effective rates

void save_effective(std::ostream& os, const EffectiveRateTable& table) {
    os << "# format: effective-rates v1\n";
    write_grid(os, "T_grid_K", table.temps_k);
    os << "# columns: n1 n1p n2 k_cm3_per_s(T1..TM) flags\n";
    for (const auto& [key, entry] : table.entries) {
        os << key.n1 << " " << key.n1p << " " << key.n2;
        for (double v : entry.rates) os << " " << format_float(v);
        if (entry.complete) {
            os << " complete";
        } else {
            os << " partial:";
            for (std::size_t i = 0; i < entry.missing_n2p.size(); ++i)
                os << (i ? "," : "") << entry.missing_n2p[i];
        }
        os << "\n";
    }
}

void save_effective(const std::filesystem::path& path, const EffectiveRateTable& table) {
    auto os = open_out(path);
    save_effective(os, table);
}

EffectiveRateTable load_effective(const std::filesystem::path& path) {
    Reader r(path);
    check_format(r, "effective-rates");
    EffectiveRateTable table;
    std::string line;
    bool have_grid = false;
    while (r.next(line)) {
        if (is_comment(line)) {
            if (auto g = directive(line, "T_grid_K")) {
                table.temps_k = parse_grid(r, *g);
                have_grid = true;
            }
            continue;
        }
        if (!have_grid) r.error("data row before `# T_grid_K:` header");
        const auto toks = tokens_of(line);
        if (toks.size() != 4 + table.temps_k.size())
            r.error("expected 3 indices + " + std::to_string(table.temps_k.size()) +
                    " rates + flags, found " + std::to_string(toks.size()) + " fields");
        EffectiveKey key{parse_int(r, toks[0]), parse_int(r, toks[1]), parse_int(r, toks[2])};
        EffectiveEntry entry;
        for (std::size_t i = 3; i + 1 < toks.size(); ++i) {
            entry.rates.push_back(parse_double(r, toks[i]));
            if (entry.rates.back() < 0) r.error("negative effective rate");
        }
        const std::string& flags = toks.back();
        if (flags == "complete") {
            entry.complete = true;
        } else if (flags.rfind("partial:", 0) == 0) {
            entry.complete = false;
            std::string rest = flags.substr(8);
            std::istringstream is(rest);
            std::string item;
            while (std::getline(is, item, ','))
                if (!item.empty()) entry.missing_n2p.push_back(parse_int(r, item));
            if (entry.missing_n2p.empty()) r.error("partial flag without missing states");
        } else {
            r.error("unknown flags '" + flags + "'");
        }
        if (!table.entries.emplace(key, std::move(entry)).second)
            r.error("duplicate effective-rate row");
    }
    if (!have_grid) fail(path, r.line_no, "missing `# T_grid_K:` header");
    return table;
}

// ---------------------------------------------------------------------------
// thermal rates

void save_thermal(std::ostream& os, const ThermalRateTable& table) {
    os << "# format: thermal-rates v1\n";
    write_grid(os, "T_grid_K", table.temps_k);
    os << "# columns: n1 n1p sym k_cm3_per_s(T1..TM) contrib\n";
    for (const auto& [key, entry] : table.entries) {
        os << key.n1 << " " << key.n1p << " " << to_string(key.symmetry);
        for (double v : entry.rates) os << " " << format_float(v);
        os << " contrib=";
        for (std::size_t i = 0; i < entry.contributing_n2.size(); ++i)
            os << (i ? "," : "") << entry.contributing_n2[i];
        os << "\n";
    }
}

void save_thermal(const std::filesystem::path& path, const ThermalRateTable& table) {
    auto os = open_out(path);
    save_thermal(os, table);
}

ThermalRateTable load_thermal(const std::filesystem::path& path) {
    Reader r(path);
    check_format(r, "thermal-rates");
    ThermalRateTable table;
    std::string line;
    bool have_grid = false;
    while (r.next(line)) {
        if (is_comment(line)) {
            if (auto g = directive(line, "T_grid_K")) {
                table.temps_k = parse_grid(r, *g);
                have_grid = true;
            }
            continue;
        }
        if (!have_grid) r.error("data row before `# T_grid_K:` header");
        const auto toks = tokens_of(line);
        const bool has_contrib = !toks.empty() && toks.back().rfind("contrib=", 0) == 0;
        const std::size_t expect = 3 + table.temps_k.size() + (has_contrib ? 1 : 0);
        if (toks.size() != expect)
            r.error("unexpected field count " + std::to_string(toks.size()));
        ThermalKey key;
        key.n1 = parse_int(r, toks[0]);
        key.n1p = parse_int(r, toks[1]);
        if (toks[2] == "para") key.symmetry = Symmetry::para;
        else if (toks[2] == "ortho") key.symmetry = Symmetry::ortho;
        else r.error("unknown symmetry '" + toks[2] + "'");
        ThermalEntry entry;
        for (std::size_t i = 3; i < 3 + table.temps_k.size(); ++i) {
            entry.rates.push_back(parse_double(r, toks[i]));
            if (entry.rates.back() < 0) r.error("negative thermal rate");
        }
        if (has_contrib) {
            std::istringstream is(toks.back().substr(8));
            std::string item;
            while (std::getline(is, item, ','))
                if (!item.empty()) entry.contributing_n2.push_back(parse_int(r, item));
        }
        if (!table.entries.emplace(key, std::move(entry)).second)
            r.error("duplicate thermal-rate row");
    }
    if (!have_grid) fail(path, r.line_no, "missing `# T_grid_K:` header");
    return table;
}

// ---------------------------------------------------------------------------
// weights, state maps

void save_weights(const std::filesystem::path& path, const std::map<int, double>& weights) {
    auto os = open_out(path);
    os << "# format: weights v1\n";
    os << "# columns: n2 weight\n";
    for (const auto& [n2, w] : weights) os << n2 << " " << format_float(w) << "\n";
}

std::map<int, double> load_weights(const std::filesystem::path& path) {
    Reader r(path);
    check_format(r, "weights");
    std::map<int, double> out;
    std::string line;
    while (r.next(line)) {
        if (is_comment(line)) continue;
        const auto toks = tokens_of(line);
        if (toks.size() != 2) r.error("expected `n2 weight`");
        const int n2 = parse_int(r, toks[0]);
        const double w = parse_double(r, toks[1]);
        if (w < 0) r.error("negative weight");
        if (!out.emplace(n2, w).second) r.error("duplicate weight for state " + toks[0]);
    }
    return out;
}

void save_statemap(const std::filesystem::path& path, const StateMap& map) {
    auto os = open_out(path);
    os << "# format: statemap v1\n";
    os << "# columns: species from to\n";
    for (const auto& [from, to] : map.target) os << "target " << from << " " << to << "\n";
    for (const auto& [from, to] : map.projectile) os << "projectile " << from << " " << to << "\n";
}

StateMap load_statemap(const std::filesystem::path& path) {
    Reader r(path);
    check_format(r, "statemap");
    StateMap out;
    std::string line;
    while (r.next(line)) {
        if (is_comment(line)) continue;
        const auto toks = tokens_of(line);
        if (toks.size() != 3) r.error("expected `species from to`");
        std::map<int, int>* dest = nullptr;
        if (toks[0] == "target") dest = &out.target;
        else if (toks[0] == "projectile") dest = &out.projectile;
        else r.error("unknown species '" + toks[0] + "'");
        if (!dest->emplace(parse_int(r, toks[1]), parse_int(r, toks[2])).second)
            r.error("duplicate mapping for index " + toks[1]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// config

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_float(v[i]);
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

void save_config(const std::filesystem::path& path, const PipelineConfig& cfg) {
    auto os = open_out(path);
    os << "# format: config v1\n";
    os << "kb_cm1_per_k = " << format_float(cfg.kb_cm1_per_k) << "\n";
    os << "hc_erg_cm = " << format_float(cfg.hc_erg_cm) << "\n";
    os << "amu_g = " << format_float(cfg.amu_g) << "\n";
    os << "ang2_to_cm2 = " << format_float(cfg.ang2_to_cm2) << "\n";
    os << "mu_u = " << format_float(cfg.mu_u) << "\n";
    os << "quad_rtol = " << format_float(cfg.quad_rtol) << "\n";
    os << "max_refinements = " << cfg.max_refinements << "\n";
    os << "weight_floor = " << format_float(cfg.weight_floor) << "\n";
    os << "missing_reverse_policy = " << to_string(cfg.missing_reverse) << "\n";
    os << "missing_final_policy = " << to_string(cfg.missing_final) << "\n";
    os << "missing_initial_policy = " << to_string(cfg.missing_initial) << "\n";
    os << "temps = " << join_doubles(cfg.temps_k) << "\n";
    os << "included_j2 = " << (cfg.included_j2.empty() ? "all" : join_ints(cfg.included_j2))
       << "\n";
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw ConfigError("cannot open " + path.string());
    std::string line;
    int line_no = 0;
    const auto cfg_fail = [&](const std::string& msg) -> void {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };

    if (!std::getline(stream, line)) cfg_fail("empty file");
    ++line_no;
    {
        std::istringstream is(line);
        std::string hash, word, name, version;
        is >> hash >> word >> name >> version;
        if (hash != "#" || word != "format:" || name != "config")
            cfg_fail("missing `# format: config v1` header");
        if (version != "v1") cfg_fail("unsupported version '" + version + "'");
    }

    PipelineConfig cfg;
    while (std::getline(stream, line)) {
        ++line_no;
        if (is_comment(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) cfg_fail("expected `key = value`");
        const auto trim = [](const std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) cfg_fail("expected `key = value`");

        const auto as_double = [&]() {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                cfg_fail("malformed number '" + value + "'");
                return 0.0;  // unreachable
            }
        };
        const auto split = [&](auto parse) {
            std::istringstream is(value);
            std::string item;
            using T = decltype(parse(std::string{}));
            std::vector<T> out;
            while (std::getline(is, item, ',')) out.push_back(parse(item));
            return out;
        };

        if (key == "kb_cm1_per_k") cfg.kb_cm1_per_k = as_double();
        else if (key == "hc_erg_cm") cfg.hc_erg_cm = as_double();
        else if (key == "amu_g") cfg.amu_g = as_double();
        else if (key == "ang2_to_cm2") cfg.ang2_to_cm2 = as_double();
        else if (key == "mu_u") cfg.mu_u = as_double();
        else if (key == "quad_rtol") cfg.quad_rtol = as_double();
        else if (key == "max_refinements") cfg.max_refinements = static_cast<int>(as_double());
        else if (key == "weight_floor") cfg.weight_floor = as_double();
        else if (key == "missing_reverse_policy")
            cfg.missing_reverse = missing_reverse_policy_from_string(value);
        else if (key == "missing_final_policy")
            cfg.missing_final = missing_final_policy_from_string(value);
        else if (key == "missing_initial_policy")
            cfg.missing_initial = missing_initial_policy_from_string(value);
        else if (key == "temps")
            cfg.temps_k = split([&](const std::string& s) {
                try {
                    return std::stod(s);
                } catch (const std::exception&) {
                    cfg_fail("malformed temperature '" + s + "'");
                    return 0.0;
                }
            });
        else if (key == "included_j2") {
            if (value == "all")
                cfg.included_j2.clear();
            else
                cfg.included_j2 = split([&](const std::string& s) {
                    try {
                        return std::stoi(s);
                    } catch (const std::exception&) {
                        cfg_fail("malformed index '" + s + "'");
                        return 0;
                    }
                });
        } else {
            cfg_fail("unknown config key '" + key + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// smoothness report

void save_smoothness(const std::filesystem::path& path,
                     const std::vector<SmoothnessRecord>& records) {
    auto os = open_out(path);
    os << "# format: smoothness v1\n";
    os << "# columns: n1 n2 n1p n2p T_K n_points interp clamped tail_log_slope min_value\n";
    for (const auto& rec : records) {
        os << rec.key.initial.n1 << " " << rec.key.initial.n2 << " " << rec.key.final.n1 << " "
           << rec.key.final.n2 << " " << format_float(rec.temperature_k) << " " << rec.n_points
           << " " << (rec.log_interpolation ? "log" : "linear") << " "
           << rec.clamped_scan_points << " " << format_float(rec.tail_log_slope) << " "
           << format_float(rec.min_scan_value) << "\n";
    }
}

}  // namespace collrates
