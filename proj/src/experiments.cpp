#include "sawtree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sawtree/bridges.hpp"
#include "sawtree/conductance.hpp"
#include "sawtree/errors.hpp"
#include "sawtree/gallery.hpp"
#include "sawtree/level_profile.hpp"
#include "sawtree/rng.hpp"
#include "sawtree/saw_tree.hpp"
#include "sawtree/svg.hpp"
#include "sawtree/tree_spec.hpp"
#include "sawtree/walk_engine.hpp"

namespace sawtree {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << content;
    if (!out) throw InvalidInput("write failed for '" + path + "'");
}

double lower_median(std::vector<double> v) {
    if (v.empty()) throw InvalidInput("median of nothing");
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

struct DefaultEntry {
    const char* id;
    std::vector<std::pair<const char*, const char*>> params;
};

const std::vector<DefaultEntry>& default_table() {
    static const std::vector<DefaultEntry> table = {
        {"continuity-scan",
         {{"lambda-max", "2.0"},
          {"lambda-min", "0.6"},
          {"lambda-step", "0.02"},
          {"level", "40"},
          {"tree", "uniform:2"}}},
        {"discontinuity-demo",
         {{"lambda-max", "0.9"},
          {"lambda-min", "0.7"},
          {"lambda-step", "0.01"},
          {"level", "20000"},
          {"xa", "7/5"},
          {"xb", "5/4"}}},
        {"frontispiece",
         {{"domain", "upperhalfplane"},
          {"lambda", "1.0"},
          {"pruned", "true"},
          {"seed", "20260819"},
          {"steps", "10000"}}},
        {"lambda-cascade", {{"m-max", "10"}}},
        {"line-returns",
         {{"checkpoint", "1000"},
          {"domain", "halfplane"},
          {"lambda", "1.0"},
          {"pruned", "true"},
          {"runs", "200"},
          {"seed", "12345"},
          {"steps", "10000"}}},
    };
    return table;
}

}  // namespace

std::vector<std::string> ExperimentConfig::known_ids() {
    std::vector<std::string> out;
    for (const auto& e : default_table()) out.emplace_back(e.id);
    return out;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& id) {
    for (const auto& e : default_table()) {
        if (id == e.id) {
            ExperimentConfig cfg;
            cfg.id_ = id;
            for (const auto& [k, v] : e.params) cfg.params_.emplace_back(k, v);
            std::sort(cfg.params_.begin(), cfg.params_.end());
            return cfg;
        }
    }
    throw InvalidInput("unknown experiment '" + id + "'");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidInput("config line is not key=value: '" + line + "'");
        entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    std::string id;
    for (const auto& [k, v] : entries)
        if (k == "experiment") id = v;
    if (id.empty()) throw InvalidInput("config has no experiment= line");
    ExperimentConfig cfg = defaults(id);
    for (const auto& [k, v] : entries)
        if (k != "experiment") cfg.set(k, v);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : params_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    throw InvalidInput("unknown parameter '" + key + "' for experiment '" + id_ + "'");
}

const std::string& ExperimentConfig::get(const std::string& key) const {
    for (const auto& [k, v] : params_)
        if (k == key) return v;
    throw InvalidInput("missing parameter '" + key + "'");
}

double ExperimentConfig::get_double(const std::string& key) const {
    const std::string& s = get(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw InvalidInput("");
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("parameter '" + key + "' is not a number: '" + s + "'");
    }
}

std::int64_t ExperimentConfig::get_int(const std::string& key) const {
    const std::string& s = get(key);
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw InvalidInput("");
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("parameter '" + key + "' is not an integer: '" + s + "'");
    }
}

bool ExperimentConfig::get_bool(const std::string& key) const {
    const std::string& s = get(key);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw InvalidInput("parameter '" + key + "' is not a boolean: '" + s + "'");
}

std::string ExperimentConfig::canonical() const {
    std::string out = "experiment=" + id_ + "\n";
    for (const auto& [k, v] : params_) out += k + "=" + v + "\n";
    return out;
}

std::string ExperimentConfig::hash_hex() const {
    const std::uint64_t h = fnv1a64(canonical());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

using Emit = std::function<void(const std::string&, const std::string&)>;

void run_continuity_scan(const ExperimentConfig& cfg, const Emit& emit, json& report) {
    auto tree = make_tree(cfg.get("tree"));
    const double lo = cfg.get_double("lambda-min");
    const double hi = cfg.get_double("lambda-max");
    const double step = cfg.get_double("lambda-step");
    const auto level = static_cast<std::uint32_t>(cfg.get_int("level"));
    if (!(step > 0.0) || hi < lo) throw InvalidInput("bad lambda grid");
    std::string csv = "lambda,lower,upper\n";
    double prev = 0.0, max_delta = 0.0;
    int rows = 0;
    for (int i = 0;; ++i) {
        const double lam = lo + i * step;
        if (lam > hi + 0.5 * step) break;
        const ConductanceInterval iv = conductance_interval(*tree, lam, level);
        csv += fmt(lam) + "," + fmt(iv.lower) + "," + fmt(iv.upper) + "\n";
        if (rows) max_delta = std::max(max_delta, std::abs(iv.upper - prev));
        prev = iv.upper;
        ++rows;
    }
    emit("continuity-scan.csv", csv);
    report["rows"] = rows;
    report["max_adjacent_delta"] = max_delta;
}

void run_discontinuity_demo(const ExperimentConfig& cfg, const Emit& emit, json& report) {
    const GreedyFloorProfile side_a(parse_rational(cfg.get("xa")));
    const DoubledSquaresProfile side_b(parse_rational(cfg.get("xb")));
    const double lo = cfg.get_double("lambda-min");
    const double hi = cfg.get_double("lambda-max");
    const double step = cfg.get_double("lambda-step");
    const auto level = static_cast<std::uint32_t>(cfg.get_int("level"));
    if (!(step > 0.0) || hi < lo) throw InvalidInput("bad lambda grid");
    const double critical = 1.0 / to_double(side_b.growth());

    // The join's branches are parallel: C = lambda/(1+R_A) + lambda/(1+R_B)
    // exactly, with each side's resistance bracketed by its closed form.
    std::string csv = "lambda,lower,upper,b_branch_lower,b_branch_upper\n";
    std::vector<double> lams, lows, ups, blows, bups;
    for (int i = 0;; ++i) {
        const double lam = lo + i * step;
        if (lam > hi + 0.5 * step) break;
        const RealInterval ra = ss_resistance_interval_fast(side_a, lam, level);
        const RealInterval rb = ss_resistance_interval_fast(side_b, lam, level);
        const auto branch = [lam](const RealInterval& r) {
            return RealInterval{std::isinf(r.hi) ? 0.0 : lam / (1.0 + r.hi),
                                lam / (1.0 + r.lo)};
        };
        const RealInterval ba = branch(ra), bb = branch(rb);
        lams.push_back(lam);
        lows.push_back(ba.lo + bb.lo);
        ups.push_back(ba.hi + bb.hi);
        blows.push_back(bb.lo);
        bups.push_back(bb.hi);
        csv += fmt(lam) + "," + fmt(lows.back()) + "," + fmt(ups.back()) + "," +
               fmt(bb.lo) + "," + fmt(bb.hi) + "\n";
    }
    emit("discontinuity-demo.csv", csv);
    // Certified window: one grid point strictly below the doubled side's
    // critical bias against one strictly above.
    std::ptrdiff_t below = -1, above = -1;
    for (std::size_t i = 0; i < lams.size(); ++i) {
        if (lams[i] < critical - 1e-9) below = static_cast<std::ptrdiff_t>(i);
        if (above < 0 && lams[i] > critical + 1e-9) above = static_cast<std::ptrdiff_t>(i);
    }
    report["critical"] = critical;
    report["rows"] = static_cast<int>(lams.size());
    if (below >= 0 && above >= 0) {
        const auto b = static_cast<std::size_t>(below), a = static_cast<std::size_t>(above);
        report["window"] = {lams[b], lams[a]};
        report["certified_rise"] = lows[a] - ups[b];
        report["doubled_branch_off_upper"] = bups[b];
        report["doubled_branch_on_lower"] = blows[a];
    }
}

void run_line_returns(const ExperimentConfig& cfg, const Emit& emit, json& report) {
    const DomainSpec domain = DomainSpec::parse(cfg.get("domain"));
    const bool pruned = cfg.get_bool("pruned");
    const double lambda = cfg.get_double("lambda");
    const auto steps = static_cast<std::uint64_t>(cfg.get_int("steps"));
    const auto runs = static_cast<std::uint32_t>(cfg.get_int("runs"));
    const auto checkpoint = static_cast<std::uint64_t>(cfg.get_int("checkpoint"));
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
    if (runs == 0) throw InvalidInput("need at least one run");
    std::string csv = "run,visits_checkpoint,visits_total,max_depth\n";
    std::vector<double> at_checkpoint, at_end;
    std::uint32_t with_visit = 0;
    for (std::uint32_t r = 0; r < runs; ++r) {
        SawTree tree(domain, pruned);
        const WalkerTrace trace =
            simulate(tree, lambda, steps, substream_seed(seed, "line-returns", r));
        std::uint64_t head_count = 0;
        const std::size_t upto = std::min<std::size_t>(checkpoint, trace.heads.size() - 1);
        for (std::size_t i = 1; i <= upto; ++i)
            if (trace.heads[i].y == 0) ++head_count;
        const std::uint64_t total = line_visit_count(trace);
        if (total >= 1) ++with_visit;
        at_checkpoint.push_back(static_cast<double>(head_count));
        at_end.push_back(static_cast<double>(total));
        csv += std::to_string(r) + "," + std::to_string(head_count) + "," +
               std::to_string(total) + "," + std::to_string(trace.max_depth) + "\n";
    }
    emit("line-returns.csv", csv);
    report["runs"] = runs;
    report["median_checkpoint"] = lower_median(at_checkpoint);
    report["median_total"] = lower_median(at_end);
    report["fraction_with_visit"] = static_cast<double>(with_visit) / runs;
}

void run_lambda_cascade(const ExperimentConfig& cfg, const Emit& emit, json& report) {
    const auto m_max = static_cast<std::uint32_t>(cfg.get_int("m-max"));
    if (m_max < 1) throw InvalidInput("need m-max >= 1");
    const ThroughCounts through = count_irreducible_through(m_max);
    std::string csv = "m,lambda_m,phi_straight,phi_up,phi_down\n";
    std::vector<double> lambdas;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        CountTable total;
        total.reached = through.straight.reached;
        total.counts.assign(total.reached + 1, BigInt(0));
        for (std::uint32_t i = 0; i <= total.reached; ++i)
            total.counts[i] = through.straight.counts[i] + through.up.counts[i] +
                              through.down.counts[i];
        const double lam = critical_lambda_m(total, m);
        const auto phi = phi_critical_m(through, m);
        lambdas.push_back(lam);
        csv += std::to_string(m) + "," + fmt(lam) + "," + fmt(phi[0]) + "," + fmt(phi[1]) +
               "," + fmt(phi[2]) + "\n";
    }
    emit("lambda-cascade.csv", csv);
    const MuBracket mu = mu_bracket(m_max);
    bool decreasing = true;
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] < lambdas[i - 1])) decreasing = false;
    report["lambda_final"] = lambdas.back();
    report["strictly_decreasing"] = decreasing;
    report["mu_lower"] = mu.lo;
    report["mu_upper"] = mu.hi;
}

void run_frontispiece(const ExperimentConfig& cfg, const Emit& emit, json& report) {
    const DomainSpec domain = DomainSpec::parse(cfg.get("domain"));
    const bool pruned = cfg.get_bool("pruned");
    const double lambda = cfg.get_double("lambda");
    const auto steps = static_cast<std::uint64_t>(cfg.get_int("steps"));
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
    SawTree tree(domain, pruned);
    const WalkerTrace trace = simulate(tree, lambda, steps, seed);
    const FiniteWalk deepest = tree.walk_of(trace.deepest_node);
    emit("frontispiece.svg", render_walk_svg(deepest, 6));
    report["max_depth"] = trace.max_depth;
    report["polyline_points"] = static_cast<std::uint64_t>(deepest.points.size());
    report["line_visits"] = line_visit_count(trace);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    ExperimentResult res;
    const Emit emit = [&](const std::string& name, const std::string& content) {
        const std::string path = out_dir + "/" + name;
        write_file(path, content);
        res.files.push_back(path);
    };
    emit("config.txt", cfg.canonical());
    json report;
    report["experiment"] = cfg.id();
    report["version"] = kVersion;
    report["config_hash"] = cfg.hash_hex();
    json params;
    for (const auto& [k, v] : cfg.params()) params[k] = v;
    report["params"] = params;

    if (cfg.id() == "continuity-scan") run_continuity_scan(cfg, emit, report);
    else if (cfg.id() == "discontinuity-demo") run_discontinuity_demo(cfg, emit, report);
    else if (cfg.id() == "line-returns") run_line_returns(cfg, emit, report);
    else if (cfg.id() == "lambda-cascade") run_lambda_cascade(cfg, emit, report);
    else if (cfg.id() == "frontispiece") run_frontispiece(cfg, emit, report);
    else throw InvalidInput("unknown experiment '" + cfg.id() + "'");

    emit("report.json", report.dump(2) + "\n");
    return res;
}

}  // namespace sawtree
