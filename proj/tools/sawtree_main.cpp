#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sawtree/bridges.hpp"
#include "sawtree/conductance.hpp"
#include "sawtree/errors.hpp"
#include "sawtree/experiments.hpp"
#include "sawtree/gallery.hpp"
#include "sawtree/rng.hpp"
#include "sawtree/saw_tree.hpp"
#include "sawtree/svg.hpp"
#include "sawtree/tree_spec.hpp"
#include "sawtree/walk_engine.hpp"

namespace {

using nlohmann::json;
using namespace sawtree;

// Empty path or "-" means stdout.
void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << content;
    if (!out) throw InvalidInput("write failed for '" + path + "'");
}

std::pair<std::uint64_t, std::uint64_t> parse_mc(const std::string& text) {
    std::uint64_t samples = 0, seed = 0;
    bool have_samples = false, have_seed = false;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidInput("--mc expects samples=K,seed=S");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            if (key == "samples") {
                samples = std::stoull(val);
                have_samples = true;
            } else if (key == "seed") {
                seed = std::stoull(val);
                have_seed = true;
            } else {
                throw InvalidInput("--mc: unknown key '" + key + "'");
            }
        } catch (const InvalidInput&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidInput("--mc: bad number '" + val + "'");
        }
    }
    if (!have_samples || !have_seed) throw InvalidInput("--mc expects samples=K,seed=S");
    return {samples, seed};
}

int run(int argc, char** argv) {
    CLI::App app{"self-avoiding-walk trees, biased walks on them, and their conductance"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ------------------------------------------------------------ enumerate
    auto* enumerate = app.add_subcommand("enumerate", "level sizes of a walk tree");
    std::string en_domain = "halfplane";
    bool en_pruned = false;
    std::uint32_t en_depth = 8;
    std::string en_out;
    enumerate->add_option("--domain", en_domain,
                          "plane|halfplane|upperhalfplane|quadrant|strip:<L>");
    enumerate->add_flag("--pruned", en_pruned, "drop walks without infinite extension");
    enumerate->add_option("--max-depth", en_depth, "largest level to count")->required();
    enumerate->add_option("--out", en_out, "CSV path (default stdout)");
    enumerate->callback([&] {
        SawTree tree(DomainSpec::parse(en_domain), en_pruned);
        std::string csv = "n,count\n";
        for (std::uint32_t n = 0; n <= en_depth; ++n)
            csv += std::to_string(n) + "," + tree.level_count(n).str() + "\n";
        write_text(en_out, csv);
    });

    // --------------------------------------------------------------- counts
    auto* counts = app.add_subcommand("counts", "walk and bridge count tables");
    std::string ct_kind = "saw";
    std::uint32_t ct_max = 10;
    std::uint64_t ct_budget = kDefaultCountBudget;
    std::string ct_out;
    counts->add_option("--kind", ct_kind, "saw|bridge|irreducible|quadrant|strip:<L>");
    counts->add_option("--max-n", ct_max, "largest length to count")->required();
    counts->add_option("--budget", ct_budget, "enumeration step budget");
    counts->add_option("--out", ct_out, "CSV path (default stdout)");
    counts->callback([&] {
        CountTable table;
        if (ct_kind == "saw") {
            table = count_walks(DomainSpec::plane(), ct_max, ct_budget);
        } else if (ct_kind == "bridge") {
            table = count_bridges(BridgeDomain::Plane, ct_max, 0, ct_budget);
        } else if (ct_kind == "irreducible") {
            table = count_irreducible_bridges(ct_max, ct_budget);
        } else if (ct_kind == "quadrant") {
            table = count_bridges(BridgeDomain::Quadrant, ct_max, 0, ct_budget);
        } else if (ct_kind.rfind("strip:", 0) == 0) {
            const int height = std::stoi(ct_kind.substr(6));
            table = count_bridges(BridgeDomain::Strip, ct_max, height, ct_budget);
        } else {
            throw InvalidInput("unknown kind '" + ct_kind + "'");
        }
        std::string csv = "n,count\n";
        for (std::uint32_t n = 0; n <= table.reached; ++n)
            csv += std::to_string(n) + "," + table.counts[n].str() + "\n";
        write_text(ct_out, csv);
        if (!table.complete) {
            std::cerr << "budget exhausted: counts are complete only up to n = "
                      << table.reached << "\n";
            exit_code = 2;
        }
    });

    // ---------------------------------------------------------- conductance
    auto* cond = app.add_subcommand("conductance", "certified conductance interval");
    std::string cd_tree, cd_mc, cd_out;
    double cd_lambda = 1.0;
    std::uint32_t cd_level = 40;
    cond->add_option("--tree", cd_tree, "tree spec, e.g. uniform:2 or saw:halfplane:pruned")
        ->required();
    cond->add_option("--lambda", cd_lambda, "bias")->required();
    cond->add_option("--level", cd_level, "truncation level");
    cond->add_option("--mc", cd_mc, "Monte-Carlo check, samples=K,seed=S");
    cond->add_option("--out", cd_out, "JSON path (default stdout)");
    cond->callback([&] {
        auto tree = make_tree(cd_tree);
        const ConductanceInterval iv = conductance_interval(*tree, cd_lambda, cd_level);
        json out;
        out["lower"] = iv.lower;
        out["upper"] = iv.upper;
        out["truncation_level"] = iv.truncation_level;
        out["methods"] = iv.methods;
        if (!cd_mc.empty()) {
            const auto [samples, seed] = parse_mc(cd_mc);
            const McEstimate est =
                escape_probability_mc(*tree, cd_lambda, cd_level, samples, seed);
            const double pi = pi_root(*tree, cd_lambda);
            out["mc_mean"] = pi * est.mean;
            out["mc_stderr"] = pi * est.std_error;
            out["mc_samples"] = est.samples;
            out["mc_seed"] = est.seed;
        }
        write_text(cd_out, out.dump(2) + "\n");
    });

    // ----------------------------------------------------------------- walk
    auto* walk = app.add_subcommand("walk", "simulate the biased walk on a walk tree");
    std::string wk_domain = "halfplane", wk_svg, wk_stats;
    bool wk_pruned = false;
    double wk_lambda = 1.0;
    std::uint64_t wk_steps = 10000, wk_seed = 1;
    walk->add_option("--domain", wk_domain,
                     "plane|halfplane|upperhalfplane|quadrant|strip:<L>");
    walk->add_flag("--pruned", wk_pruned, "walk on the pruned tree");
    walk->add_option("--lambda", wk_lambda, "bias (inf allowed)");
    walk->add_option("--steps", wk_steps, "number of steps")->required();
    walk->add_option("--seed", wk_seed, "random seed");
    walk->add_option("--svg", wk_svg, "render the deepest walk reached");
    walk->add_option("--stats", wk_stats, "JSON stats path (default stdout)");
    walk->callback([&] {
        SawTree tree(DomainSpec::parse(wk_domain), wk_pruned);
        const WalkerTrace trace = simulate(tree, wk_lambda, wk_steps, wk_seed);
        json stats;
        stats["steps"] = trace.depths.size() - 1;
        stats["seed"] = wk_seed;
        stats["line_visit_count"] = line_visit_count(trace);
        stats["max_depth"] = trace.max_depth;
        stats["commit_events"] =
            trace.max_depth > kDefaultCommitMargin ? trace.max_depth - kDefaultCommitMargin : 0;
        stats["stuck"] = trace.stuck;
        if (!wk_svg.empty())
            write_text(wk_svg, render_walk_svg(tree.walk_of(trace.deepest_node), 6));
        write_text(wk_stats, stats.dump(2) + "\n");
    });

    // -------------------------------------------------------------- gallery
    auto* gallery = app.add_subcommand("gallery", "level sizes and growth of a tree");
    std::string gl_tree, gl_out;
    std::uint32_t gl_max = 12;
    gallery->add_option("--tree", gl_tree, "tree spec")->required();
    gallery->add_option("--max-n", gl_max, "largest level");
    gallery->add_option("--out", gl_out, "CSV path (default stdout)");
    gallery->callback([&] {
        auto tree = make_tree(gl_tree);
        std::string csv = "n,size,root\n";
        for (const GrowthRow& row : growth_estimate(*tree, gl_max)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", row.root);
            csv += std::to_string(row.n) + "," + row.size.str() + "," + buf + "\n";
        }
        write_text(gl_out, csv);
        if (gl_tree.rfind("periodic:", 0) == 0) {
            const std::string rest = gl_tree.substr(9);
            std::string parens = rest;
            if (!rest.empty() && rest[0] != '(') {
                std::ifstream in(rest, std::ios::binary);
                std::ostringstream buf2;
                buf2 << in.rdbuf();
                parens = buf2.str();
            }
            std::cerr << "periodic critical lambda: "
                      << periodic_critical_lambda(FiniteTree::parse(parens)) << "\n";
        }
    });

    // --------------------------------------------------------------- kesten
    auto* kesten = app.add_subcommand("kesten", "sample a bridge from Kesten blocks");
    double ks_beta = 0.25;
    std::uint32_t ks_mmax = 8, ks_blocks = 10;
    std::uint64_t ks_seed = 1;
    std::string ks_svg, ks_out;
    kesten->add_option("--beta", ks_beta, "block weight base")->required();
    kesten->add_option("--mmax", ks_mmax, "largest block length (<= 12)")->required();
    kesten->add_option("--blocks", ks_blocks, "number of blocks")->required();
    kesten->add_option("--seed", ks_seed, "random seed");
    kesten->add_option("--svg", ks_svg, "render the sampled bridge");
    kesten->add_option("--out", ks_out, "JSON path (default stdout)");
    kesten->callback([&] {
        const KestenSampler sampler(ks_mmax);
        Rng rng = Rng::substream(ks_seed, "kesten-sample");
        const auto draw = sampler.sample(ks_beta, ks_blocks, rng);
        json out;
        out["beta"] = ks_beta;
        out["mmax"] = ks_mmax;
        out["blocks"] = ks_blocks;
        out["seed"] = ks_seed;
        out["normalizer"] = sampler.normalizer(ks_beta);
        out["total_length"] = draw.walk.length();
        out["block_lengths"] = draw.block_lengths;
        out["steps"] = draw.walk.to_steps();
        if (!ks_svg.empty()) write_text(ks_svg, render_walk_svg(draw.walk, 12));
        write_text(ks_out, out.dump(2) + "\n");
    });

    // ------------------------------------------------------------- lambda-m
    auto* lambdam = app.add_subcommand("lambda-m", "level-m critical bias and first-step law");
    std::uint32_t lm_m = 5;
    std::string lm_out;
    lambdam->add_option("--m", lm_m, "truncation order")->required();
    lambdam->add_option("--out", lm_out, "JSON path (default stdout)");
    lambdam->callback([&] {
        const ThroughCounts through = count_irreducible_through(lm_m);
        CountTable total;
        total.reached = through.straight.reached;
        total.counts.assign(total.reached + 1, BigInt(0));
        for (std::uint32_t i = 0; i <= total.reached; ++i)
            total.counts[i] = through.straight.counts[i] + through.up.counts[i] +
                              through.down.counts[i];
        const double lam = critical_lambda_m(total, lm_m);
        const auto phi = phi_critical_m(through, lm_m);
        json out;
        out["m"] = lm_m;
        out["lambda_m"] = lam;
        out["phi_straight"] = phi[0];
        out["phi_up"] = phi[1];
        out["phi_down"] = phi[2];
        out["phi_sum"] = phi[0] + phi[1] + phi[2];
        write_text(lm_out, out.dump(2) + "\n");
    });

    // ----------------------------------------------------------- experiment
    auto* experiment = app.add_subcommand("experiment", "run a packaged experiment");
    std::string ex_id, ex_config, ex_dir = "experiment-out";
    std::vector<std::string> ex_sets;
    experiment->add_option("--id", ex_id, "continuity-scan|discontinuity-demo|line-returns|"
                                          "lambda-cascade|frontispiece");
    experiment->add_option("--config", ex_config, "rerun from an emitted config.txt");
    experiment->add_option("--set", ex_sets, "override key=value (repeatable)");
    experiment->add_option("--out-dir", ex_dir, "output directory");
    experiment->callback([&] {
        ExperimentConfig cfg = [&] {
            if (!ex_config.empty()) return ExperimentConfig::from_file(ex_config);
            if (ex_id.empty()) throw InvalidInput("experiment needs --id or --config");
            return ExperimentConfig::defaults(ex_id);
        }();
        for (const std::string& kv : ex_sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw InvalidInput("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        const ExperimentResult res = run_experiment(cfg, ex_dir);
        for (const std::string& f : res.files) std::cout << f << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sawtree::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const sawtree::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const sawtree::RefinementExhausted& e) {
        std::cerr << "refinement exhausted: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
