// Acceptance harness: one line per criterion, nonzero exit when any fails.
// Every derived expectation is checked against an independent oracle from
// tests/oracles.*; frozen values are spelled out inline.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sawtree/bridges.hpp"
#include "sawtree/conductance.hpp"
#include "sawtree/experiments.hpp"
#include "sawtree/gallery.hpp"
#include "sawtree/lattice.hpp"
#include "sawtree/level_profile.hpp"
#include "sawtree/numeric.hpp"
#include "sawtree/rng.hpp"
#include "sawtree/saw_tree.hpp"
#include "sawtree/tree_spec.hpp"
#include "sawtree/walk.hpp"
#include "sawtree/walk_engine.hpp"

using namespace sawtree;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("%s criterion-%d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------- criterion 1
// Walk, bridge and irreducible-bridge counts up to n=10 equal the naive
// reference enumeration exactly, under a minute, including the frozen values
// c_1..4 = 4,12,36,100, b_0..2 = 1,1,3, p_1 = 1, p_2 = 2.
void criterion_1() {
    Timer timer;
    bool ok = true;
    std::string why;

    const CountTable c = count_walks(DomainSpec::plane(), 10);
    const CountTable b = count_bridges(BridgeDomain::Plane, 10);
    const CountTable p = count_irreducible_bridges(10);

    std::vector<BigInt> nb(11, BigInt(0)), np(11, BigInt(0));
    nb[0] = 1;
    for (std::uint32_t n = 0; n <= 10; ++n) {
        if (c.counts[n] != oracles::naive_saw_count(DomainSpec::plane(), n)) {
            ok = false;
            why = "c_" + std::to_string(n) + " disagrees with the naive recursion";
        }
        if (n == 0) continue;
        for (const FiniteWalk& w : oracles::naive_enumerate_saws(DomainSpec::plane(), n)) {
            if (!oracles::naive_is_bridge(w)) continue;
            ++nb[n];
            if (oracles::naive_is_irreducible_bridge(w)) ++np[n];
        }
    }
    for (std::uint32_t n = 0; n <= 10 && ok; ++n) {
        if (b.counts[n] != nb[n]) {
            ok = false;
            why = "b_" + std::to_string(n) + " disagrees with the filtered enumeration";
        }
        if (p.counts[n] != np[n]) {
            ok = false;
            why = "p_" + std::to_string(n) + " disagrees with the filtered enumeration";
        }
    }
    if (ok && !(c.counts[1] == 4 && c.counts[2] == 12 && c.counts[3] == 36 &&
                c.counts[4] == 100)) {
        ok = false;
        why = "frozen walk counts changed";
    }
    if (ok && !(b.counts[0] == 1 && b.counts[1] == 1 && b.counts[2] == 3)) {
        ok = false;
        why = "frozen bridge counts changed";
    }
    if (ok && !(p.counts[1] == 1 && p.counts[2] == 2)) {
        ok = false;
        why = "frozen irreducible counts changed";
    }
    if (timer.seconds() > 60.0) {
        ok = false;
        why = "took " + std::to_string(timer.seconds()) + "s (limit 60s)";
    }
    report(1, "counts to n=10 match the naive oracle exactly", ok, why);
}

// ---------------------------------------------------------------- criterion 2
// Truncated conductance at level 60 is within 1e-9 of b*lambda - 1 on b-ary
// trees for (b,lambda) in {(2,1),(3,1),(2,2)}; the Monte-Carlo escape
// estimate on the ray at lambda=2, level 3 is within 4 sigma of 4/7 at 1e5
// samples.
void criterion_2() {
    bool ok = true;
    std::string why;
    const std::vector<std::pair<int, double>> cases{{2, 1.0}, {3, 1.0}, {2, 2.0}};
    for (const auto& [b, lambda] : cases) {
        auto t = make_uniform_tree(b);
        const double got = truncated_conductance(*t, lambda, 60);
        const double want = b * lambda - 1.0;
        if (std::abs(got - want) > 1e-9) {
            ok = false;
            why = "b=" + std::to_string(b) + " lambda=" + std::to_string(lambda) + " got " +
                  std::to_string(got);
        }
    }
    auto ray = make_tree("ray");
    const McEstimate est = escape_probability_mc(*ray, 2.0, 3, 100000, 20260819);
    const double dev = std::abs(est.mean - 4.0 / 7.0);
    if (!(dev <= 4.0 * est.std_error)) {
        ok = false;
        why = "MC deviation " + std::to_string(dev) + " vs 4 sigma = " +
              std::to_string(4.0 * est.std_error);
    }
    report(2, "level-60 b-ary limits and ray Monte-Carlo escape", ok, why);
}

// ---------------------------------------------------------------- criterion 3
// Monotonicity across the gallery: truncation decreasing in n, ray closure
// increasing in n, interval nesting, and Rayleigh monotonicity in lambda,
// levels to 30, a 20-point lambda grid. Exact rational arithmetic wherever
// it stays feasible: on the periodic closure the rationals' bit sizes obey
// the same Fibonacci-type recursion as its level counts, so the exact loop
// stops at n=16 there and the double-precision interval covers n<=30.
void criterion_3() {
    bool ok = true;
    std::string why;
    const std::vector<std::string> specs{"prop5:x=13/10", "prop5:x=2",    "prop5bar:x=2",
                                         "prop4:x=2,k=1", "join:{binary};{ray}",
                                         "periodic:(()(()))"};
    for (const std::string& spec : specs) {
        auto t = make_tree(spec);

        // Rayleigh in lambda at fixed level 12, 20 rational grid points.
        Rational prev(-1);
        for (int k = 2; k <= 21 && ok; ++k) {
            const Rational lambda(k, 7);
            const Rational cur = truncated_conductance_exact(*t, lambda, 12);
            if (cur < prev) {
                ok = false;
                why = spec + ": truncation not monotone in lambda at k=" + std::to_string(k);
            }
            prev = cur;
        }

        // Truncation in n and nesting at a lambda above 1, exact.
        const Rational lambda(3, 2);
        const std::uint32_t n_exact = spec.rfind("periodic:", 0) == 0 ? 16 : 30;
        Rational prev_up, prev_lo;
        for (std::uint32_t n = 1; n <= n_exact && ok; ++n) {
            const Rational up = truncated_conductance_exact(*t, lambda, n);
            const Rational lo = ray_closed_conductance_exact(*t, lambda, n);
            if (lo > up) {
                ok = false;
                why = spec + ": interval inverted at n=" + std::to_string(n);
            } else if (n > 1 && up > prev_up) {
                ok = false;
                why = spec + ": truncation increased at n=" + std::to_string(n);
            } else if (n > 1 && lo < prev_lo) {
                ok = false;
                why = spec + ": ray closure decreased at n=" + std::to_string(n);
            }
            prev_up = up;
            prev_lo = lo;
        }

        // Same suite in doubles to the full depth, with rounding slack.
        double dprev_up = 0.0, dprev_lo = 0.0;
        for (std::uint32_t n = 1; n <= 30 && ok; ++n) {
            const ConductanceInterval ci = conductance_interval(*t, 1.5, n);
            const double slack = 1e-12 * (1.0 + ci.upper);
            if (ci.lower > ci.upper + slack) {
                ok = false;
                why = spec + ": double interval inverted at n=" + std::to_string(n);
            } else if (n > 1 && ci.upper > dprev_up + slack) {
                ok = false;
                why = spec + ": double truncation increased at n=" + std::to_string(n);
            } else if (n > 1 && ci.lower < dprev_lo - slack) {
                ok = false;
                why = spec + ": double closure decreased at n=" + std::to_string(n);
            }
            dprev_up = ci.upper;
            dprev_lo = ci.lower;
        }
        if (!ok) break;
    }
    report(3, "gallery-wide monotonicity and interval nesting", ok, why);
}

// ---------------------------------------------------------------- criterion 4
// Exact sandwich x^n - x^{n-1} <= |T_n| <= x^n for the greedy floor profile
// at x in {1.3, 1.7, 2.0} up to n=40, and the doubled variant carries the
// exact extra factor 2^{floor(sqrt n)}.
void criterion_4() {
    bool ok = true;
    std::string why;
    for (const char* xs : {"1.3", "1.7", "2.0"}) {
        const Rational x = parse_rational(xs);
        const GreedyFloorProfile prof(x);
        const DoubledSquaresProfile bar(x);
        for (std::uint32_t n = 1; n <= 40 && ok; ++n) {
            const Rational size(prof.level_size(n));
            const Rational xn = rpow(x, static_cast<int>(n));
            if (!(size <= xn && size >= xn - xn / x)) {
                ok = false;
                why = std::string("sandwich fails at x=") + xs + " n=" + std::to_string(n);
            }
            if (bar.level_size(n) != prof.level_size(n) * ipow(BigInt(2), isqrt_floor(n))) {
                ok = false;
                why = std::string("bar ratio fails at x=") + xs + " n=" + std::to_string(n);
            }
        }
    }
    report(4, "greedy floor sandwich and doubled-squares ratio (exact)", ok, why);
}

// ---------------------------------------------------------------- criterion 5
// Decomposition round-trip with brute-force irreducibility for every bridge
// to n=10; strip superadditivity p^{(2l)}_{n+m} >= p^{(l)}_n p^{(l)}_m for
// l in {2,4}, n+m <= 10, exact; Kesten partial sums at x = 1/mu_hi increase
// and stay <= 1 for N <= 10.
void criterion_5() {
    bool ok = true;
    std::string why;
    for (std::uint32_t n = 1; n <= 10 && ok; ++n) {
        for (const FiniteWalk& w : oracles::naive_enumerate_saws(DomainSpec::plane(), n)) {
            if (!oracles::naive_is_bridge(w)) continue;
            const auto pieces = decompose_bridge(w);
            FiniteWalk back;
            bool first = true;
            for (const FiniteWalk& piece : pieces) {
                if (!oracles::naive_is_irreducible_bridge(piece)) {
                    ok = false;
                    why = "a factor of " + w.to_steps() + " is not irreducible";
                    break;
                }
                back = first ? piece : concat_bridges(back, piece);
                first = false;
            }
            if (ok && !(back == w)) {
                ok = false;
                why = "round trip failed for " + w.to_steps();
            }
            if (!ok) break;
        }
    }

    for (const std::int32_t ell : {2, 4}) {
        if (!ok) break;
        const CountTable one = count_bridges(BridgeDomain::Strip, 10, ell);
        const CountTable two = count_bridges(BridgeDomain::Strip, 10, 2 * ell);
        for (std::uint32_t n = 1; n <= 9 && ok; ++n)
            for (std::uint32_t m = 1; n + m <= 10; ++m)
                if (two.counts[n + m] < one.counts[n] * one.counts[m]) {
                    ok = false;
                    why = "superadditivity fails at l=" + std::to_string(ell) +
                          " n=" + std::to_string(n) + " m=" + std::to_string(m);
                    break;
                }
    }

    if (ok) {
        const CountTable p = count_irreducible_bridges(10);
        const double x = 1.0 / mu_bracket(10).hi;
        double prev = 0.0;
        for (std::uint32_t N = 1; N <= 10; ++N) {
            const double s = kesten_partial_sum(p, x, N);
            if (!(s > prev && s <= 1.0)) {
                ok = false;
                why = "partial sum misbehaves at N=" + std::to_string(N);
                break;
            }
            prev = s;
        }
    }
    report(5, "factorization round-trip, strip superadditivity, Kesten sums", ok, why);
}

// ---------------------------------------------------------------- criterion 6
// lambda_1 = 1 and lambda_2 = 1/2 exactly (to 1e-12), the sequence strictly
// decreases to m=10, never dips under 1/mu_hi, and each critical first-step
// law sums to 1 within 1e-12.
void criterion_6() {
    bool ok = true;
    std::string why;
    const ThroughCounts th = count_irreducible_through(10);
    CountTable total;
    total.reached = th.straight.reached;
    total.counts.assign(total.reached + 1, BigInt(0));
    for (std::uint32_t i = 0; i <= total.reached; ++i)
        total.counts[i] = th.straight.counts[i] + th.up.counts[i] + th.down.counts[i];

    const double floor_lo = 1.0 / mu_bracket(10).hi;
    double prev = 2.0;
    for (std::uint32_t m = 1; m <= 10 && ok; ++m) {
        const double lam = critical_lambda_m(total, m);
        if (m == 1 && std::abs(lam - 1.0) > 1e-12) {
            ok = false;
            why = "lambda_1 != 1";
        }
        if (m == 2 && std::abs(lam - 0.5) > 1e-12) {
            ok = false;
            why = "lambda_2 != 1/2";
        }
        if (!(lam < prev)) {
            ok = false;
            why = "not strictly decreasing at m=" + std::to_string(m);
        }
        if (lam < floor_lo) {
            ok = false;
            why = "lambda_m below 1/mu at m=" + std::to_string(m);
        }
        const auto phi = phi_critical_m(th, m);
        if (std::abs(phi[0] + phi[1] + phi[2] - 1.0) > 1e-12) {
            ok = false;
            why = "phi does not sum to 1 at m=" + std::to_string(m);
        }
        prev = lam;
    }
    report(6, "critical bias cascade and first-step laws", ok, why);
}

// ---------------------------------------------------------------- criterion 7
// Pruned closed-half-plane walk tree at lambda=1, the canonical seeded runs
// (seed 12345, one substream per run): in 200 runs of 1e4 steps every run
// revisits the boundary line, and the median visit count at 1e4 steps
// exceeds the median at 1e3 steps.
void criterion_7() {
    bool ok = true;
    std::string why;
    const std::uint32_t runs = 200;
    const std::uint64_t steps = 10000, checkpoint = 1000;
    std::vector<double> at_checkpoint, at_end;
    std::uint32_t with_visit = 0;
    for (std::uint32_t r = 0; r < runs; ++r) {
        SawTree tree(DomainSpec::half_plane(), true);
        const WalkerTrace trace =
            simulate(tree, 1.0, steps, substream_seed(12345, "line-returns", r));
        std::uint64_t head_count = 0;
        for (std::size_t i = 1; i <= checkpoint && i < trace.heads.size(); ++i)
            if (trace.heads[i].y == 0) ++head_count;
        const std::uint64_t total = line_visit_count(trace);
        if (total >= 1) ++with_visit;
        at_checkpoint.push_back(static_cast<double>(head_count));
        at_end.push_back(static_cast<double>(total));
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[(v.size() - 1) / 2];
    };
    const double med_end = median(at_end), med_cp = median(at_checkpoint);
    if (with_visit != runs) {
        ok = false;
        why = std::to_string(runs - with_visit) + " runs never touched the line";
    } else if (!(med_end > med_cp)) {
        ok = false;
        why = "median at 1e4 steps (" + std::to_string(med_end) +
              ") not above median at 1e3 (" + std::to_string(med_cp) + ")";
    }
    report(7, "boundary line is revisited and keeps accumulating visits", ok,
           why.empty() ? "medians " + std::to_string(med_cp) + " -> " + std::to_string(med_end)
                       : why);
}

// ---------------------------------------------------------------- criterion 8
// join(binary, ray) at lambda=3/2, first limit-walk vertex: the exact
// sequential sampler, the commit heuristic, and a dense absorbing-chain
// oracle (lumped, truncated at depth 14) agree pairwise within 3 sigma plus
// the certified interval width at 1e4 samples.
void criterion_8() {
    bool ok = true;
    std::string why;
    auto join = make_tree("join:{binary};{ray}");
    const double lambda = 1.5;
    const auto [first, count] = join->children(kRootNode);
    if (count != 2) {
        report(8, "three-way agreement on the join's first-step law", false,
               "join root degree changed");
        return;
    }

    const double oracle = oracles::lumped_two_branch_first_step(2, 1, lambda, 14);

    const std::vector<std::uint32_t> schedule{10, 20, 45};
    const std::uint64_t samples = 10000;
    std::uint64_t exact_hits = 0, commit_hits = 0;
    double width = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto e = limit_walk_exact(*join, lambda, 1, 1e-6, schedule, 31000 + s);
        width = std::max(width, e.widths[0]);
        if (e.nodes[0] == first) ++exact_hits;
        const auto c = limit_walk_commit(*join, lambda, 1, kDefaultCommitMargin, 200000,
                                         77000 + s);
        if (c.status != CommitStatus::Committed) {
            ok = false;
            why = "commit run timed out";
            break;
        }
        if (c.nodes[0] == first) ++commit_hits;
    }
    if (ok) {
        const double p_exact = static_cast<double>(exact_hits) / samples;
        const double p_commit = static_cast<double>(commit_hits) / samples;
        const double sigma = std::sqrt(oracle * (1.0 - oracle) / samples);
        const double tol = 3.0 * sigma + width;
        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "oracle %.6f exact %.4f commit %.4f (tol %.4f)", oracle, p_exact,
                      p_commit, tol);
        if (std::abs(p_exact - oracle) > tol) {
            ok = false;
            why = std::string("exact sampler off: ") + detail;
        } else if (std::abs(p_commit - oracle) > tol) {
            ok = false;
            why = std::string("commit heuristic off: ") + detail;
        } else if (std::abs(p_exact - p_commit) > 2.0 * tol) {
            ok = false;
            why = std::string("samplers disagree: ") + detail;
        } else {
            why = detail;
        }
    }
    report(8, "three-way agreement on the join's first-step law", ok, why);
}

// ---------------------------------------------------------------- criterion 9
// mu brackets are ordered with a nondecreasing lower end up to n=12, and
// strip bridges of maximal height match quadrant bridges exactly:
// p^{(l)}_l = b^Q_l for l <= 8.
void criterion_9() {
    bool ok = true;
    std::string why;
    const CountTable c = count_walks(DomainSpec::plane(), 12);
    const CountTable b = count_bridges(BridgeDomain::Plane, 12);
    double prev_lo = 0.0;
    for (std::uint32_t n = 1; n <= 12 && ok; ++n) {
        const MuBracket mb = mu_bracket(c, b, n);
        if (!(mb.lo <= mb.hi)) {
            ok = false;
            why = "bracket inverted at n=" + std::to_string(n);
        }
        if (mb.lo < prev_lo) {
            ok = false;
            why = "lower end decreased at n=" + std::to_string(n);
        }
        prev_lo = mb.lo;
    }
    const CountTable quad = count_bridges(BridgeDomain::Quadrant, 8);
    for (std::uint32_t ell = 1; ell <= 8 && ok; ++ell) {
        const CountTable strip = count_bridges(BridgeDomain::Strip, ell, ell);
        if (strip.counts[ell] != quad.counts[ell]) {
            ok = false;
            why = "strip height " + std::to_string(ell) + " disagrees with the quadrant";
        }
    }
    report(9, "mu bracket ordering and strip/quadrant agreement", ok, why);
}

// --------------------------------------------------------------- criterion 10
// Every experiment rerun from its embedded config.txt reproduces its data
// outputs byte for byte.
void criterion_10() {
    bool ok = true;
    std::string why;
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "sawtree-acceptance";
    fs::remove_all(base);

    std::vector<ExperimentConfig> cfgs;
    cfgs.push_back(ExperimentConfig::defaults("continuity-scan"));
    {
        ExperimentConfig d = ExperimentConfig::defaults("discontinuity-demo");
        d.set("level", "2000");
        cfgs.push_back(d);
        ExperimentConfig l = ExperimentConfig::defaults("line-returns");
        l.set("runs", "10");
        l.set("steps", "2000");
        l.set("checkpoint", "500");
        cfgs.push_back(l);
        ExperimentConfig m = ExperimentConfig::defaults("lambda-cascade");
        m.set("m-max", "6");
        cfgs.push_back(m);
        ExperimentConfig f = ExperimentConfig::defaults("frontispiece");
        f.set("steps", "1500");
        cfgs.push_back(f);
    }
    for (const ExperimentConfig& cfg : cfgs) {
        const fs::path d1 = base / (cfg.id() + "-a");
        const fs::path d2 = base / (cfg.id() + "-b");
        const ExperimentResult r1 = run_experiment(cfg, d1.string());
        const ExperimentConfig back =
            ExperimentConfig::from_file((d1 / "config.txt").string());
        const ExperimentResult r2 = run_experiment(back, d2.string());
        if (r1.files.size() != r2.files.size()) {
            ok = false;
            why = cfg.id() + ": file lists differ";
            break;
        }
        for (std::size_t i = 0; i < r1.files.size(); ++i) {
            if (slurp(r1.files[i]) != slurp(r2.files[i])) {
                ok = false;
                why = cfg.id() + ": " + fs::path(r1.files[i]).filename().string() +
                      " differs between runs";
                break;
            }
        }
        if (!ok) break;
    }
    fs::remove_all(base);
    report(10, "experiments rerun byte-identically from config.txt", ok, why);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failing\n", g_failures);
    return 1;
}
