#include "sawtree/conductance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_map>

#include "sawtree/errors.hpp"
#include "sawtree/rng.hpp"

namespace sawtree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bottom-up network reduction. S(v, rem) is the subtree resistance below v
// rescaled by lambda^{depth(v)}: it satisfies S(v, 0) = s0 and
//   S(v, rem) = [ sum over children c of lambda / (1 + S(c, rem-1)) ]^{-1},
// and the conductance from the root to level n is 1 / S(root, n).
// s0 = 0 truncates (levels shorted at n); s0 = 1/(lambda-1) closes each
// level-n vertex with an infinite ray. An engaged optional is a finite S;
// nullopt means no conducting path (every branch dies before level n).
template <class T>
class Reducer {
public:
    Reducer(TreeModel& t, T lambda, T s0) : t_(t), lam_(std::move(lambda)), s0_(std::move(s0)) {}

    std::optional<T> node_S(NodeId v0, std::uint32_t rem0) {
        struct Frame {
            NodeId first;
            std::uint32_t count;
            std::uint32_t i;
            std::uint32_t rem;
            T sum;
        };
        std::vector<Frame> stack;
        std::optional<T> ret;
        bool have_ret = false;
        // Resolves (v, rem) immediately when possible, else pushes a frame.
        auto descend = [&](NodeId v, std::uint32_t rem) {
            if (rem == 0) {
                ret = s0_;
                have_ret = true;
                return;
            }
            if (auto cls = t_.node_class(v)) {
                ret = class_S(*cls, rem);
                have_ret = true;
                return;
            }
            auto [first, count] = t_.children(v);
            if (count == 0) {
                ret = std::nullopt;
                have_ret = true;
                return;
            }
            stack.push_back({first, count, 0, rem, T(0)});
        };
        descend(v0, rem0);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (have_ret) {
                if (ret) f.sum += lam_ / (T(1) + *ret);
                have_ret = false;
                ++f.i;
            }
            if (f.i < f.count) {
                NodeId child = f.first + f.i;
                std::uint32_t rem = f.rem - 1;
                descend(child, rem);  // may invalidate f
                continue;
            }
            ret = f.sum == T(0) ? std::optional<T>{} : std::optional<T>{T(1) / f.sum};
            have_ret = true;
            stack.pop_back();
        }
        return ret;
    }

    std::optional<T> class_S(ClassId c0, std::uint32_t rem0) {
        if (auto it = memo_.find(key(c0, rem0)); it != memo_.end()) return it->second;
        struct Frame {
            ClassId cls;
            std::uint32_t rem;
            std::vector<ClassChild> kids;
            std::size_t i;
            T sum;
            bool started;
        };
        std::vector<Frame> stack;
        stack.push_back({c0, rem0, {}, 0, T(0), false});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.rem == 0) {
                memo_[key(f.cls, 0)] = s0_;
                stack.pop_back();
                continue;
            }
            if (!f.started) {
                f.started = true;
                f.kids = t_.class_children(f.cls);
                if (f.kids.empty()) {
                    memo_[key(f.cls, f.rem)] = std::nullopt;
                    stack.pop_back();
                    continue;
                }
            }
            if (f.i < f.kids.size()) {
                const ClassChild cc = f.kids[f.i];
                auto it = memo_.find(key(cc.cls, f.rem - 1));
                if (it == memo_.end()) {
                    std::uint32_t rem = f.rem - 1;
                    stack.push_back({cc.cls, rem, {}, 0, T(0), false});  // may invalidate f
                    continue;
                }
                if (it->second) f.sum += T(cc.count) * lam_ / (T(1) + *it->second);
                ++f.i;
                continue;
            }
            memo_[key(f.cls, f.rem)] =
                f.sum == T(0) ? std::optional<T>{} : std::optional<T>{T(1) / f.sum};
            stack.pop_back();
        }
        return memo_.at(key(c0, rem0));
    }

private:
    static std::uint64_t key(ClassId c, std::uint32_t rem) {
        return (static_cast<std::uint64_t>(c) << 32) | rem;
    }

    TreeModel& t_;
    T lam_;
    T s0_;
    std::unordered_map<std::uint64_t, std::optional<T>> memo_;
};

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInput("bias must be a positive finite real");
}

void check_lambda(const Rational& lambda) {
    if (lambda <= 0) throw InvalidInput("bias must be positive");
}

constexpr double kSlopFast = 1e-9;   // covers accumulated double rounding
constexpr double kSlopExact = 1e-12; // covers a single rational-to-double conversion
constexpr double kDivergenceCap = 1e30;

}  // namespace

double pi_root(TreeModel& t, double lambda) {
    check_lambda(lambda);
    auto [first, count] = t.children(kRootNode);
    (void)first;
    if (count == 0) throw InvalidInput("root has no children");
    return count * lambda;
}

Rational truncated_conductance_exact(TreeModel& t, const Rational& lambda, std::uint32_t n,
                                     bool* reaches_level) {
    check_lambda(lambda);
    if (n == 0) throw InvalidInput("truncation level must be >= 1");
    Reducer<Rational> red(t, lambda, Rational(0));
    auto s = red.node_S(kRootNode, n);
    if (reaches_level) *reaches_level = s.has_value();
    if (!s) return Rational(0);
    return Rational(1) / *s;
}

double truncated_conductance(TreeModel& t, double lambda, std::uint32_t n, bool* reaches_level) {
    check_lambda(lambda);
    if (n == 0) throw InvalidInput("truncation level must be >= 1");
    Reducer<double> red(t, lambda, 0.0);
    auto s = red.node_S(kRootNode, n);
    if (reaches_level) *reaches_level = s.has_value();
    if (!s) return 0.0;
    return 1.0 / *s;
}

Rational ray_closed_conductance_exact(TreeModel& t, const Rational& lambda, std::uint32_t n) {
    check_lambda(lambda);
    if (lambda <= 1) throw InvalidInput("ray closure needs bias > 1");
    if (!t.leafless()) throw InvalidInput("ray closure is only a bound on leafless trees");
    if (n == 0) throw InvalidInput("truncation level must be >= 1");
    Reducer<Rational> red(t, lambda, Rational(1) / (lambda - 1));
    auto s = red.node_S(kRootNode, n);
    if (!s) return Rational(0);
    return Rational(1) / *s;
}

ConductanceInterval conductance_interval(TreeModel& t, double lambda, std::uint32_t n) {
    ConductanceInterval out;
    out.truncation_level = n;
    out.upper = truncated_conductance(t, lambda, n);
    out.methods.push_back("truncated-exact");
    if (lambda > 1.0 && t.leafless()) {
        Reducer<double> red(t, lambda, 1.0 / (lambda - 1.0));
        auto s = red.node_S(kRootNode, n);
        out.lower = s ? 1.0 / *s : 0.0;
        out.methods.push_back("ray-closure");
    }
    out.lower = std::min(out.lower, out.upper);
    return out;
}

Rational ss_resistance_partial(const LevelProfile& p, const Rational& lambda, std::uint32_t N) {
    check_lambda(lambda);
    const Rational inv = Rational(1) / lambda;
    Rational pw(1), r(0);
    for (std::uint32_t m = 1; m <= N; ++m) {
        pw *= inv;
        r += pw / Rational(p.level_size(m));
    }
    return r;
}

RealInterval ss_resistance_interval(const LevelProfile& p, const Rational& lambda,
                                    std::uint32_t N) {
    if (N == 0) throw InvalidInput("need at least one level");
    const Rational partial = ss_resistance_partial(p, lambda, N);
    RealInterval out{to_double(partial) * (1.0 - kSlopExact), kInf};
    if (auto gf = p.geometric_floor(N); gf && gf->coeff > 0) {
        const Rational q = Rational(1) / (lambda * gf->ratio);
        if (q < 1) {
            const Rational tail = (Rational(1) / gf->coeff) * rpow(q, static_cast<int>(N) + 1) /
                                  (Rational(1) - q);
            out.hi = to_double(partial + tail) * (1.0 + kSlopExact);
        }
    }
    return out;
}

RealInterval ss_resistance_interval_fast(const LevelProfile& p, double lambda, std::uint32_t N) {
    check_lambda(lambda);
    if (N == 0) throw InvalidInput("need at least one level");
    const double log_lambda = std::log(lambda);
    double sum = 0.0, comp = 0.0, log_level = 0.0;
    bool diverged = false;
    for (std::uint32_t m = 1; m <= N; ++m) {
        log_level += std::log(static_cast<double>(p.child_count(m)));
        const double log_term = -static_cast<double>(m) * log_lambda - log_level;
        if (log_term > 69.0) {  // term alone would blow past the cap
            diverged = true;
            break;
        }
        const double term = std::exp(log_term);
        const double y = term - comp;
        const double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        if (sum > kDivergenceCap) {
            diverged = true;
            break;
        }
    }
    RealInterval out{sum * (1.0 - kSlopFast), kInf};
    if (diverged) return out;  // partial alone already certifies a huge R
    if (auto gf = p.geometric_floor(N); gf && gf->coeff > 0) {
        const double log_ratio = log_big(boost::multiprecision::numerator(gf->ratio)) -
                                 log_big(boost::multiprecision::denominator(gf->ratio));
        const double log_q = -(log_lambda + log_ratio);
        if (log_q < 0.0) {
            const double log_coeff = log_big(boost::multiprecision::numerator(gf->coeff)) -
                                     log_big(boost::multiprecision::denominator(gf->coeff));
            const double log_tail =
                -log_coeff + (static_cast<double>(N) + 1.0) * log_q - std::log1p(-std::exp(log_q));
            const double tail = std::exp(log_tail);  // overflow to +inf is fine
            out.hi = (sum + tail) * (1.0 + kSlopFast);
        }
    }
    return out;
}

namespace {

ConductanceInterval invert_resistance(const RealInterval& r, std::uint32_t N, double slop) {
    ConductanceInterval out;
    out.truncation_level = N;
    out.methods = {"ss-closed-form"};
    out.upper = r.lo > 0.0 ? (1.0 / r.lo) * (1.0 + slop) : kInf;
    out.lower = std::isfinite(r.hi) && r.hi > 0.0 ? (1.0 / r.hi) * (1.0 - slop) : 0.0;
    out.lower = std::min(out.lower, out.upper);
    return out;
}

}  // namespace

ConductanceInterval ss_conductance_interval(const LevelProfile& p, const Rational& lambda,
                                            std::uint32_t N) {
    return invert_resistance(ss_resistance_interval(p, lambda, N), N, kSlopExact);
}

ConductanceInterval ss_conductance_interval_fast(const LevelProfile& p, double lambda,
                                                 std::uint32_t N) {
    return invert_resistance(ss_resistance_interval_fast(p, lambda, N), N, kSlopFast);
}

double nash_williams_bound(const std::vector<BigInt>& levels, double lambda, std::uint32_t N) {
    check_lambda(lambda);
    if (N > levels.size()) throw InvalidInput("not enough level sizes for the requested N");
    const double log_lambda = std::log(lambda);
    double sum = 0.0;
    for (std::uint32_t m = 1; m <= N; ++m) {
        const double log_term = -static_cast<double>(m) * log_lambda - log_big(levels[m - 1]);
        sum += std::exp(log_term);
    }
    return sum;
}

namespace {

// One walk attempt: true iff level n is reached before returning to the root.
bool escape_sample(TreeModel& t, double lambda, std::uint32_t n, Rng& rng) {
    NodeId v = kRootNode;
    for (;;) {
        if (v == kRootNode) {
            auto [first, count] = t.children(v);
            v = first + static_cast<NodeId>(rng.uniform_int(count));
        } else {
            auto [first, count] = t.children(v);
            const double x = rng.uniform() * (1.0 + count * lambda);
            if (x < 1.0) {
                v = t.parent(v);
            } else {
                auto idx = static_cast<std::uint32_t>((x - 1.0) / lambda);
                if (idx >= count) idx = count - 1;
                v = first + idx;
            }
        }
        if (t.depth(v) == n) return true;
        if (v == kRootNode) return false;
    }
}

}  // namespace

McEstimate escape_probability_mc(TreeModel& t, double lambda, std::uint32_t n,
                                 std::uint64_t samples, std::uint64_t seed,
                                 std::uint32_t chains) {
    check_lambda(lambda);
    if (n == 0) throw InvalidInput("level must be >= 1");
    if (samples == 0) throw InvalidInput("need at least one sample");
    if (chains == 0) throw InvalidInput("need at least one chain");
    auto [first, count] = t.children(kRootNode);
    (void)first;
    if (count == 0) throw InvalidInput("root has no children");
    const std::uint64_t chunk = (samples + chains - 1) / chains;
    std::uint64_t wins = 0, done = 0;
    for (std::uint32_t ci = 0; ci < chains && done < samples; ++ci) {
        Rng rng = Rng::substream(seed, "mc-escape", ci);
        const std::uint64_t todo = std::min(chunk, samples - done);
        for (std::uint64_t s = 0; s < todo; ++s)
            if (escape_sample(t, lambda, n, rng)) ++wins;
        done += todo;
    }
    McEstimate est;
    est.mean = static_cast<double>(wins) / static_cast<double>(samples);
    est.std_error =
        samples > 1 ? std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples - 1))
                    : 1.0;
    est.samples = samples;
    est.seed = seed;
    return est;
}

std::vector<RealInterval> phi_step_intervals(TreeModel& t, NodeId at, double lambda,
                                             std::uint32_t n) {
    check_lambda(lambda);
    if (n == 0) throw InvalidInput("need at least one truncation level");
    auto [first, count] = t.children(at);
    if (count == 0) throw InvalidInput("node has no children");

    // Branch scores b = 1/(1+S): proportional to the branch conductance seen
    // from `at`. Truncation under-reports S (optimistic b), the ray closure
    // over-reports it (pessimistic b); the closure is only valid on leafless
    // trees with lambda > 1, otherwise the pessimistic side is vacuous 0.
    Reducer<double> open(t, lambda, 0.0);
    const bool closed_ok = lambda > 1.0 && t.leafless();
    Reducer<double> closed(t, lambda, closed_ok ? 1.0 / (lambda - 1.0) : 0.0);
    std::vector<double> bhi(count, 0.0), blo(count, 0.0);
    double sum_hi = 0.0, sum_lo = 0.0;
    for (std::uint32_t i = 0; i < count; ++i) {
        if (auto s = open.node_S(first + i, n - 1)) bhi[i] = 1.0 / (1.0 + *s);
        if (closed_ok) {
            if (auto s = closed.node_S(first + i, n - 1)) blo[i] = 1.0 / (1.0 + *s);
        }
        blo[i] = std::min(blo[i], bhi[i]);
        sum_hi += bhi[i];
        sum_lo += blo[i];
    }
    std::vector<RealInterval> out(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        // phi_i = b_i / sum_j b_j with each b_j in [blo_j, bhi_j]; the ratio
        // is extremal with b_i at one end and every other b_j at the other.
        double lo = 0.0, hi = 0.0;
        if (blo[i] > 0.0) lo = blo[i] / (blo[i] + (sum_hi - bhi[i]));
        if (bhi[i] > 0.0) {
            const double rest = sum_lo - blo[i];
            hi = rest > 0.0 ? bhi[i] / (bhi[i] + rest) : 1.0;
        }
        out[i].lo = std::clamp(lo, 0.0, 1.0);
        out[i].hi = std::clamp(hi, out[i].lo, 1.0);
    }
    return out;
}

PhiPathInterval phi_first_k_interval(TreeModel& t, double lambda,
                                     const std::vector<NodeId>& path, std::uint32_t n) {
    check_lambda(lambda);
    if (path.empty()) throw InvalidInput("path must contain at least one vertex");
    PhiPathInterval out;
    out.product = {1.0, 1.0};
    NodeId at = kRootNode;
    for (NodeId y : path) {
        auto [first, count] = t.children(at);
        if (y < first || y >= first + count)
            throw InvalidInput("path must descend through successive children of the root");
        auto steps = phi_step_intervals(t, at, lambda, n);
        const RealInterval& iv = steps[y - first];
        out.product.lo *= iv.lo;
        out.product.hi *= iv.hi;
        out.steps.push_back(iv);
        at = y;
    }
    return out;
}

}  // namespace sawtree
