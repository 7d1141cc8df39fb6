#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/boolfn.hpp"
#include "qcc/search.hpp"

namespace qcc {

// P[a uniform s-subset of [n] meets a fixed w-subset] = 1 - C(n-w, s)/C(n, s).
inline double hit_probability(std::size_t n, std::size_t w, std::size_t s) {
    if (s > n) throw std::invalid_argument("hit_probability: s > n");
    if (w + s > n) return 1.0;
    double miss = 1.0;
    for (std::size_t i = 0; i < s; ++i) miss *= static_cast<double>(n - w - i) / static_cast<double>(n - i);
    return 1.0 - miss;
}

struct Part1Plan {
    std::size_t subset_size = 0;
    double p1 = 0, p2 = 0, threshold = 0, margin = 0;
    int repetitions = 0;
};

// Exact hypergeometric p1 (|z| = 2t) and p2 (|z| = t); R from Hoeffding at the configured error.
inline Part1Plan part1_plan(std::size_t n, std::size_t t, const ProtocolConstants& c) {
    if (t < 1 || t > n) throw std::invalid_argument("part1: 1 <= t <= n");
    Part1Plan p;
    p.subset_size = (n + 2 * t - 1) / (2 * t);
    p.p1 = hit_probability(n, std::min(2 * t, n), p.subset_size);
    p.p2 = hit_probability(n, t, p.subset_size);
    p.threshold = (p.p1 + p.p2) / 2.0;
    p.margin = std::min((1.0 - c.search_miss) * p.p1 - p.threshold, p.threshold - p.p2);
    if (!(p.margin > 0.0)) throw std::runtime_error("part1: no gap between p1 and p2 for n=" + std::to_string(n) + " t=" + std::to_string(t));
    p.repetitions = static_cast<int>(std::ceil(std::log(1.0 / c.part1_error) / (2.0 * p.margin * p.margin)));
    return p;
}

inline std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Blocks indexed by S, padded with G = +1 registry inputs up to a power of two (at least 2).
inline SearchInstance restrict_instance(const SearchInstance& inst, const std::vector<std::size_t>& S, const PatchInputs& pad) {
    const std::size_t m = std::max<std::size_t>(2, next_pow2(S.size()));
    std::vector<Signs> xs, ys;
    for (auto i : S) {
        xs.push_back(inst.X[i]);
        ys.push_back(inst.Y[i]);
    }
    while (xs.size() < m) {
        xs.push_back(pad.x);
        ys.push_back(pad.y);
    }
    return SearchInstance(inst.G, std::move(xs), std::move(ys));
}

struct Part1Result {
    bool case1 = false;  // evidence that |z| >= 2t
    int successes = 0;
    Part1Plan plan;
};

inline Part1Result part1_filter(const SearchInstance& inst, std::size_t t, Session& s, const PatchRegistry& reg = PatchRegistry::standard()) {
    Part1Result out;
    out.plan = part1_plan(inst.n, t, s.constants);
    const PatchInputs pad = reg.lookup(inst.G, 1);
    SharedCoins coins(s.rng, s.meter, s.log);
    for (int rep = 0; rep < out.plan.repetitions; ++rep) {
        const auto S = coins.subset(inst.n, out.plan.subset_size);
        const SearchInstance sub = restrict_instance(inst, S, pad);
        if (search_unknown(sub, s)) ++out.successes;
    }
    out.case1 = static_cast<double>(out.successes) / out.plan.repetitions > out.plan.threshold;
    return out;
}

// P_k: searches with t = 2^(k-1) until the budget is spent, patching each verified hit.
inline std::set<std::size_t> protocol_Pk(SearchInstance& inst, int k, Session& s, const PatchRegistry& reg = PatchRegistry::standard()) {
    if (k < 1) throw std::invalid_argument("protocol_Pk: k >= 1");
    const std::size_t tg = std::min<std::size_t>(std::size_t{1} << (k - 1), inst.n);
    const double budget = s.constants.pk_budget_factor() * std::sqrt(std::ldexp(1.0, k) * static_cast<double>(inst.n)) * inst.G.q;
    const PatchInputs patch = reg.lookup(inst.G, 1);
    const std::uint64_t start = s.meter.total();
    std::set<std::size_t> found;
    while (static_cast<double>(s.meter.total() - start) < budget) {
        if (auto i = search_known_t(inst, tg, s)) {
            found.insert(*i);
            inst.patch(*i, patch);
        }
    }
    return found;
}

struct CountReport {
    enum class Kind { Exact, Above };
    Kind kind = Kind::Exact;
    std::size_t count = 0;  // EXACT value
    std::size_t t = 0;      // ABOVE_THRESHOLD parameter
    CostMeter meter;
    std::vector<std::string> trace;
    SearchInstance patched;

    bool exact() const { return kind == Kind::Exact; }
    std::string describe() const { return exact() ? "EXACT(" + std::to_string(count) + ")" : "ABOVE_THRESHOLD(" + std::to_string(t) + ")"; }
    // A legal output: the true count, or ABOVE when |z| > t.
    bool correct_for(std::size_t true_weight) const { return exact() ? count == true_weight : true_weight > t; }
};

inline int pk_levels(std::size_t t) { return ceil_log2(2 * t); }

// P: runs P_k for k = ceil(log2 2t) down to 1, r_k = ceil(log2 2t) - k + offset times each.
inline CountReport protocol_P(const SearchInstance& inst, std::size_t t, Session& s, const PatchRegistry& reg = PatchRegistry::standard()) {
    CountReport rep;
    rep.t = t;
    rep.patched = inst;
    const int K = pk_levels(t);
    std::set<std::size_t> found;
    for (int k = K; k >= 1; --k) {
        const int rk = K - k + s.constants.pk_rep_offset;
        for (int r = 0; r < rk; ++r) {
            auto f = protocol_Pk(rep.patched, k, s, reg);
            found.insert(f.begin(), f.end());
        }
        rep.trace.push_back("P_" + std::to_string(k) + " x" + std::to_string(rk) + " found=" + std::to_string(found.size()));
    }
    rep.kind = CountReport::Kind::Exact;
    rep.count = found.size();
    rep.meter = s.meter;
    return rep;
}

inline CountReport count_or_threshold(const SearchInstance& inst, std::size_t t, Session& s, const PatchRegistry& reg = PatchRegistry::standard()) {
    if (t < 1 || t > inst.n) throw std::invalid_argument("count_or_threshold: 1 <= t <= n");
    auto p1 = part1_filter(inst, t, s, reg);
    std::string line = "part1 R=" + std::to_string(p1.plan.repetitions) + " hits=" + std::to_string(p1.successes) +
                       (p1.case1 ? " CASE1" : " CASE2");
    if (p1.case1) {
        CountReport rep;
        rep.kind = CountReport::Kind::Above;
        rep.t = t;
        rep.meter = s.meter;
        rep.patched = inst;
        rep.trace.push_back(line);
        return rep;
    }
    CountReport rep = protocol_P(inst, t, s, reg);
    rep.trace.insert(rep.trace.begin(), line);
    return rep;
}

inline std::size_t symmetric_threshold(const SymmetricSpec& f) {
    const int g = gamma(f);
    const int t = (f.n - g + 1) / 2;  // ceil((n - Gamma)/2); Gamma = n+1 gives 0
    return t > 0 ? static_cast<std::size_t>(t) : 0;
}

struct EvalReport {
    int8_t value = 1;
    std::size_t t = 0;
    std::optional<CountReport> minus, plus;
    std::string path;  // "constant", "exact-minus", "exact-plus", "interior"
};

// Counts -1s and +1s of z up to t = ceil((n - Gamma)/2) and reads f off the weight.
inline EvalReport eval_symmetric(const SymmetricSpec& f, const Gadget& G, const std::vector<Signs>& X, const std::vector<Signs>& Y, Session& s,
                                 const PatchRegistry& reg = PatchRegistry::standard()) {
    if (static_cast<std::size_t>(f.n) != X.size()) throw std::invalid_argument("eval_symmetric: arity mismatch");
    EvalReport out;
    out.t = symmetric_threshold(f);
    if (out.t == 0) {
        out.value = f.at_weight(0);
        out.path = "constant";
        return out;
    }
    const std::size_t t = std::min<std::size_t>(out.t, static_cast<std::size_t>(f.n));
    const SearchInstance inst(G, X, Y);
    out.minus = count_or_threshold(inst, t, s, reg);
    out.plus = count_or_threshold(inst.negated(), t, s, reg);
    const int n = f.n;
    if (out.minus->exact()) {
        out.value = f.at_weight(static_cast<int>(out.minus->count));
        out.path = "exact-minus";
    } else if (out.plus->exact()) {
        out.value = f.at_weight(n - static_cast<int>(out.plus->count));
        out.path = "exact-plus";
    } else {
        out.value = f.at_weight(std::min(static_cast<int>(t) + 1, n));
        out.path = "interior";
    }
    return out;
}

// Cost model: ceil(c sqrt((n - Gamma) n)) queries at 2 ceil(log n) + 2 qubits each.
inline std::uint64_t bcw_baseline_cost(const SymmetricSpec& f, std::size_t n, double c = 1.0) {
    const int g = gamma(f);
    if (g > f.n) return 0;
    const double q = std::ceil(c * std::sqrt(static_cast<double>(f.n - g) * static_cast<double>(n)) - 1e-9);
    return static_cast<std::uint64_t>(q) * (2 * static_cast<std::uint64_t>(ceil_log2(n)) + 2);
}

}  // namespace qcc
