#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcc/amplamp.hpp"
#include "qcc/boolfn.hpp"
#include "qcc/runtime.hpp"
#include "qcc/statevector.hpp"

namespace qcc {

struct PatchInputs {
    Signs x, y;
};

// Pre-agreed inputs used to overwrite a found solution.
class PatchRegistry {
public:
    static PatchRegistry standard() {
        PatchRegistry r;
        r.set("and2", 1, {{1}, {1}});
        r.set("xor2", 1, {{1}, {1}});
        r.set("-and2", 1, {{-1}, {-1}});
        return r;
    }
    void set(const std::string& gadget, int8_t value, PatchInputs in) { entries_[{gadget, value}] = std::move(in); }

    // Registered entry, else the first table entry with the requested value.
    PatchInputs lookup(const Gadget& G, int8_t value = 1) const {
        if (auto it = entries_.find({G.name, value}); it != entries_.end()) return it->second;
        for (std::size_t x = 0; x < G.rows(); ++x)
            for (std::size_t y = 0; y < G.cols(); ++y)
                if (G.at(x, y) == value) return {from_index(x, G.j), from_index(y, G.k)};
        throw std::invalid_argument("gadget " + G.name + " never takes value " + std::to_string(value));
    }

private:
    std::map<std::pair<std::string, int8_t>, PatchInputs> entries_;
};

struct SearchInstance {
    std::size_t n = 0;
    Gadget G;
    std::vector<Signs> X, Y;

    SearchInstance() = default;
    SearchInstance(Gadget g, std::vector<Signs> xs, std::vector<Signs> ys) : n(xs.size()), G(std::move(g)), X(std::move(xs)), Y(std::move(ys)) {
        if (n < 2 || !is_pow2(n)) throw std::invalid_argument("SearchInstance: n must be a power of 2, n >= 2");
        if (Y.size() != n) throw std::invalid_argument("SearchInstance: X and Y sizes differ");
        for (std::size_t i = 0; i < n; ++i)
            if (static_cast<int>(X[i].size()) != G.j || static_cast<int>(Y[i].size()) != G.k)
                throw std::invalid_argument("SearchInstance: block width mismatch");
    }

    int8_t value(std::size_t i, std::size_t j) const { return G(X[i], Y[j]); }
    Signs z() const {
        Signs out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = value(i, i);
        return out;
    }
    std::size_t solutions() const { return static_cast<std::size_t>(weight(z())); }
    void patch(std::size_t i, const PatchInputs& p) {
        X.at(i) = p.x;
        Y.at(i) = p.y;
    }
    SearchInstance negated() const { return SearchInstance(G.negated(), X, Y); }

    // Instance whose z is `z`, using the registry inputs for each value.
    static SearchInstance planted(const Gadget& G, const Signs& z, const PatchRegistry& reg = PatchRegistry::standard()) {
        const PatchInputs pos = reg.lookup(G, 1), neg = reg.lookup(G, -1);
        std::vector<Signs> xs, ys;
        for (auto v : z) {
            const auto& p = v == -1 ? neg : pos;
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
        return SearchInstance(G, std::move(xs), std::move(ys));
    }
};

enum class Backend { Joint, Sector };

inline const char* backend_name(Backend b) { return b == Backend::Joint ? "joint" : "sector"; }

struct ProtocolConstants {
    ReflectionCost reflection;
    EpsilonSchedule eps;
    double per_run_success = 0.14;     // per-run floor 0.4^2 minus slack
    double search_miss = 0.01;         // search_unknown target miss probability
    double pk_success_floor = 0.01;    // P_k per-run floor; budget factor is 2 / floor
    int pk_rep_offset = 5;             // r_k = ceil(log2(2t)) - k + offset
    double part1_error = 1.0 / 16.0;
    double bcw_c = 1.0;
    bool index_exchange = true;        // charge 2*log n for swapping measured indices

    int reps_per_level() const {
        return static_cast<int>(std::ceil(std::log(1.0 / search_miss) / std::log(1.0 / (1.0 - per_run_success))));
    }
    double pk_budget_factor() const { return 2.0 / pk_success_floor; }
};

// Pre-measurement outcome distribution and meter delta of one amplification run.
struct RunRecord {
    OutcomeSampler sampler;
    CostMeter meter;
    std::vector<std::string> transcript;
    std::size_t n = 0;
    bool sector = false;
};

// Memo of run records keyed by everything that determines the pre-measurement state.
class SimCache {
public:
    explicit SimCache(std::size_t max_bytes = std::size_t{256} << 20) : max_bytes_(max_bytes) {}
    std::shared_ptr<const RunRecord> find(const std::string& key) const {
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : it->second;
    }
    void insert(const std::string& key, std::shared_ptr<const RunRecord> rec) {
        const std::size_t b = rec->sampler.dim() * sizeof(double) + key.size();
        if (bytes_ + b > max_bytes_) {
            map_.clear();
            bytes_ = 0;
        }
        bytes_ += b;
        map_.emplace(key, std::move(rec));
    }
    std::size_t size() const { return map_.size(); }
    std::uint64_t hits = 0, misses = 0;

private:
    std::unordered_map<std::string, std::shared_ptr<const RunRecord>> map_;
    std::size_t bytes_ = 0;
    std::size_t max_bytes_;
};

// Per-trial protocol context. Holds references; not shareable across threads.
struct Session {
    Rng& rng;
    CostMeter& meter;
    const ProtocolConstants& constants;
    NoiseModel noise;
    Backend backend = Backend::Sector;
    EprPool* pool = nullptr;
    Transcript* log = nullptr;
    SimCache* cache = nullptr;
    JointRegistry registry = JointRegistry::standard();
};

inline bool explicit_and2(const Gadget& G) { return G.name == "and2" && G.j == 1 && G.k == 1; }

// O_G on the joint index registers; phase G(X_i, Y_j) on |i>|j>.
// AND_2 runs the auxiliary-qubit protocol gate by gate; other gadgets are a charged joint diagonal.
inline void oracle_reflection(TwoPartyState& st, const SearchInstance& inst, const JointRegistry& reg, bool force_modeled = false) {
    const std::size_t n = inst.n;
    const int r = st.register_qubits();
    if ((std::size_t{1} << r) != n) throw std::invalid_argument("oracle_reflection: register size mismatch");
    if (explicit_and2(inst.G) && !force_modeled) {
        const int aux = st.add_qubit(Party::Alice);
        std::vector<int> a_targets = st.alice_register();
        a_targets.push_back(aux);
        auto xor_in = UnitaryOp::permutation(a_targets, [&](std::size_t s) {
            const std::size_t i = s >> 1;
            return s ^ (inst.X[i][0] == -1 ? 1u : 0u);
        });
        st.local(Party::Alice, xor_in);
        st.send({aux}, Party::Bob);
        std::vector<int> b_targets{aux};
        for (int q : st.bob_register()) b_targets.push_back(q);
        st.local(Party::Bob, UnitaryOp::phase_flip(b_targets, [&](std::size_t s) {
            const std::size_t b = s >> r, j = s & (n - 1);
            return b == 1 && inst.Y[j][0] == -1;
        }));
        st.send({aux}, Party::Alice);
        st.local(Party::Alice, xor_in);
        st.release_last_qubit();
        return;
    }
    std::vector<int8_t> phase(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) phase[i * n + j] = inst.value(i, j);
    st.joint(reg, "oracle_G", 2 * static_cast<std::uint64_t>(inst.G.q), [&](CVec& v) {
        for (std::size_t x = 0; x < v.dim(); ++x)
            if (phase[x] == -1) v[x] = -v[x];
    });
}

inline void approx_reflect(TwoPartyState& st, double eps, const NoisyReflection& refl, const ReflectionCost& cost, const JointRegistry& reg,
                           bool inverse = false) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("approx_reflect: eps must lie in (0,1)");
    st.joint(reg, "approx_reflection", cost(eps), [&](CVec& v) { refl.apply(v, inverse); });
}

inline std::string run_key(const SearchInstance& inst, int k, const Session& s) {
    std::string key;
    key.reserve(64 + inst.n * static_cast<std::size_t>(inst.G.j + inst.G.k));
    key += backend_name(s.backend);
    key += '|' + inst.G.name + '|' + std::to_string(inst.n) + '|' + std::to_string(k) + '|' + s.noise.describe();
    key += '|' + std::to_string(s.constants.eps.base) + '|' + std::to_string(s.constants.eps.ratio);
    key += '|' + std::to_string(s.constants.reflection.scale) + '|' + std::to_string(s.constants.reflection.offset) + '|';
    if (s.backend == Backend::Sector) {
        for (auto v : inst.z()) key += static_cast<char>(v);
    } else {
        for (const auto& b : inst.X)
            for (auto v : b) key += static_cast<char>(v);
        key += '/';
        for (const auto& b : inst.Y)
            for (auto v : b) key += static_cast<char>(v);
    }
    return key;
}

// k amplification rounds starting from the shared maximally entangled state, up to measurement.
inline std::shared_ptr<const RunRecord> simulate_run(const SearchInstance& inst, int k, const Session& s) {
    const std::size_t n = inst.n;
    const std::uint64_t r = static_cast<std::uint64_t>(log2_exact(n));
    auto rec = std::make_shared<RunRecord>();
    rec->n = n;
    Transcript tlog(s.log != nullptr && s.log->enabled());
    if (s.backend == Backend::Joint) {
        EprPool unlimited;
        TwoPartyState st = TwoPartyState::init_shared(n, unlimited, &tlog);
        std::vector<NoisyReflection> refl;
        for (int j = 1; j <= k; ++j) refl.emplace_back(st.joint(), s.constants.eps(j), s.noise, j);
        amplify(
            k, [&] { oracle_reflection(st, inst, s.registry); },
            [&](int j, bool inverse) {
                approx_reflect(st, s.constants.eps(j), refl[static_cast<std::size_t>(j - 1)], s.constants.reflection, s.registry, inverse);
            },
            [](int) {});
        rec->sampler = OutcomeSampler(st.joint());
        rec->meter = st.meter();
    } else {
        // The maximally entangled start, the diagonal O_G, and every reflection realization
        // preserve span{|i>|i>}, so the run is simulated on those n amplitudes.
        CVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(n));
        const CVec psi = v;
        const Signs z = inst.z();
        std::vector<NoisyReflection> refl;
        for (int j = 1; j <= k; ++j)
            refl.emplace_back(psi, s.constants.eps(j), s.noise, j, [n](std::size_t i) { return static_cast<std::uint64_t>(i * n + i); });
        CostMeter& m = rec->meter;
        m.epr_consumed += r;
        const bool and2 = explicit_and2(inst.G);
        amplify(
            k,
            [&] {
                for (std::size_t i = 0; i < n; ++i)
                    if (z[i] == -1) v[i] = -v[i];
                if (and2) {
                    m.qubits_sent += 2;
                    tlog.send(1);
                    tlog.send(1);
                } else {
                    const std::uint64_t c = 2 * static_cast<std::uint64_t>(inst.G.q);
                    m.charge("oracle_G", c);
                    tlog.charge("oracle_G", c);
                }
            },
            [&](int j, bool inverse) {
                const std::uint64_t c = s.constants.reflection(s.constants.eps(j));
                m.charge("approx_reflection", c);
                tlog.charge("approx_reflection", c);
                refl[static_cast<std::size_t>(j - 1)].apply(v, inverse);
            },
            [](int) {});
        rec->sampler = OutcomeSampler(v);
        rec->sector = true;
    }
    rec->transcript = tlog.lines();
    return rec;
}

inline std::shared_ptr<const RunRecord> run_record(const SearchInstance& inst, int k, Session& s) {
    if (!s.cache) return simulate_run(inst, k, s);
    const std::string key = run_key(inst, k, s);
    if (auto hit = s.cache->find(key)) {
        ++s.cache->hits;
        return hit;
    }
    ++s.cache->misses;
    auto rec = simulate_run(inst, k, s);
    s.cache->insert(key, rec);
    return rec;
}

// One amplification run with guess t, joint measurement, and verification of a collision.
inline std::optional<std::size_t> search_known_t(const SearchInstance& inst, std::size_t t, Session& s) {
    const std::size_t n = inst.n;
    if (t < 1 || t > n) throw std::invalid_argument("search_known_t: 1 <= t <= n");
    const int k = iteration_count(grover_angle(t, n));
    const std::uint64_t r = static_cast<std::uint64_t>(log2_exact(n));
    if (s.pool) s.pool->draw(r);
    auto rec = run_record(inst, k, s);
    s.meter += rec->meter;
    if (s.log) s.log->append(rec->transcript);
    const std::size_t idx = rec->sampler.draw(s.rng);
    const std::size_t i = rec->sector ? idx : idx / n;
    const std::size_t j = rec->sector ? idx : idx % n;
    if (s.log) {
        s.log->measure("A", i);
        s.log->measure("B", j);
    }
    if (s.constants.index_exchange) {
        s.meter.charge("index_exchange", 2 * r);
        if (s.log) s.log->charge("index_exchange", 2 * r);
    }
    if (i != j) return std::nullopt;
    const auto q = static_cast<std::uint64_t>(inst.G.q);
    s.meter.charge("verify_G", q);
    if (s.log) s.log->charge("verify_G", q);
    if (inst.value(i, i) == -1) return i;
    return std::nullopt;
}

// Guesses t = n, n/2, ..., 1 with up to reps_per_level runs each.
inline std::optional<std::size_t> search_unknown(const SearchInstance& inst, Session& s) {
    const int reps = s.constants.reps_per_level();
    for (std::size_t t = inst.n; t >= 1; t /= 2) {
        for (int rep = 0; rep < reps; ++rep)
            if (auto hit = search_known_t(inst, t, s)) return hit;
    }
    return std::nullopt;
}

// Closed-form cost of one search_known_t run, excluding the verification charge.
inline std::uint64_t search_run_cost(std::size_t n, std::size_t t, const Gadget& G, const ProtocolConstants& c) {
    const int k = iteration_count(grover_angle(t, n));
    const std::uint64_t oracle = explicit_and2(G) ? 2 : 2 * static_cast<std::uint64_t>(G.q);
    std::uint64_t ck = 0;
    for (int j = 1; j <= k; ++j) ck = 3 * ck + c.reflection(c.eps(j)) + oracle;
    const std::uint64_t r = static_cast<std::uint64_t>(log2_exact(n));
    return ck + (c.index_exchange ? 2 * r : 0);
}

}  // namespace qcc
