#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcc/statevector.hpp"

namespace qcc {

enum class Party : uint8_t { Alice, Bob };

inline const char* party_name(Party p) { return p == Party::Alice ? "A" : "B"; }

struct CostMeter {
    std::uint64_t qubits_sent = 0;
    std::uint64_t epr_consumed = 0;
    std::uint64_t shared_random_bits = 0;
    std::vector<std::pair<std::string, std::uint64_t>> abstract_charges;  // one entry per label, accumulated
    std::uint64_t queries = 0;

    void charge(const std::string& label, std::uint64_t amount) {
        for (auto& [l, a] : abstract_charges)
            if (l == label) {
                a += amount;
                return;
            }
        abstract_charges.emplace_back(label, amount);
    }
    std::uint64_t charged() const {
        std::uint64_t s = 0;
        for (const auto& [l, a] : abstract_charges) s += a;
        return s;
    }
    std::uint64_t charged(const std::string& label) const {
        for (const auto& [l, a] : abstract_charges)
            if (l == label) return a;
        return 0;
    }
    // Shared randomness and queries are not communication.
    std::uint64_t total() const { return qubits_sent + charged(); }

    CostMeter& operator+=(const CostMeter& o) {
        qubits_sent += o.qubits_sent;
        epr_consumed += o.epr_consumed;
        shared_random_bits += o.shared_random_bits;
        queries += o.queries;
        for (const auto& [l, a] : o.abstract_charges) charge(l, a);
        return *this;
    }
};

// Event log; lines are kept only when enabled.
class Transcript {
public:
    explicit Transcript(bool enabled = false) : enabled_(enabled) {}
    bool enabled() const { return enabled_; }
    void send(std::size_t k) { add("SEND " + std::to_string(k)); }
    void charge(const std::string& label, std::uint64_t amount) { add("CHARGE " + label + " " + std::to_string(amount)); }
    void measure(const std::string& reg, std::size_t outcome) { add("MEASURE " + reg + " " + std::to_string(outcome)); }
    void rand(std::size_t k) { add("RAND " + std::to_string(k)); }
    void append(const std::vector<std::string>& lines) {
        if (enabled_) lines_.insert(lines_.end(), lines.begin(), lines.end());
    }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    void add(std::string s) {
        if (enabled_) lines_.push_back(std::move(s));
    }
    bool enabled_;
    std::vector<std::string> lines_;
};

// Affine cost of a modeled approximate reflection: a*ceil(log2(1/eps)) + b.
struct ReflectionCost {
    std::uint64_t scale = 1;
    std::uint64_t offset = 2;
    std::uint64_t operator()(double eps) const {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("reflection cost: eps must lie in (0,1)");
        const double l = std::log2(1.0 / eps);
        // Guard exact powers of two against log2 roundoff.
        const double r = std::round(l);
        const auto c = static_cast<std::uint64_t>(std::abs(l - r) < 1e-12 ? r : std::ceil(l));
        return scale * c + offset;
    }
};

// Pool of prior entanglement; each shared start draws ceil(log n) pairs.
class EprPool {
public:
    explicit EprPool(std::uint64_t budget = UINT64_MAX) : remaining_(budget) {}
    void draw(std::uint64_t pairs) {
        if (pairs > remaining_) throw std::runtime_error("EPR budget exhausted");
        if (remaining_ != UINT64_MAX) remaining_ -= pairs;
    }
    std::uint64_t remaining() const { return remaining_; }

private:
    std::uint64_t remaining_;
};

// Joint subprotocols simulated as unitaries must be registered with a cost rule.
class JointRegistry {
public:
    void add(const std::string& label) { labels_.insert(label); }
    bool contains(const std::string& label) const { return labels_.count(label) > 0; }
    static JointRegistry standard() {
        JointRegistry r;
        r.add("approx_reflection");
        r.add("oracle_G");
        return r;
    }

private:
    std::set<std::string> labels_;
};

class TwoPartyState {
public:
    // Product start: n x n register in |0>|0>, no entanglement drawn.
    static TwoPartyState product(std::size_t n, Transcript* log = nullptr) {
        const int r = log2_exact(n);
        TwoPartyState s(log);
        s.joint_ = basis_state(n * n, 0);
        s.owner_.assign(static_cast<std::size_t>(2 * r), Party::Alice);
        for (int i = r; i < 2 * r; ++i) s.owner_[static_cast<std::size_t>(i)] = Party::Bob;
        s.register_qubits_ = r;
        return s;
    }

    static TwoPartyState init_shared(std::size_t n, EprPool& pool, Transcript* log = nullptr) {
        const int r = log2_exact(n);
        if (r < 1) throw std::invalid_argument("init_shared: n >= 2");
        pool.draw(static_cast<std::uint64_t>(r));
        TwoPartyState s = product(n, log);
        s.joint_ = maximally_entangled(n);
        s.meter_.epr_consumed += static_cast<std::uint64_t>(r);
        return s;
    }
    static TwoPartyState init_shared(std::size_t n, std::uint64_t epr_budget, Transcript* log = nullptr) {
        EprPool pool(epr_budget);
        return init_shared(n, pool, log);
    }

    const CVec& joint() const { return joint_; }
    const std::vector<Party>& owner() const { return owner_; }
    const CostMeter& meter() const { return meter_; }
    CostMeter& meter() { return meter_; }
    int register_qubits() const { return register_qubits_; }
    std::vector<int> alice_register() const { return qubit_range(0, register_qubits_); }
    std::vector<int> bob_register() const { return qubit_range(register_qubits_, register_qubits_); }
    std::vector<int> index_registers() const { return qubit_range(0, 2 * register_qubits_); }

    // Appends a |0> qubit owned by `p`; returns its index.
    int add_qubit(Party p) {
        std::vector<cplx> out(joint_.dim() * 2, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < joint_.dim(); ++i) out[2 * i] = joint_[i];
        joint_ = CVec(std::move(out));
        owner_.push_back(p);
        return static_cast<int>(owner_.size()) - 1;
    }

    // Removes the last qubit, which must be back in |0>.
    void release_last_qubit() {
        if (static_cast<int>(owner_.size()) <= 2 * register_qubits_) throw std::logic_error("release: no auxiliary qubit");
        double leak = 0.0;
        std::vector<cplx> out(joint_.dim() / 2);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = joint_[2 * i];
            leak += std::norm(joint_[2 * i + 1]);
        }
        if (leak > kTol) throw std::logic_error("release: auxiliary qubit not returned to |0>");
        joint_ = CVec(std::move(out));
        owner_.pop_back();
    }

    void local(Party p, const UnitaryOp& op) {
        const auto t = op.targets();
        if (t.empty()) throw std::logic_error("local op must name its target qubits");
        for (int q : t) {
            if (q < 0 || q >= static_cast<int>(owner_.size())) throw std::out_of_range("local op: qubit outside register");
            if (owner_[static_cast<std::size_t>(q)] != p) throw std::logic_error("ownership violation: qubit " + std::to_string(q));
        }
        apply_inplace(joint_, op);
    }

    void send(const std::vector<int>& qubits, Party to) {
        const Party from = to == Party::Alice ? Party::Bob : Party::Alice;
        for (int q : qubits) {
            if (q < 0 || q >= static_cast<int>(owner_.size())) throw std::out_of_range("send: qubit outside register");
            if (owner_[static_cast<std::size_t>(q)] != from) throw std::logic_error("send: qubit " + std::to_string(q) + " not owned by sender");
        }
        for (int q : qubits) owner_[static_cast<std::size_t>(q)] = to;
        meter_.qubits_sent += qubits.size();
        if (log_) log_->send(qubits.size());
    }

    void charge_abstract(const std::string& label, long long amount) {
        if (amount < 0) throw std::invalid_argument("charge_abstract: negative amount");
        meter_.charge(label, static_cast<std::uint64_t>(amount));
        if (log_) log_->charge(label, static_cast<std::uint64_t>(amount));
    }

    // A modeled subprotocol acting on the whole joint register; charged before it runs.
    template <class Fn>
    void joint(const JointRegistry& reg, const std::string& label, std::uint64_t amount, Fn&& action) {
        if (!reg.contains(label)) throw std::logic_error("unregistered joint operation: " + label);
        charge_abstract(label, static_cast<long long>(amount));
        action(joint_);
    }

    std::vector<uint8_t> shared_random(std::size_t bits, Rng& rng) {
        std::vector<uint8_t> out(bits);
        for (auto& b : out) b = static_cast<uint8_t>(rng() >> 63);
        meter_.shared_random_bits += bits;
        if (log_ && bits) log_->rand(bits);
        return out;
    }

    std::size_t measure(Party p, const std::vector<int>& qubits, Rng& rng) {
        for (int q : qubits)
            if (owner_[static_cast<std::size_t>(q)] != p) throw std::logic_error("measure: qubit not owned by measuring party");
        auto m = qcc::measure(joint_, qubits, rng);
        joint_ = std::move(m.collapsed);
        if (log_) log_->measure(party_name(p), m.outcome);
        return m.outcome;
    }

private:
    explicit TwoPartyState(Transcript* log) : log_(log) {}
    CVec joint_;
    std::vector<Party> owner_;
    CostMeter meter_;
    int register_qubits_ = 0;
    Transcript* log_ = nullptr;
};

// Shared-randomness helpers metered against a standalone meter (no quantum state needed).
class SharedCoins {
public:
    SharedCoins(Rng& rng, CostMeter& meter, Transcript* log = nullptr) : rng_(rng), meter_(meter), log_(log) {}

    std::uint64_t bits(int count) {
        if (count == 0) return 0;
        const std::uint64_t v = rng_() >> (64 - count);
        meter_.shared_random_bits += static_cast<std::uint64_t>(count);
        if (log_) log_->rand(static_cast<std::size_t>(count));
        return v;
    }
    // Uniform in [0, bound) by rejection on ceil(log2 bound)-bit draws.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const int w = ceil_log2(bound);
        for (;;) {
            const std::uint64_t v = bits(w);
            if (v < bound) return v;
        }
    }
    // Uniform size-s subset of {0..n-1}, sorted.
    std::vector<std::size_t> subset(std::size_t n, std::size_t s) {
        if (s > n) throw std::invalid_argument("subset larger than ground set");
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = 0; i < s; ++i) std::swap(perm[i], perm[i + below(n - i)]);
        std::vector<std::size_t> out(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Rng& rng_;
    CostMeter& meter_;
    Transcript* log_;
};

}  // namespace qcc
