#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qcc {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kTol = 1e-9;
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 24;

// Uniform double in [0,1) from the top 53 bits; portable across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("not a power of 2: " + std::to_string(n));
    return std::countr_zero(n);
}

inline int ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : 64 - std::countl_zero(n - 1); }

class CVec {
public:
    CVec() = default;
    explicit CVec(std::size_t dim) : amps_(check_dim(dim), cplx{0.0, 0.0}) {}
    explicit CVec(std::vector<cplx> amps) : amps_(std::move(amps)) { check_dim(amps_.size()); }

    std::size_t dim() const { return amps_.size(); }
    int qubits() const { return log2_exact(amps_.size()); }

    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    std::vector<cplx>& amps() { return amps_; }
    const std::vector<cplx>& amps() const { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    CVec& operator+=(const CVec& o) {
        same_dim(o);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
        return *this;
    }
    CVec& operator-=(const CVec& o) {
        same_dim(o);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
        return *this;
    }
    CVec& operator*=(cplx c) {
        for (auto& a : amps_) a *= c;
        return *this;
    }
    friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
    friend CVec operator+(CVec a, const CVec& b) { return a += b; }
    friend CVec operator*(cplx c, CVec a) { return a *= c; }

    void same_dim(const CVec& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    }

private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim == 0) throw std::invalid_argument("empty state");
        if (dim > kMaxAmplitudes) throw std::length_error("state exceeds 2^24 amplitudes");
        return dim;
    }
    std::vector<cplx> amps_;
};

inline CVec basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("basis index out of range");
    CVec v(dim);
    v[index] = 1.0;
    return v;
}

// (1/sqrt n) sum_i |i>|i>; Alice holds the high log n qubits.
inline CVec maximally_entangled(std::size_t n) {
    if (n < 2 || !is_pow2(n)) throw std::invalid_argument("maximally_entangled: n must be a power of 2, n >= 2");
    CVec v(n * n);
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = a;
    return v;
}

inline cplx overlap(const CVec& a, const CVec& b) {
    a.same_dim(b);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Qubit q of an m-qubit register is bit (m-1-q) of the basis index.
// A target list (q_0,...,q_{r-1}) addresses the sub-index whose MSB is q_0.
class QubitMap {
public:
    QubitMap(int register_qubits, std::vector<int> targets) : m_(register_qubits), targets_(std::move(targets)) {
        std::uint64_t seen = 0;
        for (int q : targets_) {
            if (q < 0 || q >= m_) throw std::out_of_range("target qubit outside register");
            std::uint64_t bit = std::uint64_t{1} << (m_ - 1 - q);
            if (seen & bit) throw std::invalid_argument("repeated target qubit");
            seen |= bit;
            masks_.push_back(bit);
        }
        mask_ = seen;
    }
    std::size_t sub_index(std::size_t idx) const {
        std::size_t s = 0;
        for (auto b : masks_) s = (s << 1) | ((idx & b) ? 1u : 0u);
        return s;
    }
    std::size_t with_sub_index(std::size_t idx, std::size_t sub) const {
        idx &= ~mask_;
        const std::size_t r = masks_.size();
        for (std::size_t a = 0; a < r; ++a)
            if ((sub >> (r - 1 - a)) & 1u) idx |= masks_[a];
        return idx;
    }
    std::size_t arity() const { return targets_.size(); }
    std::uint64_t mask() const { return mask_; }
    const std::vector<int>& targets() const { return targets_; }

private:
    int m_;
    std::vector<int> targets_;
    std::vector<std::uint64_t> masks_;
    std::uint64_t mask_ = 0;
};

struct DenseOp {
    std::vector<int> qubits;
    std::vector<cplx> matrix;  // row-major 2^r x 2^r
};
struct DiagonalOp {
    std::vector<int> qubits;
    std::function<cplx(std::size_t)> phase;  // on the target sub-index
};
struct PermutationOp {
    std::vector<int> qubits;
    std::function<std::size_t(std::size_t)> map;  // bijection on the target sub-index
};
struct ReflectionOp {
    CVec phi;  // 2|phi><phi| - I
};

class UnitaryOp {
public:
    using Body = std::variant<DenseOp, DiagonalOp, PermutationOp, ReflectionOp>;

    static UnitaryOp dense(std::vector<int> qubits, std::vector<cplx> matrix) {
        const std::size_t d = std::size_t{1} << qubits.size();
        if (matrix.size() != d * d) throw std::invalid_argument("dense op: matrix size mismatch");
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                cplx s{0.0, 0.0};
                for (std::size_t r = 0; r < d; ++r) s += std::conj(matrix[r * d + a]) * matrix[r * d + b];
                if (std::abs(s - (a == b ? 1.0 : 0.0)) > kTol) throw std::invalid_argument("dense op: not unitary");
            }
        return UnitaryOp(DenseOp{std::move(qubits), std::move(matrix)});
    }
    static UnitaryOp diagonal(std::vector<int> qubits, std::function<cplx(std::size_t)> phase) {
        const std::size_t d = std::size_t{1} << qubits.size();
        for (std::size_t s = 0; s < d; ++s)
            if (std::abs(std::abs(phase(s)) - 1.0) > kTol) throw std::invalid_argument("diagonal op: phase not unimodular");
        return UnitaryOp(DiagonalOp{std::move(qubits), std::move(phase)});
    }
    // Phase -1 where pred holds, +1 elsewhere.
    static UnitaryOp phase_flip(std::vector<int> qubits, const std::function<bool(std::size_t)>& pred) {
        return diagonal(std::move(qubits), [pred](std::size_t s) { return pred(s) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0}; });
    }
    static UnitaryOp permutation(std::vector<int> qubits, std::function<std::size_t(std::size_t)> map) {
        const std::size_t d = std::size_t{1} << qubits.size();
        std::vector<char> hit(d, 0);
        for (std::size_t s = 0; s < d; ++s) {
            std::size_t t = map(s);
            if (t >= d || hit[t]) throw std::invalid_argument("permutation op: not a bijection");
            hit[t] = 1;
        }
        return UnitaryOp(PermutationOp{std::move(qubits), std::move(map)});
    }
    static UnitaryOp reflection(CVec phi) {
        if (std::abs(phi.norm() - 1.0) > kTol) throw std::invalid_argument("reflection: phi not normalized");
        return UnitaryOp(ReflectionOp{std::move(phi)});
    }
    static UnitaryOp hadamard(int qubit) {
        const double h = 1.0 / std::sqrt(2.0);
        return dense({qubit}, {h, h, h, -h});
    }

    const Body& body() const { return body_; }

    // Qubits the operator touches; empty means the whole register.
    std::vector<int> targets() const {
        return std::visit(
            [](const auto& b) -> std::vector<int> {
                if constexpr (std::is_same_v<std::decay_t<decltype(b)>, ReflectionOp>) return {};
                else return b.qubits;
            },
            body_);
    }

private:
    explicit UnitaryOp(Body b) : body_(std::move(b)) {}
    Body body_;
};

// In-place application; the by-value overload below is the functional form.
inline void apply_inplace(CVec& v, const UnitaryOp& op) {
    const int m = v.qubits();
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ReflectionOp>) {
                v.same_dim(b.phi);
                const cplx c = 2.0 * overlap(b.phi, v);
                for (std::size_t i = 0; i < v.dim(); ++i) v[i] = c * b.phi[i] - v[i];
            } else if constexpr (std::is_same_v<T, DiagonalOp>) {
                QubitMap qm(m, b.qubits);
                std::vector<cplx> table(std::size_t{1} << qm.arity());
                for (std::size_t s = 0; s < table.size(); ++s) table[s] = b.phase(s);
                for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= table[qm.sub_index(i)];
            } else if constexpr (std::is_same_v<T, PermutationOp>) {
                QubitMap qm(m, b.qubits);
                std::vector<std::size_t> table(std::size_t{1} << qm.arity());
                for (std::size_t s = 0; s < table.size(); ++s) table[s] = b.map(s);
                std::vector<cplx> out(v.dim());
                for (std::size_t i = 0; i < v.dim(); ++i) out[qm.with_sub_index(i, table[qm.sub_index(i)])] = v[i];
                v.amps().swap(out);
            } else {
                QubitMap qm(m, b.qubits);
                const std::size_t d = std::size_t{1} << qm.arity();
                std::vector<cplx> in(d), out(d);
                for (std::size_t base = 0; base < v.dim(); ++base) {
                    if (base & qm.mask()) continue;
                    for (std::size_t s = 0; s < d; ++s) in[s] = v[qm.with_sub_index(base, s)];
                    for (std::size_t r = 0; r < d; ++r) {
                        cplx acc{0.0, 0.0};
                        for (std::size_t c = 0; c < d; ++c) acc += b.matrix[r * d + c] * in[c];
                        out[r] = acc;
                    }
                    for (std::size_t s = 0; s < d; ++s) v[qm.with_sub_index(base, s)] = out[s];
                }
            }
        },
        op.body());
}

inline CVec apply(CVec v, const UnitaryOp& op) {
    apply_inplace(v, op);
    return v;
}

inline void hadamard_inplace(CVec& v, const std::vector<int>& qubits) {
    const int m = v.qubits();
    const double h = 1.0 / std::sqrt(2.0);
    for (int q : qubits) {
        if (q < 0 || q >= m) throw std::out_of_range("hadamard: qubit outside register");
        const std::size_t bit = std::size_t{1} << (m - 1 - q);
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (i & bit) continue;
            const cplx a = v[i], b = v[i | bit];
            v[i] = h * (a + b);
            v[i | bit] = h * (a - b);
        }
    }
}

inline CVec hadamard_transform(CVec v, const std::vector<int>& qubits) {
    hadamard_inplace(v, qubits);
    return v;
}

inline std::vector<int> qubit_range(int first, int count) {
    std::vector<int> q(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) q[static_cast<std::size_t>(i)] = first + i;
    return q;
}

struct Measurement {
    std::size_t outcome;  // sub-index over the measured qubits
    CVec collapsed;
};

inline std::vector<double> marginal_probabilities(const CVec& v, const std::vector<int>& qubits) {
    QubitMap qm(v.qubits(), qubits);
    std::vector<double> p(std::size_t{1} << qm.arity(), 0.0);
    for (std::size_t i = 0; i < v.dim(); ++i) p[qm.sub_index(i)] += std::norm(v[i]);
    return p;
}

inline std::size_t sample_index(const std::vector<double>& p, Rng& rng) {
    double u = uniform01(rng);
    double total = 0.0;
    for (double x : p) total += x;
    u *= total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        acc += p[i];
        last = i;
        if (u < acc) return i;
    }
    return last;
}

inline Measurement measure(const CVec& v, const std::vector<int>& qubits, Rng& rng) {
    if (std::abs(v.norm() - 1.0) > 1e-6) throw std::invalid_argument("measure: state not normalized");
    QubitMap qm(v.qubits(), qubits);
    const auto p = marginal_probabilities(v, qubits);
    const std::size_t out = sample_index(p, rng);
    CVec c(v.dim());
    const double scale = 1.0 / std::sqrt(p[out]);
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (qm.sub_index(i) == out) c[i] = v[i] * scale;
    return {out, std::move(c)};
}

// Cumulative distribution over full basis indices; O(log dim) per draw.
class OutcomeSampler {
public:
    OutcomeSampler() = default;
    explicit OutcomeSampler(const CVec& v) : cdf_(v.dim()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < v.dim(); ++i) {
            acc += std::norm(v[i]);
            cdf_[i] = acc;
        }
    }
    std::size_t draw(Rng& rng) const {
        const double u = uniform01(rng) * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
        if (i >= cdf_.size()) i = cdf_.size() - 1;
        return i;
    }
    double probability(std::size_t i) const { return cdf_[i] - (i ? cdf_[i - 1] : 0.0); }
    std::size_t dim() const { return cdf_.size(); }

private:
    std::vector<double> cdf_;
};

}  // namespace qcc
