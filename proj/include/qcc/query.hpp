#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcc/boolfn.hpp"
#include "qcc/statevector.hpp"

namespace qcc {

// Phase oracle |i> -> x_i |i> over a hidden +-1 string; every application is one query.
class QueryOracle {
public:
    explicit QueryOracle(Signs x) : x_(std::move(x)) {}

    std::size_t size() const { return x_.size(); }
    std::uint64_t count() const { return count_; }

    // One query on a register addressing x[offset .. offset+len); indices past len get phase +1.
    // `mask`, when given, multiplies each phase by a classically known sign.
    void apply(CVec& v, std::size_t offset, std::size_t len, const Signs* mask = nullptr) {
        if (offset + len > x_.size()) throw std::out_of_range("oracle: block outside input");
        ++count_;
        for (std::size_t i = 0; i < std::min(len, v.dim()); ++i) {
            int s = x_[offset + i];
            if (mask) s *= (*mask)[i];
            if (s == -1) v[i] = -v[i];
        }
    }
    int8_t query(std::size_t i) {
        ++count_;
        return x_.at(i);
    }

private:
    Signs x_;
    std::uint64_t count_ = 0;
};

// One query: H, phase oracle on the block, H, measure.
inline Signs bernstein_vazirani(QueryOracle& oracle, std::size_t offset, std::size_t n, Rng& rng) {
    const int m = log2_exact(n);
    CVec v = basis_state(n, 0);
    const auto all = qubit_range(0, m);
    hadamard_inplace(v, all);
    oracle.apply(v, offset, n);
    hadamard_inplace(v, all);
    const auto out = measure(v, all, rng);
    return from_index(out.outcome, m);
}
inline Signs bernstein_vazirani(QueryOracle& oracle, Rng& rng) { return bernstein_vazirani(oracle, 0, oracle.size(), rng); }

struct EqualityResult {
    bool equal = true;
    std::size_t index = 0;  // verified differing index when !equal
};

// Grover search for a position where the oracle string differs from the known string b.
// Guesses g = M, M/2, ..., 1 with floor((pi/4) sqrt(M/g)) iterations; a measured index is
// confirmed by one classical query, so EQUAL is never wrong.
inline EqualityResult grover_equality(QueryOracle& a, const Signs& b, std::size_t offset, Rng& rng) {
    const std::size_t m = b.size();
    const std::size_t M = std::max<std::size_t>(2, [&] {
        std::size_t p = 1;
        while (p < m) p <<= 1;
        return p;
    }());
    const int q = log2_exact(M);
    const auto all = qubit_range(0, q);
    const double amp = 1.0 / std::sqrt(static_cast<double>(M));
    for (std::size_t g = M; g >= 1; g /= 2) {
        const auto iters = static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(M) / static_cast<double>(g))));
        CVec v(M);
        for (std::size_t i = 0; i < M; ++i) v[i] = amp;
        for (int it = 0; it < iters; ++it) {
            a.apply(v, offset, m, &b);
            cplx mean{0.0, 0.0};
            for (std::size_t i = 0; i < M; ++i) mean += v[i];
            mean /= static_cast<double>(M);
            for (std::size_t i = 0; i < M; ++i) v[i] = 2.0 * mean - v[i];
        }
        const std::size_t i = measure(v, all, rng).outcome;
        if (i < m && a.query(offset + i) != b[i]) return {false, i};
    }
    return {true, 0};
}

// Input layout: X_1..X_n (j bits each) then Y_1..Y_n (k bits each), j = 2^G.j, k = 2^G.k.
inline int8_t rtilde_hG_query_algorithm(QueryOracle& oracle, const BooleanFunction& r, const Gadget& G, Rng& rng) {
    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t jl = std::size_t{1} << G.j, kl = std::size_t{1} << G.k;
    if (oracle.size() != n * (jl + kl)) throw std::invalid_argument("rtilde_hG: input length mismatch");
    std::vector<Signs> s(n), t(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = bernstein_vazirani(oracle, i * jl, jl, rng);
    for (std::size_t i = 0; i < n; ++i) t[i] = bernstein_vazirani(oracle, n * jl + i * kl, kl, rng);
    std::vector<int8_t> b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = oracle.query(i * jl);  // coordinate 1^{log j}
    for (std::size_t i = 0; i < n; ++i) c[i] = oracle.query(n * jl + i * kl);
    Signs expect;
    expect.reserve(oracle.size());
    for (std::size_t i = 0; i < n; ++i)
        for (auto v : hadamard_codeword(s[i])) expect.push_back(static_cast<int8_t>(b[i] * v));
    for (std::size_t i = 0; i < n; ++i)
        for (auto v : hadamard_codeword(t[i])) expect.push_back(static_cast<int8_t>(c[i] * v));
    if (!grover_equality(oracle, expect, 0, rng).equal) return -1;
    Signs z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = G(s[i], t[i]);
    return r(z);
}

// Classical reference for r o~ h_G on the same layout.
inline int8_t rtilde_hG_classical(const Signs& input, const BooleanFunction& r, const Gadget& G) {
    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t jl = std::size_t{1} << G.j, kl = std::size_t{1} << G.k;
    Signs z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Signs x(input.begin() + static_cast<std::ptrdiff_t>(i * jl), input.begin() + static_cast<std::ptrdiff_t>((i + 1) * jl));
        const auto yo = static_cast<std::ptrdiff_t>(n * jl + i * kl);
        const Signs y(input.begin() + yo, input.begin() + yo + static_cast<std::ptrdiff_t>(kl));
        auto v = hadamardized_value(G, x, y);
        if (!v) return -1;
        z[i] = *v;
    }
    return r(z);
}

}  // namespace qcc
