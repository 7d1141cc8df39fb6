#pragma once

// Slow reference computations used to cross-check the fast routines.

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcc/boolfn.hpp"

namespace qcc::oracle {

// Every (row subset, column subset) pair; only for 2^(rows + cols) <= 2^22.
inline double naive_discrepancy(const Gadget& G, const std::vector<double>& lambda) {
    const std::size_t R = G.rows(), C = G.cols();
    if (R + C > 22) throw std::length_error("naive_discrepancy: too many rectangles");
    double best = 0.0;
    for (std::uint64_t S = 1; S < (std::uint64_t{1} << R); ++S)
        for (std::uint64_t T = 1; T < (std::uint64_t{1} << C); ++T) {
            double v = 0.0;
            for (std::size_t x = 0; x < R; ++x) {
                if (!((S >> x) & 1u)) continue;
                for (std::size_t y = 0; y < C; ++y)
                    if ((T >> y) & 1u) v += G.at(x, y) * lambda[(x << G.k) | y];
            }
            best = std::max(best, std::fabs(v));
        }
    return best;
}

// Column subsets in plain binary order, rows chosen by sign; for shapes too wide for the naive loop.
inline double discrepancy_by_columns(const Gadget& G, const std::vector<double>& lambda) {
    const std::size_t R = G.rows(), C = G.cols();
    if (C > 20) throw std::length_error("discrepancy_by_columns: too many columns");
    double best = 0.0;
    for (std::uint64_t T = 1; T < (std::uint64_t{1} << C); ++T) {
        double pos = 0.0, neg = 0.0;
        for (std::size_t x = 0; x < R; ++x) {
            double r = 0.0;
            for (std::size_t y = 0; y < C; ++y)
                if ((T >> y) & 1u) r += G.at(x, y) * lambda[(x << G.k) | y];
            (r > 0 ? pos : neg) += std::fabs(r);
        }
        best = std::max({best, pos, neg});
    }
    return best;
}

// E|y_1 + ... + y_s| for uniform signs, exactly.
inline mpq_class mean_abs_sign_sum(int s) {
    mpz_class total = 0, binom = 1;
    for (int k = 0; k <= s; ++k) {
        total += binom * std::abs(s - 2 * k);
        binom = binom * (s - k) / (k + 1);
    }
    mpq_class r(total, mpz_class(1) << s);
    r.canonicalize();
    return r;
}

// Under uniform weights, the best column set for a fixed row set S keeps the columns whose
// restricted sum is positive, so disc = max_s E|sum of s signs| / (2n).
inline mpq_class addr_disc_uniform(int n) {
    mpq_class best = 0;
    for (int s = 1; s <= n; ++s) {
        mpq_class v = mean_abs_sign_sum(s) / (2 * n);
        if (v > best) best = v;
    }
    return best;
}

// Best uniform error of a degree-d polynomial on the weights 0..n for a symmetric function:
// max over (d+2)-point reference sets of |sum w_i F(x_i)| / sum |w_i|, w_i the
// divided-difference weights.
inline mpq_class chebyshev_symmetric_error(const SymmetricSpec& f, int d) {
    const int n = f.n;
    if (d >= n) return 0;
    const int m = d + 2;
    mpq_class best = 0;
    std::vector<int> pts(static_cast<std::size_t>(m));
    for (std::uint32_t mask = 0; mask < (1u << (n + 1)); ++mask) {
        if (std::popcount(mask) != m) continue;
        int c = 0;
        for (int w = 0; w <= n; ++w)
            if ((mask >> w) & 1u) pts[static_cast<std::size_t>(c++)] = w;
        mpq_class num = 0, den = 0;
        for (int i = 0; i < m; ++i) {
            mpq_class prod = 1;
            for (int j = 0; j < m; ++j)
                if (j != i) prod *= pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)];
            const mpq_class w = 1 / prod;
            num += w * f.at_weight(pts[static_cast<std::size_t>(i)]);
            den += abs(w);
        }
        const mpq_class v = abs(num) / den;
        if (v > best) best = v;
    }
    return best;
}

inline int chebyshev_symmetric_degree(const SymmetricSpec& f, const mpq_class& eps) {
    for (int d = 0; d <= f.n; ++d)
        if (chebyshev_symmetric_error(f, d) <= eps) return d;
    return f.n;
}

// O(4^n) Fourier coefficients f_hat(S) = 2^-n sum_x f(x) chi_S(x).
inline std::vector<double> naive_fourier(const std::vector<double>& values) {
    const std::size_t N = values.size();
    std::vector<double> out(N, 0.0);
    for (std::size_t S = 0; S < N; ++S) {
        double acc = 0.0;
        for (std::size_t x = 0; x < N; ++x) acc += values[x] * ((std::popcount(S & x) & 1) ? -1.0 : 1.0);
        out[S] = acc / static_cast<double>(N);
    }
    return out;
}

}  // namespace qcc::oracle
