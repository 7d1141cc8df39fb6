#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcc {

// Sign tests per scalar type: exact for rationals, tolerant for doubles.
template <class T>
struct LpTraits;

template <>
struct LpTraits<mpq_class> {
    static int sign(const mpq_class& v) { return sgn(v); }
    static int sign_feasibility(const mpq_class& v) { return sgn(v); }
    static double to_double(const mpq_class& v) { return v.get_d(); }
    static void chop(mpq_class&) {}
};

template <>
struct LpTraits<double> {
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kFeasTol = 1e-7;
    static int sign(double v) { return v > kPivotTol ? 1 : (v < -kPivotTol ? -1 : 0); }
    static int sign_feasibility(double v) { return v > kFeasTol ? 1 : (v < -kFeasTol ? -1 : 0); }
    static double to_double(double v) { return v; }
    static void chop(double& v) {
        if (std::fabs(v) < 1e-14) v = 0.0;
    }
};

// Best rational approximation by continued fractions; recovers 1/3 from 0.333...
inline mpq_class rational_from_double(double x, long max_den = 1000000, double tol = 1e-12) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    const bool neg = x < 0;
    double r = std::fabs(x);
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        const mpz_class ai(a);
        const mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        const double approx = mpq_class(h1, k1).get_d();
        if (std::fabs(approx - std::fabs(x)) <= tol * std::max(1.0, std::fabs(x))) break;
        const double frac = r - a;
        if (frac < 1e-300) break;
        r = 1.0 / frac;
    }
    mpq_class q(h1, k1);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

enum class RowSense { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

// minimize c.x subject to rows, x >= 0.
template <class T>
struct LinearProgram {
    std::size_t vars = 0;
    std::vector<T> cost;
    std::vector<std::vector<T>> rows;
    std::vector<RowSense> sense;
    std::vector<T> rhs;

    explicit LinearProgram(std::size_t n) : vars(n), cost(n, T(0)) {}
    void add_row(std::vector<T> a, RowSense s, T b) {
        if (a.size() != vars) throw std::invalid_argument("lp: row width mismatch");
        rows.push_back(std::move(a));
        sense.push_back(s);
        rhs.push_back(std::move(b));
    }
};

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    T objective = T(0);
    std::vector<T> x;
    std::uint64_t pivots = 0;
};

// Dense two-phase tableau simplex, Bland's rule throughout.
template <class T>
class Simplex {
public:
    explicit Simplex(std::uint64_t max_pivots = 2000000) : max_pivots_(max_pivots) {}

    LpSolution<T> solve(const LinearProgram<T>& lp) {
        using Tr = LpTraits<T>;
        const std::size_t m = lp.rows.size(), n = lp.vars;
        // Column layout: originals | slack/surplus | artificials | rhs.
        std::size_t n_slack = 0;
        for (auto s : lp.sense)
            if (s != RowSense::Eq) ++n_slack;
        std::vector<std::vector<T>> a(m);
        std::vector<RowSense> sense(lp.sense);
        std::vector<T> b(lp.rhs);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = lp.rows[i];
            if (b[i] < T(0)) {
                for (auto& v : a[i]) v = -v;
                b[i] = -b[i];
                if (sense[i] == RowSense::Le) sense[i] = RowSense::Ge;
                else if (sense[i] == RowSense::Ge) sense[i] = RowSense::Le;
            }
        }
        std::size_t n_art = 0;
        for (auto s : sense)
            if (s != RowSense::Le) ++n_art;
        art_begin_ = n + n_slack;
        cols_ = art_begin_ + n_art;
        tab_.assign(m, std::vector<T>(cols_ + 1, T(0)));
        basis_.assign(m, 0);
        std::size_t sc = n, ac = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) tab_[i][j] = a[i][j];
            tab_[i][cols_] = b[i];
            if (sense[i] == RowSense::Le) {
                tab_[i][sc] = T(1);
                basis_[i] = sc++;
            } else {
                if (sense[i] == RowSense::Ge) tab_[i][sc++] = T(-1);
                tab_[i][ac] = T(1);
                basis_[i] = ac++;
            }
        }
        LpSolution<T> out;
        // Phase 1: minimize the sum of artificials.
        if (n_art > 0) {
            std::vector<T> c1(cols_, T(0));
            for (std::size_t j = art_begin_; j < cols_; ++j) c1[j] = T(1);
            if (!optimize(c1, cols_, out.pivots)) throw std::logic_error("simplex: phase 1 unbounded");
            if (Tr::sign_feasibility(objective(c1)) > 0) {
                out.status = LpStatus::Infeasible;
                return out;
            }
            drive_out_artificials(out.pivots);
        }
        // Phase 2 on originals and slacks only.
        std::vector<T> c2(cols_, T(0));
        for (std::size_t j = 0; j < n; ++j) c2[j] = lp.cost[j];
        if (!optimize(c2, art_begin_, out.pivots)) {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.status = LpStatus::Optimal;
        out.x.assign(n, T(0));
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (basis_[i] < n) out.x[basis_[i]] = tab_[i][cols_];
        out.objective = T(0);
        for (std::size_t j = 0; j < n; ++j) out.objective += lp.cost[j] * out.x[j];
        return out;
    }

private:
    T objective(const std::vector<T>& c) const {
        T v(0);
        for (std::size_t i = 0; i < tab_.size(); ++i) v += c[basis_[i]] * tab_[i][cols_];
        return v;
    }

    // Reduced costs d_j = c_j - c_B B^-1 A_j over columns [0, limit).
    std::vector<T> reduced_costs(const std::vector<T>& c, std::size_t limit) const {
        std::vector<T> d(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(limit));
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            const T& cb = c[basis_[i]];
            if (cb == T(0)) continue;
            for (std::size_t j = 0; j < limit; ++j)
                if (tab_[i][j] != T(0)) d[j] -= cb * tab_[i][j];
        }
        return d;
    }

    void pivot(std::size_t r, std::size_t col) {
        auto& pr = tab_[r];
        const T p = pr[col];
        for (auto& v : pr)
            if (v != T(0)) v /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == r) continue;
            const T f = tab_[i][col];
            if (f == T(0)) continue;
            auto& row = tab_[i];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (pr[j] != T(0)) {
                    row[j] -= f * pr[j];
                    LpTraits<T>::chop(row[j]);
                }
            row[col] = T(0);
        }
        basis_[r] = col;
    }

    // Returns false when unbounded.
    bool optimize(const std::vector<T>& c, std::size_t limit, std::uint64_t& pivots) {
        using Tr = LpTraits<T>;
        std::vector<T> d = reduced_costs(c, limit);
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (Tr::sign(d[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == limit) return true;
            std::size_t leave = tab_.size();
            T best(0);
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (Tr::sign(tab_[i][enter]) <= 0) continue;
                const T ratio = tab_[i][cols_] / tab_[i][enter];
                bool take = leave == tab_.size();
                if (!take) {
                    const int cmp = Tr::sign(ratio - best);
                    take = cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave]);
                }
                if (take) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == tab_.size()) return false;
            pivot(leave, enter);
            const T de = d[enter];
            for (std::size_t j = 0; j < limit; ++j)
                if (tab_[leave][j] != T(0)) d[j] -= de * tab_[leave][j];
            d[enter] = T(0);
            if (++pivots > max_pivots_) throw std::runtime_error("simplex: pivot limit reached without convergence");
        }
    }

    void drive_out_artificials(std::uint64_t& pivots) {
        for (std::size_t i = 0; i < tab_.size();) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            std::size_t col = art_begin_;
            for (std::size_t j = 0; j < art_begin_; ++j)
                if (LpTraits<T>::sign(tab_[i][j]) != 0) {
                    col = j;
                    break;
                }
            if (col == art_begin_) {
                // Redundant row.
                tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col);
            ++pivots;
            ++i;
        }
    }

    std::uint64_t max_pivots_;
    std::vector<std::vector<T>> tab_;
    std::vector<std::size_t> basis_;
    std::size_t art_begin_ = 0, cols_ = 0;
};

template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp) {
    return Simplex<T>().solve(lp);
}

}  // namespace qcc
