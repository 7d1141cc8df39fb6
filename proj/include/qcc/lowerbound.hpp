#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/boolfn.hpp"
#include "qcc/fourier.hpp"
#include "qcc/lp.hpp"

namespace qcc {

inline constexpr int kMaxLpArity = 8;
inline constexpr int kMaxExactLpArity = 5;
inline constexpr int kMaxDiscSide = 24;  // subsets of the smaller side are enumerated

using Distribution = std::vector<double>;

inline int8_t character(std::size_t S, std::size_t x) { return parity_sign(S & x); }

inline std::vector<std::size_t> monomials_up_to(int n, int d) {
    std::vector<std::size_t> out;
    for (std::size_t S = 0; S < (std::size_t{1} << n); ++S)
        if (std::popcount(S) <= d) out.push_back(S);
    return out;
}

inline void check_lp_arity(int n, const char* what) {
    if (n < 0 || n > kMaxLpArity) throw std::length_error(std::string(what) + ": arity exceeds LP cap of " + std::to_string(kMaxLpArity));
}

// ---- best uniform approximation at a fixed degree ----

struct PolyFit {
    double error = 0.0;
    bool within = false;  // optimum <= eps, decided in the solver's arithmetic
    std::vector<std::size_t> monomials;
    std::vector<double> coeff;
};

template <class T>
PolyFit best_approximation_as(const BooleanFunction& f, int d, const T& eps = T(0)) {
    const auto mons = monomials_up_to(f.n, d);
    const std::size_t M = mons.size(), N = f.size();
    LinearProgram<T> lp(2 * M + 1);
    lp.cost[2 * M] = T(1);
    for (std::size_t x = 0; x < N; ++x) {
        std::vector<T> up(2 * M + 1, T(0)), down(2 * M + 1, T(0));
        for (std::size_t m = 0; m < M; ++m) {
            const int c = character(mons[m], x);
            up[2 * m] = T(c), up[2 * m + 1] = T(-c);
            down[2 * m] = T(-c), down[2 * m + 1] = T(c);
        }
        up[2 * M] = T(-1), down[2 * M] = T(-1);
        lp.add_row(std::move(up), RowSense::Le, T(f.table[x]));
        lp.add_row(std::move(down), RowSense::Le, T(-f.table[x]));
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error(std::string("best approximation LP: ") + lp_status_name(sol.status));
    PolyFit fit;
    fit.error = LpTraits<T>::to_double(sol.objective);
    fit.within = LpTraits<T>::sign_feasibility(sol.objective - eps) <= 0;
    fit.monomials = mons;
    for (std::size_t m = 0; m < M; ++m) fit.coeff.push_back(LpTraits<T>::to_double(sol.x[2 * m] - sol.x[2 * m + 1]));
    return fit;
}

inline PolyFit best_approximation(const BooleanFunction& f, int d) {
    check_lp_arity(f.n, "best_approximation");
    return f.n <= kMaxExactLpArity ? best_approximation_as<mpq_class>(f, d) : best_approximation_as<double>(f, d);
}

inline double max_deviation(const BooleanFunction& f, const PolyFit& p) {
    double worst = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        double v = 0.0;
        for (std::size_t m = 0; m < p.monomials.size(); ++m) v += p.coeff[m] * character(p.monomials[m], x);
        worst = std::max(worst, std::fabs(v - f.table[x]));
    }
    return worst;
}

// ---- dual witnesses ----

struct DualWitness {
    int n = 0;
    int degree = 0;  // psi is orthogonal to every monomial of degree < degree
    std::vector<double> psi;
    double correlation = 0.0;
};

// max sum f psi subject to sum |psi| <= 1 and psi orthogonal to degree < d; value equals the
// best error of degree d-1.
struct WitnessLp {
    double value = 0.0;
    bool above = false;  // value > eps in the solver's arithmetic
    std::vector<double> psi;
};

template <class T>
WitnessLp witness_lp_as(const BooleanFunction& f, int d, const T& eps) {
    const std::size_t N = f.size();
    LinearProgram<T> lp(2 * N);
    for (std::size_t x = 0; x < N; ++x) {
        lp.cost[x] = T(-f.table[x]);
        lp.cost[N + x] = T(f.table[x]);
    }
    lp.add_row(std::vector<T>(2 * N, T(1)), RowSense::Le, T(1));
    for (auto S : monomials_up_to(f.n, d - 1)) {
        std::vector<T> row(2 * N);
        for (std::size_t x = 0; x < N; ++x) {
            const int c = character(S, x);
            row[x] = T(c);
            row[N + x] = T(-c);
        }
        lp.add_row(std::move(row), RowSense::Eq, T(0));
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error(std::string("dual witness LP: ") + lp_status_name(sol.status));
    WitnessLp out;
    out.value = -LpTraits<T>::to_double(sol.objective);
    out.above = LpTraits<T>::sign_feasibility(-sol.objective - eps) > 0;
    out.psi.resize(N);
    for (std::size_t x = 0; x < N; ++x) out.psi[x] = LpTraits<T>::to_double(sol.x[x] - sol.x[N + x]);
    return out;
}

inline std::optional<DualWitness> dual_witness(const BooleanFunction& f, int d, double eps = 1.0 / 3.0) {
    check_lp_arity(f.n, "dual_witness");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("dual_witness: eps must lie in (0,1)");
    if (d <= 0) throw std::invalid_argument("dual_witness: d >= 1");
    if (d > f.n) return std::nullopt;  // every function is a polynomial of degree n
    WitnessLp lp = f.n <= kMaxExactLpArity ? witness_lp_as<mpq_class>(f, d, rational_from_double(eps)) : witness_lp_as<double>(f, d, eps);
    if (!lp.above) return std::nullopt;
    auto& psi = lp.psi;
    double l1 = 0.0;
    for (double v : psi) l1 += std::fabs(v);
    for (double& v : psi) v /= l1;
    DualWitness w{f.n, d, std::move(psi), 0.0};
    for (std::size_t x = 0; x < f.size(); ++x) w.correlation += f.table[x] * w.psi[x];
    return w;
}

struct WitnessCheck {
    double l1 = 0.0;
    double max_low_coefficient = 0.0;  // |sum_x psi(x) chi_S(x)| over |S| < degree
    double correlation = 0.0;
    bool ok = false;
};

inline WitnessCheck verify_witness(const BooleanFunction& f, const DualWitness& w, double eps) {
    WitnessCheck c;
    for (std::size_t x = 0; x < f.size(); ++x) {
        c.l1 += std::fabs(w.psi[x]);
        c.correlation += f.table[x] * w.psi[x];
    }
    const Spectrum s = walsh_hadamard(w.psi);
    for (auto S : monomials_up_to(f.n, w.degree - 1))
        c.max_low_coefficient = std::max(c.max_low_coefficient, std::fabs(s.coeff[S]) * static_cast<double>(f.size()));
    c.ok = std::fabs(c.l1 - 1.0) <= 1e-9 && c.max_low_coefficient <= 1e-8 && c.correlation > eps;
    return c;
}

struct ApproxDegreeReport {
    int degree = 0;
    std::vector<double> errors;  // best error at d = 0 .. degree
    bool exact_arithmetic = false;
    std::optional<DualWitness> witness;
};

// Least d whose best degree-d error is <= eps, confirmed against both the primal
// polynomial and a dual witness at that degree.
inline ApproxDegreeReport approx_degree_report(const BooleanFunction& f, double eps = 1.0 / 3.0) {
    check_lp_arity(f.n, "approx_degree");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("approx_degree: eps must lie in (0,1)");
    ApproxDegreeReport rep;
    rep.exact_arithmetic = f.n <= kMaxExactLpArity;
    const mpq_class eps_q = rational_from_double(eps);
    int d = 0;
    for (; d < f.n; ++d) {
        const PolyFit fit = rep.exact_arithmetic ? best_approximation_as<mpq_class>(f, d, eps_q) : best_approximation_as<double>(f, d, eps);
        rep.errors.push_back(fit.error);
        const bool within = fit.within;
        if (within && max_deviation(f, fit) > eps + 1e-6) throw std::logic_error("approx_degree: primal solution fails re-check");
        if (within) break;
    }
    if (d == f.n) rep.errors.push_back(0.0);
    rep.degree = d;
    if (d > 0) {
        rep.witness = dual_witness(f, d, eps);
        if (!rep.witness || !verify_witness(f, *rep.witness, eps).ok)
            throw std::logic_error("approx_degree: no verified dual witness at degree " + std::to_string(d));
    }
    return rep;
}

inline int approx_degree(const BooleanFunction& f, double eps = 1.0 / 3.0) { return approx_degree_report(f, eps).degree; }

// min sum_S |p_hat(S)| subject to |p(x) - f(x)| <= eps.
template <class T>
double approx_spectral_norm_as(const BooleanFunction& f, const T& eps) {
    const std::size_t N = f.size();
    LinearProgram<T> lp(2 * N);
    for (auto& c : lp.cost) c = T(1);
    for (std::size_t x = 0; x < N; ++x) {
        std::vector<T> row(2 * N);
        for (std::size_t S = 0; S < N; ++S) {
            const int c = character(S, x);
            row[S] = T(c);
            row[N + S] = T(-c);
        }
        lp.add_row(row, RowSense::Le, T(f.table[x]) + eps);
        lp.add_row(std::move(row), RowSense::Ge, T(f.table[x]) - eps);
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error(std::string("spectral norm LP: ") + lp_status_name(sol.status));
    return LpTraits<T>::to_double(sol.objective);
}

inline double approx_spectral_norm(const BooleanFunction& f, double eps = 1.0 / 3.0) {
    check_lp_arity(f.n, "approx_spectral_norm");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("approx_spectral_norm: eps must lie in (0,1)");
    if (f.n <= kMaxExactLpArity) return approx_spectral_norm_as<mpq_class>(f, rational_from_double(eps));
    return approx_spectral_norm_as<double>(f, eps);
}

// ---- distributions and discrepancy ----

inline Distribution uniform_distribution(std::size_t size) { return Distribution(size, 1.0 / static_cast<double>(size)); }

inline void check_distribution(const Distribution& mu, std::size_t size, const char* what) {
    if (mu.size() != size) throw std::invalid_argument(std::string(what) + ": distribution size mismatch");
    double s = 0.0;
    for (double v : mu) {
        if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative weight");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument(std::string(what) + ": weights do not sum to 1");
}

inline double signed_mass(const Distribution& mu, const Gadget& G) {
    if (mu.size() != G.table.size()) throw std::invalid_argument("signed_mass: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += G.table[i] * mu[i];
    return s;
}

inline bool is_balanced(const Distribution& mu, const Gadget& G) { return std::fabs(signed_mass(mu, G)) <= 1e-12; }

// Half the mass spread evenly on each sign class.
inline Distribution balanced_distribution(const Gadget& G) {
    std::size_t neg = 0;
    for (auto v : G.table) neg += v == -1;
    const std::size_t pos = G.table.size() - neg;
    if (neg == 0 || pos == 0) throw std::invalid_argument("balanced_distribution: constant gadget");
    Distribution mu(G.table.size());
    for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = G.table[i] == -1 ? 0.5 / static_cast<double>(neg) : 0.5 / static_cast<double>(pos);
    return mu;
}

// max over rectangles S x T of |sum G lambda|; subsets of the smaller side by Gray code,
// the other side picks all positive or all negative column sums.
inline double discrepancy(const Gadget& G, const Distribution& lambda) {
    if (lambda.size() != G.table.size()) throw std::invalid_argument("discrepancy: shape mismatch");
    const bool rows_small = G.j <= G.k;
    const int small_bits = rows_small ? G.j : G.k;
    if (small_bits > 5 || (std::size_t{1} << small_bits) > static_cast<std::size_t>(kMaxDiscSide))
        throw std::length_error("discrepancy: smaller side exceeds " + std::to_string(kMaxDiscSide) + " rows");
    const std::size_t R = std::size_t{1} << small_bits;
    const std::size_t C = rows_small ? G.cols() : G.rows();
    auto entry = [&](std::size_t r, std::size_t c) {
        const std::size_t idx = rows_small ? (r << G.k) | c : (c << G.k) | r;
        return G.table[idx] * lambda[idx];
    };
    std::vector<double> colsum(C, 0.0);
    double best = 0.0;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < (std::uint64_t{1} << R); ++step) {
        const int flip = std::countr_zero(step);
        const std::uint64_t bit = std::uint64_t{1} << flip;
        const double sgn = (gray & bit) ? -1.0 : 1.0;
        gray ^= bit;
        double pos = 0.0, neg = 0.0;
        for (std::size_t c = 0; c < C; ++c) {
            colsum[c] += sgn * entry(static_cast<std::size_t>(flip), c);
            if (colsum[c] > 0) pos += colsum[c];
            else neg -= colsum[c];
        }
        best = std::max({best, pos, neg});
    }
    return best;
}

inline double discrepancy_uniform(const Gadget& G) { return discrepancy(G, uniform_distribution(G.table.size())); }

// A_{i,y} = y_i for ADDR_n; checks A A^T = 2^n I in integers.
inline bool addr_gram_check(int n) {
    if (n < 1 || n > kMaxTableBits) throw std::length_error("addr_gram_check: n out of range");
    const std::size_t cols = std::size_t{1} << n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::int64_t s = 0;
            for (std::size_t y = 0; y < cols; ++y) {
                const int ya = ((y >> (n - 1 - a)) & 1u) ? -1 : 1;
                const int yb = ((y >> (n - 1 - b)) & 1u) ? -1 : 1;
                s += ya * yb;
            }
            if (s != (a == b ? static_cast<std::int64_t>(cols) : 0)) return false;
        }
    return true;
}

// ---- lambda construction ----

struct LambdaResult {
    Distribution weights;  // indexed like compose(f, G): (X << nK) | Y
    double total = 0.0;
    double max_marginal_error = 0.0;
};

// Outer values z_i = G(x_i, y_i) for a composed index.
inline std::size_t outer_index(const Gadget& G, int n, std::size_t X, std::size_t Y) {
    std::size_t z = 0;
    for (int i = 0; i < n; ++i) {
        const std::size_t x = (X >> ((n - 1 - i) * G.j)) & (G.rows() - 1);
        const std::size_t y = (Y >> ((n - 1 - i) * G.k)) & (G.cols() - 1);
        if (G.at(x, y) == -1) z |= std::size_t{1} << (n - 1 - i);
    }
    return z;
}

// Mass of lambda on each outer string z.
inline Distribution outer_marginal(const Distribution& lambda, const Gadget& G, int n) {
    const int K = n * G.k;
    Distribution m(std::size_t{1} << n, 0.0);
    for (std::size_t idx = 0; idx < lambda.size(); ++idx) m[outer_index(G, n, idx >> K, idx & ((std::size_t{1} << K) - 1))] += lambda[idx];
    return m;
}

// lambda(X,Y) = 2^n nu(G(X,Y)) prod_i mu(x_i, y_i).
inline LambdaResult lambda_construct(const Distribution& nu, const Distribution& mu, const Gadget& G, int n) {
    check_table_bits(n * (G.j + G.k), "lambda_construct");
    check_distribution(nu, std::size_t{1} << n, "lambda_construct(nu)");
    check_distribution(mu, G.table.size(), "lambda_construct(mu)");
    if (!is_balanced(mu, G)) throw std::invalid_argument("lambda_construct: mu is not balanced for " + G.name);
    const int J = n * G.j, K = n * G.k;
    LambdaResult out;
    out.weights.assign(std::size_t{1} << (J + K), 0.0);
    const double scale = std::ldexp(1.0, n);
    for (std::size_t X = 0; X < (std::size_t{1} << J); ++X)
        for (std::size_t Y = 0; Y < (std::size_t{1} << K); ++Y) {
            double p = scale * nu[outer_index(G, n, X, Y)];
            for (int i = 0; i < n && p != 0.0; ++i) {
                const std::size_t x = (X >> ((n - 1 - i) * G.j)) & (G.rows() - 1);
                const std::size_t y = (Y >> ((n - 1 - i) * G.k)) & (G.cols() - 1);
                p *= mu[(x << G.k) | y];
            }
            out.weights[(X << K) | Y] = p;
            out.total += p;
        }
    const Distribution m = outer_marginal(out.weights, G, n);
    for (std::size_t z = 0; z < m.size(); ++z) out.max_marginal_error = std::max(out.max_marginal_error, std::fabs(m[z] - nu[z]));
    if (out.max_marginal_error > 1e-10) throw std::logic_error("lambda_construct: marginal identity violated");
    return out;
}

// sum F H lambda over two tables of the same shape.
inline double correlation(const std::vector<int8_t>& F, const std::vector<int8_t>& H, const Distribution& lambda) {
    if (F.size() != H.size() || F.size() != lambda.size()) throw std::invalid_argument("correlation: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) s += F[i] * H[i] * lambda[i];
    return s;
}

// ---- XOR lemma and the generalized discrepancy bound ----

struct XorLemmaResult {
    double lhs = 0.0, rhs = 0.0;
    bool holds = false;
};

inline Distribution product_distribution(const Distribution& mu, const Gadget& P, int k) {
    const int J = k * P.j, K = k * P.k;
    check_table_bits(J + K, "product_distribution");
    Distribution out(std::size_t{1} << (J + K));
    for (std::size_t X = 0; X < (std::size_t{1} << J); ++X)
        for (std::size_t Y = 0; Y < (std::size_t{1} << K); ++Y) {
            double p = 1.0;
            for (int i = 0; i < k; ++i) {
                const std::size_t x = (X >> ((k - 1 - i) * P.j)) & (P.rows() - 1);
                const std::size_t y = (Y >> ((k - 1 - i) * P.k)) & (P.cols() - 1);
                p *= mu[(x << P.k) | y];
            }
            out[(X << K) | Y] = p;
        }
    return out;
}

// disc_{mu^k}(PARITY_k o P) <= (8 disc_mu(P))^k
inline XorLemmaResult xor_lemma_check(const Gadget& P, const Distribution& mu, int k) {
    if (k < 1 || k > 3) throw std::length_error("xor_lemma_check: k must lie in 1..3");
    check_distribution(mu, P.table.size(), "xor_lemma_check");
    const Gadget Q = compose(parity_spec(k).to_function(), P);
    XorLemmaResult r;
    r.lhs = discrepancy(Q, product_distribution(mu, P, k));
    r.rhs = std::pow(8.0 * discrepancy(P, mu), k);
    r.holds = r.lhs <= r.rhs + 1e-12;
    return r;
}

// The argument of the bound: log2((delta + 2 eps - 1) / disc).
inline double gdm_bound(double delta, double eps, double disc_value) {
    const double num = delta + 2.0 * eps - 1.0;
    if (!(num > 0.0)) throw std::invalid_argument("gdm_bound: delta + 2 eps - 1 must be positive");
    if (!(disc_value > 0.0)) throw std::invalid_argument("gdm_bound: discrepancy must be positive");
    return std::log2(num / disc_value);
}

// ---- reductions ----

enum class Box { And, Xor };

inline int8_t box_apply(Box b, int8_t u, int8_t v) {
    if (b == Box::Xor) return static_cast<int8_t>(u * v);
    return (u == -1 && v == -1) ? int8_t{-1} : int8_t{1};
}

struct EmbedResult {
    Signs X, Y;
    int8_t lhs = 1;  // (r o G)(x, y)
    int8_t rhs = 1;  // ((r o~ h_G) o box)(X, Y)
    bool equal = false;
};

// (r o~ h_G) on interleaved blocks (X_i of 2^G.j bits, Y_i of 2^G.k bits).
inline int8_t rtilde_hG_value(const BooleanFunction& r, const Gadget& G, const Signs& Z) {
    const std::size_t jl = std::size_t{1} << G.j, kl = std::size_t{1} << G.k, n = static_cast<std::size_t>(r.n);
    if (Z.size() != n * (jl + kl)) throw std::invalid_argument("rtilde_hG_value: input length mismatch");
    Signs z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = Z.begin() + static_cast<std::ptrdiff_t>(i * (jl + kl));
        auto v = hadamardized_value(G, Signs(b, b + static_cast<std::ptrdiff_t>(jl)), Signs(b + static_cast<std::ptrdiff_t>(jl), b + static_cast<std::ptrdiff_t>(jl + kl)));
        if (!v) return -1;
        z[i] = *v;
    }
    return r(z);
}

// Alice pads each block with (-1)^k (AND) or 1^k (XOR) after H(x_i); Bob puts the pad before H(y_i).
inline EmbedResult embed_reduction(const BooleanFunction& r, const Gadget& G, const Signs& x, const Signs& y, Box box) {
    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t j = static_cast<std::size_t>(G.j), k = static_cast<std::size_t>(G.k);
    if (x.size() != n * j || y.size() != n * k) throw std::invalid_argument("embed_reduction: arity mismatch");
    const int8_t pad = box == Box::And ? int8_t{-1} : int8_t{1};
    EmbedResult e;
    Signs z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Signs xi(x.begin() + static_cast<std::ptrdiff_t>(i * j), x.begin() + static_cast<std::ptrdiff_t>((i + 1) * j));
        const Signs yi(y.begin() + static_cast<std::ptrdiff_t>(i * k), y.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
        const Signs hx = hadamard_codeword(xi), hy = hadamard_codeword(yi);
        e.X.insert(e.X.end(), hx.begin(), hx.end());
        e.X.insert(e.X.end(), hy.size(), pad);
        e.Y.insert(e.Y.end(), hx.size(), pad);
        e.Y.insert(e.Y.end(), hy.begin(), hy.end());
        z[i] = G(xi, yi);
    }
    e.lhs = r(z);
    Signs Z(e.X.size());
    for (std::size_t c = 0; c < Z.size(); ++c) Z[c] = box_apply(box, e.X[c], e.Y[c]);
    e.rhs = rtilde_hG_value(r, G, Z);
    e.equal = e.lhs == e.rhs;
    return e;
}

// f on n blocks (X_i, Y_i) of n bits each: PARITY of ADDR_n(decode(X_i), Y_i) when every X_i is a
// signed codeword, -1 otherwise.
inline int8_t addr_target_function(int n, const Signs& Z) {
    const std::size_t N = static_cast<std::size_t>(n);
    if (Z.size() != 2 * N * N) throw std::invalid_argument("addr_target_function: input length mismatch");
    int8_t out = 1;
    for (std::size_t i = 0; i < N; ++i) {
        const auto b = Z.begin() + static_cast<std::ptrdiff_t>(2 * i * N);
        auto d = decode_codeword(Signs(b, b + static_cast<std::ptrdiff_t>(N)));
        if (!d) return -1;
        out = static_cast<int8_t>(out * Z[2 * i * N + N + to_index(d->s)]);
    }
    return out;
}

// Address bits go through H, target bits pass raw; both sides pad with (-1)^n for AND.
inline EmbedResult embed_reduction_addr(int n, const Signs& x, const Signs& y) {
    const std::size_t N = static_cast<std::size_t>(n);
    const std::size_t a = static_cast<std::size_t>(log2_exact(N));
    if (x.size() != N * a || y.size() != N * N) throw std::invalid_argument("embed_reduction_addr: arity mismatch");
    EmbedResult e;
    e.lhs = 1;
    for (std::size_t i = 0; i < N; ++i) {
        const Signs xi(x.begin() + static_cast<std::ptrdiff_t>(i * a), x.begin() + static_cast<std::ptrdiff_t>((i + 1) * a));
        const Signs hx = hadamard_codeword(xi);
        e.X.insert(e.X.end(), hx.begin(), hx.end());
        e.X.insert(e.X.end(), N, int8_t{-1});
        e.Y.insert(e.Y.end(), N, int8_t{-1});
        e.Y.insert(e.Y.end(), y.begin() + static_cast<std::ptrdiff_t>(i * N), y.begin() + static_cast<std::ptrdiff_t>((i + 1) * N));
        e.lhs = static_cast<int8_t>(e.lhs * y[i * N + to_index(xi)]);
    }
    Signs Z(e.X.size());
    for (std::size_t c = 0; c < Z.size(); ++c) Z[c] = box_apply(Box::And, e.X[c], e.Y[c]);
    e.rhs = addr_target_function(n, Z);
    e.equal = e.lhs == e.rhs;
    return e;
}

struct ProjectionReport {
    int free_variables = 0;
    bool all_codewords = true;
    bool equal = true;
    bool ok() const { return all_codewords && equal; }
};

// Monomial substitution on PARITY_n o~ h_{IP_log n}: in each block the all-ones coordinate is
// fixed to 1, weight-one coordinates are free, every other coordinate is the product of the free
// variables it covers. The projection must equal IP_{n log n} on the free variables.
inline ProjectionReport ip_projection_check(int n) {
    if (n != 2 && n != 4) throw std::length_error("ip_projection_check: n must be 2 or 4");
    const int m = log2_exact(static_cast<std::size_t>(n));
    const Gadget G = inner_product(m, 1);
    const BooleanFunction r = parity_spec(n).to_function();
    ProjectionReport rep;
    rep.free_variables = 2 * n * m;
    auto block = [&](std::size_t vars) {
        Signs b(static_cast<std::size_t>(n));
        for (std::size_t t = 0; t < b.size(); ++t) {
            int v = 1;
            for (int p = 0; p < m; ++p)
                if ((t >> (m - 1 - p)) & 1u) v *= ((vars >> (m - 1 - p)) & 1u) ? -1 : 1;
            b[t] = static_cast<int8_t>(v);
        }
        return b;
    };
    const int half = n * m;
    const std::size_t mask = (std::size_t{1} << m) - 1;
    for (std::size_t a = 0; a < (std::size_t{1} << half); ++a)
        for (std::size_t b = 0; b < (std::size_t{1} << half); ++b) {
            Signs Z;
            for (int i = 0; i < n; ++i) {
                const Signs xb = block((a >> ((n - 1 - i) * m)) & mask);
                const Signs yb = block((b >> ((n - 1 - i) * m)) & mask);
                if (!decode_codeword(xb) || !decode_codeword(yb)) rep.all_codewords = false;
                Z.insert(Z.end(), xb.begin(), xb.end());
                Z.insert(Z.end(), yb.begin(), yb.end());
            }
            if (rtilde_hG_value(r, G, Z) != parity_sign(a & b)) rep.equal = false;
        }
    return rep;
}

}  // namespace qcc
