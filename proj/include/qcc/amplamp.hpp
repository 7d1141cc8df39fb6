#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/statevector.hpp"

namespace qcc {

inline constexpr int kMaxRecursionDepth = 12;  // 3^12 leaf steps

inline double grover_angle(std::uint64_t t, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("grover_angle: n >= 1");
    if (t > n) throw std::invalid_argument("grover_angle: t > n");
    return std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
}

// Largest k with 3^k * theta <= pi/2, i.e. floor(log_3(pi/(2 theta))), computed without log roundoff.
inline int iteration_count(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("iteration_count: theta must be positive");
    if (theta > std::numbers::pi / 2 + 1e-15) throw std::invalid_argument("iteration_count: theta > pi/2");
    const double limit = std::numbers::pi / 2 * (1.0 + 1e-12);
    int k = 0;
    double scaled = theta;
    while (scaled * 3.0 <= limit) {
        scaled *= 3.0;
        ++k;
    }
    return k;
}

// eps_j = base * ratio^(j-1); the defaults give 1/(100 * 4^j).
struct EpsilonSchedule {
    double base = 1.0 / 400.0;
    double ratio = 0.25;
    double operator()(int j) const {
        if (j < 1) throw std::invalid_argument("epsilon_schedule: j >= 1");
        return base * std::pow(ratio, j - 1);
    }
};

inline double epsilon_schedule(int j) { return EpsilonSchedule{}(j); }

enum class NoiseKind { Perfect, PhaseOnComplement, RandomPhases };

struct NoiseModel {
    NoiseKind kind = NoiseKind::Perfect;
    std::uint64_t seed = 0;  // realization seed for RandomPhases

    static NoiseModel perfect() { return {}; }
    static NoiseModel phase_on_complement() { return {NoiseKind::PhaseOnComplement, 0}; }
    static NoiseModel random_phases(std::uint64_t seed) { return {NoiseKind::RandomPhases, seed}; }

    std::string describe() const {
        switch (kind) {
            case NoiseKind::Perfect: return "perfect";
            case NoiseKind::PhaseOnComplement: return "phase";
            case NoiseKind::RandomPhases: return "phases#" + std::to_string(seed);
        }
        return "?";
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Phase angle with |e^{i delta} - 1| = eps.
inline double phase_for_eps(double eps) { return 2.0 * std::asin(eps / 2.0); }

// R^eps about psi: identity on psi, phases on an orthonormal basis of the complement.
// The complement basis is {H e_b : b != 0} for the Householder reflector H with H(g e_0) = psi.
class NoisyReflection {
public:
    using KeyMap = std::function<std::uint64_t(std::size_t)>;

    NoisyReflection(const CVec& psi, double eps, NoiseModel noise, int level, KeyMap key = {})
        : psi_(psi), noise_(noise), delta_(noise.kind == NoiseKind::Perfect ? 0.0 : phase_for_eps(eps)) {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("noisy reflection: eps must lie in (0,1)");
        if (std::abs(psi.norm() - 1.0) > kTol) throw std::invalid_argument("noisy reflection: psi not normalized");
        if (noise.kind == NoiseKind::RandomPhases) {
            const double a0 = std::abs(psi[0]);
            const cplx g = a0 > 0 ? psi[0] / a0 : cplx{1.0, 0.0};
            w_ = psi;
            w_ *= -1.0;
            w_[0] += g;
            wnorm2_ = w_.norm() * w_.norm();
            phases_.resize(psi.dim());
            const std::uint64_t s = splitmix64(noise.seed ^ splitmix64(static_cast<std::uint64_t>(level)));
            for (std::size_t b = 0; b < psi.dim(); ++b) {
                const std::uint64_t k = key ? key(b) : b;
                const double u = static_cast<double>(splitmix64(s ^ splitmix64(k + 0x632be59bd9b4e019ULL)) >> 11) * 0x1.0p-53;
                phases_[b] = delta_ * (2.0 * u - 1.0);
            }
        }
    }

    void apply(CVec& v, bool inverse = false) const {
        psi_.same_dim(v);
        switch (noise_.kind) {
            case NoiseKind::Perfect: {
                const cplx c = overlap(psi_, v);
                for (std::size_t i = 0; i < v.dim(); ++i) v[i] = 2.0 * c * psi_[i] - v[i];
                return;
            }
            case NoiseKind::PhaseOnComplement: {
                const cplx c = overlap(psi_, v);
                const cplx e = std::polar(1.0, inverse ? -delta_ : delta_);
                for (std::size_t i = 0; i < v.dim(); ++i) v[i] = c * psi_[i] - e * (v[i] - c * psi_[i]);
                return;
            }
            case NoiseKind::RandomPhases: {
                householder(v);
                for (std::size_t b = 1; b < v.dim(); ++b) v[b] *= -std::polar(1.0, inverse ? -phases_[b] : phases_[b]);
                householder(v);
                return;
            }
        }
    }

    const CVec& psi() const { return psi_; }

private:
    void householder(CVec& v) const {
        if (wnorm2_ < 1e-300) return;
        const cplx c = overlap(w_, v) * (2.0 / wnorm2_);
        for (std::size_t i = 0; i < v.dim(); ++i) v[i] -= c * w_[i];
    }

    CVec psi_;
    NoiseModel noise_;
    double delta_;
    CVec w_;
    double wnorm2_ = 0.0;
    std::vector<double> phases_;
};

// Largest singular value of R^eps - R_psi by power iteration on D^dagger D.
inline double reflection_deviation(const NoisyReflection& r, int iterations = 200, std::uint64_t seed = 1) {
    const std::size_t dim = r.psi().dim();
    NoisyReflection exact(r.psi(), 0.5, NoiseModel::perfect(), 0);
    Rng rng(seed);
    CVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = cplx{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    v *= 1.0 / v.norm();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        CVec a = v, b = v;
        r.apply(a, false);
        exact.apply(b, false);
        CVec d = a - b;  // D v
        sigma = d.norm();
        CVec a2 = d, b2 = d;
        r.apply(a2, true);
        exact.apply(b2, true);
        CVec dd = a2 - b2;  // D^dagger D v
        const double nn = dd.norm();
        if (nn < 1e-300) return 0.0;
        v = dd;
        v *= 1.0 / nn;
    }
    return sigma;
}

struct AmplSetup {
    std::function<bool(std::size_t)> good;
    CVec initial;
    double theta = 0.0;

    static AmplSetup make(CVec initial, std::function<bool(std::size_t)> good) {
        double g = 0.0;
        for (std::size_t i = 0; i < initial.dim(); ++i)
            if (good(i)) g += std::norm(initial[i]);
        const double theta = std::asin(std::min(1.0, std::sqrt(g)));
        return {std::move(good), std::move(initial), theta};
    }

    // |G> and |B>: normalized good and bad components of the initial state (zero if empty).
    std::pair<CVec, CVec> components() const {
        CVec G(initial.dim()), B(initial.dim());
        for (std::size_t i = 0; i < initial.dim(); ++i) (good(i) ? G : B)[i] = initial[i];
        const double ng = G.norm(), nb = B.norm();
        if (ng > 0) G *= 1.0 / ng;
        if (nb > 0) B *= 1.0 / nb;
        return {G, B};
    }
};

// A_{j} = A_{j-1} R_j A_{j-1}^* O A_{j-1}, A_0 = I, applied to an external state.
// oracle() applies O; reflect(j, inverse) applies R^{eps_j} or its inverse;
// on_level(j) fires once A_j psi is available (the state is psi at j = 0).
template <class Oracle, class Reflect, class OnLevel>
void amplify(int k, Oracle&& oracle, Reflect&& reflect, OnLevel&& on_level) {
    if (k < 0) throw std::invalid_argument("amplify: k >= 0");
    if (k > kMaxRecursionDepth) throw std::length_error("amplify: 3^k exceeds the step budget");
    std::function<void(int)> fwd, inv;
    fwd = [&](int j) {
        if (j == 0) return;
        fwd(j - 1);
        oracle();
        inv(j - 1);
        reflect(j, false);
        fwd(j - 1);
    };
    inv = [&](int j) {
        if (j == 0) return;
        inv(j - 1);
        reflect(j, true);
        fwd(j - 1);
        oracle();
        inv(j - 1);
    };
    on_level(0);
    for (int j = 0; j < k; ++j) {
        oracle();
        inv(j);
        reflect(j + 1, false);
        fwd(j);
        on_level(j + 1);
    }
}

struct AmplResult {
    CVec final;
    std::vector<double> eta_trace;
    std::uint64_t oracle_calls = 0;
    std::uint64_t reflection_calls = 0;
};

// Local simulation: O = I - 2 P_G, reflections realized by `noise` with eps_j from `schedule`.
inline AmplResult run(const AmplSetup& setup, const NoiseModel& noise, int k, const EpsilonSchedule& schedule = {}) {
    AmplResult res;
    CVec v = setup.initial;
    std::vector<NoisyReflection> refl;
    for (int j = 1; j <= k; ++j) refl.emplace_back(setup.initial, schedule(j), noise, j);
    std::vector<char> good(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) good[i] = setup.good(i) ? 1 : 0;
    const auto [G, B] = setup.components();
    auto oracle = [&] {
        ++res.oracle_calls;
        for (std::size_t i = 0; i < v.dim(); ++i)
            if (good[i]) v[i] = -v[i];
    };
    auto reflect = [&](int j, bool inverse) {
        ++res.reflection_calls;
        refl[static_cast<std::size_t>(j - 1)].apply(v, inverse);
    };
    auto on_level = [&](int j) {
        const double a = std::pow(3.0, j) * setup.theta;
        CVec ideal = std::sin(a) * G;
        ideal += std::cos(a) * B;
        res.eta_trace.push_back((v - ideal).norm());
    };
    amplify(k, oracle, reflect, on_level);
    res.final = std::move(v);
    return res;
}

}  // namespace qcc
