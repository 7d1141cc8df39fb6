#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcc/boolfn.hpp"

namespace qcc {

// Coefficients indexed like inputs: bit (n-1-i) of S set iff coordinate i is in S.
struct Spectrum {
    int n = 0;
    std::vector<double> coeff;
    double at(std::size_t S) const { return coeff.at(S); }
};

// In-place unnormalized transform a[S] <- sum_x a[x] (-1)^{|S & x|}.
template <class T>
void fwht_inplace(std::vector<T>& a) {
    const std::size_t N = a.size();
    if (!is_pow2(N)) throw std::invalid_argument("fwht: length must be a power of 2");
    for (std::size_t h = 1; h < N; h <<= 1)
        for (std::size_t i = 0; i < N; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j) {
                const T u = a[j], v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
}

// 2^n * f_hat(S), exact in integers.
inline std::vector<std::int64_t> walsh_hadamard_int(const std::vector<int8_t>& table) {
    std::vector<std::int64_t> a(table.begin(), table.end());
    fwht_inplace(a);
    return a;
}

// f_hat(S) = 2^-n sum_x f(x) chi_S(x), so E_x[f g] = sum_S f_hat g_hat.
inline Spectrum walsh_hadamard(const std::vector<double>& values) {
    Spectrum s;
    s.n = log2_exact(values.size());
    check_table_bits(s.n, "walsh_hadamard");
    s.coeff = values;
    fwht_inplace(s.coeff);
    const double scale = 1.0 / static_cast<double>(values.size());
    for (auto& c : s.coeff) c *= scale;
    return s;
}
inline Spectrum walsh_hadamard(const BooleanFunction& f) { return walsh_hadamard(std::vector<double>(f.table.begin(), f.table.end())); }

inline std::vector<double> inverse_walsh_hadamard(const Spectrum& s) {
    std::vector<double> v = s.coeff;
    fwht_inplace(v);
    return v;
}

}  // namespace qcc
