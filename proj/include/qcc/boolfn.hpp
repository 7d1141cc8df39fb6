#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/statevector.hpp"

namespace qcc {

using Signs = std::vector<int8_t>;

inline constexpr int kMaxTableBits = 20;

enum class BitOrder { MsbFirst, LsbFirst };

// x_i = -1 sets bit i; MsbFirst puts coordinate 0 in the most significant position.
inline std::size_t to_index(const Signs& x, BitOrder order = BitOrder::MsbFirst) {
    std::size_t idx = 0;
    const std::size_t m = x.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] != 1 && x[i] != -1) throw std::invalid_argument("to_index: entry not in {-1,+1}");
        if (x[i] == -1) idx |= std::size_t{1} << (order == BitOrder::MsbFirst ? m - 1 - i : i);
    }
    return idx;
}

inline Signs from_index(std::size_t idx, int m, BitOrder order = BitOrder::MsbFirst) {
    Signs x(static_cast<std::size_t>(m), 1);
    for (int i = 0; i < m; ++i) {
        const int bit = order == BitOrder::MsbFirst ? m - 1 - i : i;
        if ((idx >> bit) & 1u) x[static_cast<std::size_t>(i)] = -1;
    }
    return x;
}

inline int weight(const Signs& x) {
    int w = 0;
    for (auto v : x) w += (v == -1);
    return w;
}

inline int8_t parity_sign(std::size_t bits) { return (std::popcount(bits) & 1) ? int8_t{-1} : int8_t{1}; }

inline void check_table_bits(int bits, const char* what) {
    if (bits < 0 || bits > kMaxTableBits) throw std::length_error(std::string(what) + ": table exceeds 2^20 entries");
}

struct BooleanFunction {
    int n = 0;
    std::vector<int8_t> table;

    BooleanFunction() = default;
    BooleanFunction(int arity, std::vector<int8_t> t) : n(arity), table(std::move(t)) {
        check_table_bits(n, "BooleanFunction");
        if (table.size() != (std::size_t{1} << n)) throw std::invalid_argument("BooleanFunction: table length is not 2^n");
        for (auto v : table)
            if (v != 1 && v != -1) throw std::invalid_argument("BooleanFunction: entry not in {-1,+1}");
    }
    template <class F>
    static BooleanFunction from(int arity, F&& f) {
        check_table_bits(arity, "BooleanFunction");
        std::vector<int8_t> t(std::size_t{1} << arity);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int8_t>(f(from_index(i, arity)));
        return BooleanFunction(arity, std::move(t));
    }
    int8_t operator()(const Signs& x) const { return table.at(to_index(x)); }
    std::size_t size() const { return table.size(); }
    bool operator==(const BooleanFunction&) const = default;
};

// Entries in {-1,+1}; 0 encodes the undefined symbol.
struct PartialBooleanFunction {
    int n = 0;
    std::vector<int8_t> table;

    PartialBooleanFunction() = default;
    PartialBooleanFunction(int arity, std::vector<int8_t> t) : n(arity), table(std::move(t)) {
        check_table_bits(n, "PartialBooleanFunction");
        if (table.size() != (std::size_t{1} << n)) throw std::invalid_argument("PartialBooleanFunction: table length is not 2^n");
        for (auto v : table)
            if (v != 1 && v != -1 && v != 0) throw std::invalid_argument("PartialBooleanFunction: entry not in {-1,+1,*}");
    }
    std::optional<int8_t> operator()(const Signs& x) const {
        const int8_t v = table.at(to_index(x));
        if (v == 0) return std::nullopt;
        return v;
    }
};

// Two-party function on j Alice bits and k Bob bits; index = x_index * 2^k + y_index.
struct Gadget {
    std::string name;
    int j = 0, k = 0;
    std::vector<int8_t> table;
    int q = 0;  // declared exact quantum communication cost

    Gadget() = default;
    Gadget(std::string nm, int alice_bits, int bob_bits, std::vector<int8_t> t, int cost)
        : name(std::move(nm)), j(alice_bits), k(bob_bits), table(std::move(t)), q(cost) {
        check_table_bits(j + k, "Gadget");
        if (table.size() != (std::size_t{1} << (j + k))) throw std::invalid_argument("Gadget: table length is not 2^(j+k)");
        bool has_pos = false, has_neg = false;
        for (auto v : table) {
            if (v != 1 && v != -1) throw std::invalid_argument("Gadget: entry not in {-1,+1}");
            (v == 1 ? has_pos : has_neg) = true;
        }
        if (q < 0) throw std::invalid_argument("Gadget: negative cost");
        if (has_pos && has_neg && q < 1) throw std::invalid_argument("Gadget: non-constant gadget needs q >= 1");
    }
    template <class F>
    static Gadget from(std::string nm, int alice_bits, int bob_bits, int cost, F&& f) {
        check_table_bits(alice_bits + bob_bits, "Gadget");
        std::vector<int8_t> t(std::size_t{1} << (alice_bits + bob_bits));
        for (std::size_t x = 0; x < (std::size_t{1} << alice_bits); ++x)
            for (std::size_t y = 0; y < (std::size_t{1} << bob_bits); ++y)
                t[(x << bob_bits) | y] = static_cast<int8_t>(f(from_index(x, alice_bits), from_index(y, bob_bits)));
        return Gadget(std::move(nm), alice_bits, bob_bits, std::move(t), cost);
    }
    std::size_t rows() const { return std::size_t{1} << j; }
    std::size_t cols() const { return std::size_t{1} << k; }
    int8_t at(std::size_t x, std::size_t y) const { return table[(x << k) | y]; }
    int8_t operator()(const Signs& x, const Signs& y) const {
        if (static_cast<int>(x.size()) != j || static_cast<int>(y.size()) != k) throw std::invalid_argument("Gadget: input width mismatch");
        return at(to_index(x), to_index(y));
    }
    Gadget negated() const {
        std::vector<int8_t> t(table);
        for (auto& v : t) v = static_cast<int8_t>(-v);
        return Gadget("-" + name, j, k, std::move(t), q);
    }
};

struct SymmetricSpec {
    int n = 0;
    std::vector<int8_t> weight_values;  // value at Hamming weight 0..n

    SymmetricSpec() = default;
    SymmetricSpec(int arity, std::vector<int8_t> w) : n(arity), weight_values(std::move(w)) {
        if (n < 0 || weight_values.size() != static_cast<std::size_t>(n + 1)) throw std::invalid_argument("SymmetricSpec: need n+1 weight values");
        for (auto v : weight_values)
            if (v != 1 && v != -1) throw std::invalid_argument("SymmetricSpec: entry not in {-1,+1}");
    }
    int8_t at_weight(int w) const { return weight_values.at(static_cast<std::size_t>(w)); }
    int8_t operator()(const Signs& x) const { return at_weight(weight(x)); }
    BooleanFunction to_function() const {
        return BooleanFunction::from(n, [&](const Signs& x) { return at_weight(weight(x)); });
    }
    bool is_constant() const {
        for (auto v : weight_values)
            if (v != weight_values.front()) return false;
        return true;
    }
    // Table-level symmetry test: equal weights must carry equal values.
    static std::optional<SymmetricSpec> from_function(const BooleanFunction& f) {
        std::vector<int8_t> w(static_cast<std::size_t>(f.n + 1), 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto& slot = w[static_cast<std::size_t>(std::popcount(i))];
            if (slot == 0) slot = f.table[i];
            else if (slot != f.table[i]) return std::nullopt;
        }
        return SymmetricSpec(f.n, std::move(w));
    }
};

// ---- Hadamard codewords ----

// H(s)_t = prod_{i: s_i=-1} t_i, with t enumerated in the given order.
inline Signs hadamard_codeword(const Signs& s, BitOrder order = BitOrder::MsbFirst) {
    const int m = static_cast<int>(s.size());
    if (m > 24) throw std::length_error("hadamard_codeword: length too large");
    const std::size_t n = std::size_t{1} << m;
    Signs h(n);
    for (std::size_t p = 0; p < n; ++p) {
        const Signs t = from_index(p, m, order);
        int8_t v = 1;
        for (int i = 0; i < m; ++i)
            if (s[static_cast<std::size_t>(i)] == -1) v = static_cast<int8_t>(v * t[static_cast<std::size_t>(i)]);
        h[p] = v;
    }
    return h;
}

struct Decoded {
    Signs s;
    int8_t sign;
    bool operator==(const Decoded&) const = default;
};

// Walsh-Hadamard decoding: x = b*H(s) iff one coefficient has magnitude n.
inline std::optional<Decoded> decode_codeword(const Signs& x, BitOrder order = BitOrder::MsbFirst) {
    const std::size_t n = x.size();
    const int m = log2_exact(n);
    std::vector<long long> a(x.begin(), x.end());
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t r = i; r < i + len; ++r) {
                const long long u = a[r], v = a[r + len];
                a[r] = u + v;
                a[r + len] = u - v;
            }
    for (std::size_t s = 0; s < n; ++s) {
        if (a[s] == static_cast<long long>(n) || a[s] == -static_cast<long long>(n)) {
            // Position index p and codeword index s share one bit layout, so the
            // character (-1)^{|s & p|} recovers s in the same order.
            return Decoded{from_index(s, m, order), static_cast<int8_t>(a[s] > 0 ? 1 : -1)};
        }
    }
    return std::nullopt;
}

// ---- hadamardization and composition ----

// h_G on 2^j + 2^k bits: G(s,t) on (+-H(s), +-H(t)), undefined elsewhere.
inline PartialBooleanFunction hadamardize(const Gadget& G) {
    if (G.j > 5 || G.k > 5) throw std::length_error("hadamardize: lifted arity exceeds table cap");
    const int jl = 1 << G.j, kl = 1 << G.k;
    check_table_bits(jl + kl, "hadamardize");
    std::vector<int8_t> t(std::size_t{1} << (jl + kl), 0);
    for (std::size_t s = 0; s < G.rows(); ++s) {
        const Signs hs = hadamard_codeword(from_index(s, G.j));
        for (std::size_t u = 0; u < G.cols(); ++u) {
            const Signs hu = hadamard_codeword(from_index(u, G.k));
            for (int b : {1, -1})
                for (int c : {1, -1}) {
                    Signs x(hs), y(hu);
                    for (auto& v : x) v = static_cast<int8_t>(v * b);
                    for (auto& v : y) v = static_cast<int8_t>(v * c);
                    t[(to_index(x) << kl) | to_index(y)] = G.at(s, u);
                }
        }
    }
    return PartialBooleanFunction(jl + kl, std::move(t));
}

// Table-free evaluation of h_G on one (x, y) pair.
inline std::optional<int8_t> hadamardized_value(const Gadget& G, const Signs& x, const Signs& y) {
    if (x.size() != (std::size_t{1} << G.j) || y.size() != (std::size_t{1} << G.k))
        throw std::invalid_argument("hadamardized_value: block width mismatch");
    auto dx = decode_codeword(x);
    auto dy = decode_codeword(y);
    if (!dx || !dy) return std::nullopt;
    return G(dx->s, dy->s);
}

// f o G as a two-party table; q is declared as n * G.q.
inline Gadget compose(const BooleanFunction& f, const Gadget& G) {
    const int n = f.n;
    const int J = n * G.j, K = n * G.k;
    check_table_bits(J + K, "compose");
    std::vector<int8_t> t(std::size_t{1} << (J + K));
    const std::size_t jm = G.rows() - 1, km = G.cols() - 1;
    for (std::size_t x = 0; x < (std::size_t{1} << J); ++x)
        for (std::size_t y = 0; y < (std::size_t{1} << K); ++y) {
            std::size_t zi = 0;
            for (int i = 0; i < n; ++i) {
                const int shift_x = (n - 1 - i) * G.j, shift_y = (n - 1 - i) * G.k;
                const int8_t g = G.at((x >> shift_x) & jm, (y >> shift_y) & km);
                if (g == -1) zi |= std::size_t{1} << (n - 1 - i);
            }
            t[(x << K) | y] = f.table[zi];
        }
    return Gadget(f.n == 0 ? "const" : "f*" + G.name, J, K, std::move(t), n * G.q);
}

// r o~ g: r(g(X_1),...,g(X_n)) when every block is defined, -1 otherwise.
inline BooleanFunction compose_tilde(const BooleanFunction& r, const PartialBooleanFunction& g) {
    const int n = r.n, m = g.n;
    check_table_bits(n * m, "compose_tilde");
    std::vector<int8_t> t(std::size_t{1} << (n * m));
    const std::size_t mask = (std::size_t{1} << m) - 1;
    for (std::size_t x = 0; x < t.size(); ++x) {
        std::size_t zi = 0;
        bool defined = true;
        for (int i = 0; i < n && defined; ++i) {
            const int8_t v = g.table[(x >> ((n - 1 - i) * m)) & mask];
            if (v == 0) defined = false;
            else if (v == -1) zi |= std::size_t{1} << (n - 1 - i);
        }
        t[x] = defined ? r.table[zi] : int8_t{-1};
    }
    return BooleanFunction(n * m, std::move(t));
}

// ---- symmetric functions ----

inline int gamma(const SymmetricSpec& f) {
    int best = f.n + 1;
    for (int k = 0; k < f.n; ++k)
        if (f.at_weight(k) != f.at_weight(k + 1)) best = std::min(best, std::abs(2 * k - f.n + 1));
    return best;
}

// ---- library ----

inline Gadget and2() {
    return Gadget::from("and2", 1, 1, 1, [](const Signs& x, const Signs& y) { return (x[0] == -1 && y[0] == -1) ? -1 : 1; });
}
inline Gadget xor2() {
    return Gadget::from("xor2", 1, 1, 1, [](const Signs& x, const Signs& y) { return x[0] * y[0]; });
}
inline Gadget inner_product(int m, int q) {
    return Gadget::from("ip" + std::to_string(m), m, m, q, [](const Signs& x, const Signs& y) {
        return parity_sign(to_index(x) & to_index(y));
    });
}
// ADDR_n: Alice holds log n address bits, Bob holds n target bits; output y at position bin(x).
inline Gadget addressing(int n, int q) {
    const int a = log2_exact(static_cast<std::size_t>(n));
    return Gadget::from("addr" + std::to_string(n), a, n, q, [](const Signs& x, const Signs& y) { return y[to_index(x)]; });
}

inline SymmetricSpec parity_spec(int n) {
    std::vector<int8_t> w(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) w[static_cast<std::size_t>(k)] = (k & 1) ? -1 : 1;
    return {n, w};
}
inline SymmetricSpec or_spec(int n) {
    std::vector<int8_t> w(static_cast<std::size_t>(n + 1), -1);
    w[0] = 1;
    return {n, w};
}
inline SymmetricSpec nor_spec(int n) {
    std::vector<int8_t> w(static_cast<std::size_t>(n + 1), 1);
    w[0] = -1;
    return {n, w};
}
// -1 iff strictly more than half the inputs are -1.
inline SymmetricSpec maj_spec(int n) {
    std::vector<int8_t> w(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) w[static_cast<std::size_t>(k)] = (2 * k > n) ? -1 : 1;
    return {n, w};
}
// -1 iff |x| >= tau.
inline SymmetricSpec threshold_spec(int n, int tau) {
    std::vector<int8_t> w(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) w[static_cast<std::size_t>(k)] = (k >= tau) ? -1 : 1;
    return {n, w};
}
inline SymmetricSpec constant_spec(int n, int8_t value) {
    return {n, std::vector<int8_t>(static_cast<std::size_t>(n + 1), value)};
}

inline SymmetricSpec symmetric_library(const std::string& name, int n) {
    if (name == "parity") return parity_spec(n);
    if (name == "or") return or_spec(n);
    if (name == "nor") return nor_spec(n);
    if (name == "maj") return maj_spec(n);
    if (name.rfind("thr:", 0) == 0) return threshold_spec(n, std::stoi(name.substr(4)));
    throw std::invalid_argument("unknown function: " + name);
}

inline Gadget gadget_library(const std::string& name, int size = 1, int q = 0) {
    if (name == "and2") return and2();
    if (name == "xor2") return xor2();
    if (q < 1) throw std::invalid_argument("gadget " + name + " needs a declared cost q >= 1");
    if (name == "ip") return inner_product(size, q);
    if (name == "addr") return addressing(size, q);
    throw std::invalid_argument("unknown gadget: " + name);
}

// ---- transitivity ----

// map[c] is the position coordinate c moves to.
using Permutation = std::vector<std::size_t>;

inline Signs permute(const Signs& x, const Permutation& p) {
    Signs y(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) y[p[c]] = x[c];
    return y;
}

inline Permutation compose_perm(const Permutation& outer, const Permutation& inner) {
    Permutation r(inner.size());
    for (std::size_t c = 0; c < inner.size(); ++c) r[c] = outer[inner[c]];
    return r;
}

// On 2n coordinates (x-block then y-block): sigma_l(i) = i xor l inside each block.
inline Permutation sigma_perm(std::size_t n, std::size_t ell) {
    Permutation p(2 * n);
    for (std::size_t c = 0; c < 2 * n; ++c) p[c] = (c / n) * n + ((c % n) ^ ell);
    return p;
}
inline Permutation block_swap(std::size_t n) {
    Permutation p(2 * n);
    for (std::size_t c = 0; c < 2 * n; ++c) p[c] = (c + n) % (2 * n);
    return p;
}

inline std::vector<Permutation> transitive_perms(std::size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("transitive_perms: n must be a power of 2");
    std::vector<Permutation> gens;
    for (std::size_t ell = 0; ell < n; ++ell) gens.push_back(sigma_perm(n, ell));
    gens.push_back(block_swap(n));
    return gens;
}

inline bool single_orbit(std::size_t arity, const std::vector<Permutation>& perms) {
    std::vector<std::size_t> parent(arity);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::size_t comps = arity;
    for (const auto& p : perms) {
        if (p.size() != arity) throw std::invalid_argument("permutation arity mismatch");
        for (std::size_t c = 0; c < arity; ++c) {
            const std::size_t a = find(c), b = find(p[c]);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
    }
    return comps <= 1;
}

inline std::size_t permute_index(std::size_t idx, int arity, const Permutation& p) {
    std::size_t out = 0;
    const std::size_t N = static_cast<std::size_t>(arity);
    for (std::size_t c = 0; c < N; ++c)
        if ((idx >> (N - 1 - c)) & 1u) out |= std::size_t{1} << (N - 1 - p[c]);
    return out;
}

template <class Table>
bool invariant_under(int arity, const Table& table, const std::vector<Permutation>& perms) {
    for (const auto& p : perms) {
        if (p.size() != static_cast<std::size_t>(arity)) throw std::invalid_argument("verify_transitive: arity mismatch");
        for (std::size_t x = 0; x < table.size(); ++x)
            if (table[permute_index(x, arity, p)] != table[x]) return false;
    }
    return true;
}

inline bool verify_transitive(const BooleanFunction& f, const std::vector<Permutation>& perms) {
    return invariant_under(f.n, f.table, perms) && single_orbit(static_cast<std::size_t>(f.n), perms);
}
inline bool verify_transitive(const PartialBooleanFunction& f, const std::vector<Permutation>& perms) {
    return invariant_under(f.n, f.table, perms) && single_orbit(static_cast<std::size_t>(f.n), perms);
}

// Same verdict for h_G without its 2^(2n) table. A coordinate permutation is a
// bijection of the cube, so mapping the finite defined set into itself with equal
// values forces it onto itself and sends undefined points to undefined points.
inline bool verify_transitive_hadamardized(const Gadget& G, const std::vector<Permutation>& perms) {
    const std::size_t jl = std::size_t{1} << G.j, kl = std::size_t{1} << G.k;
    const std::size_t arity = jl + kl;
    for (const auto& p : perms)
        if (p.size() != arity) throw std::invalid_argument("verify_transitive: arity mismatch");
    for (std::size_t s = 0; s < G.rows(); ++s)
        for (std::size_t u = 0; u < G.cols(); ++u)
            for (int b : {1, -1})
                for (int c : {1, -1}) {
                    Signs in = hadamard_codeword(from_index(s, G.j));
                    for (auto& v : in) v = static_cast<int8_t>(v * b);
                    Signs hy = hadamard_codeword(from_index(u, G.k));
                    for (auto v : hy) in.push_back(static_cast<int8_t>(v * c));
                    for (const auto& p : perms) {
                        const Signs out = permute(in, p);
                        const Signs ox(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(jl));
                        const Signs oy(out.begin() + static_cast<std::ptrdiff_t>(jl), out.end());
                        auto v = hadamardized_value(G, ox, oy);
                        if (!v || *v != G.at(s, u)) return false;
                    }
                }
    return single_orbit(arity, perms);
}

// ---- truth-table files ----

struct TruthTable {
    int n = 0;
    std::vector<int8_t> entries;  // 0 for '*'
    bool partial() const {
        for (auto v : entries)
            if (v == 0) return true;
        return false;
    }
};

inline TruthTable read_truth_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("n=", 0) != 0) throw std::runtime_error("truth table: expected 'n=<arity>' header");
    TruthTable tt;
    tt.n = std::stoi(header.substr(2));
    check_table_bits(tt.n, "truth table");
    std::string tok;
    while (in >> tok) {
        if (tok == "1") tt.entries.push_back(1);
        else if (tok == "-1") tt.entries.push_back(-1);
        else if (tok == "*") tt.entries.push_back(0);
        else throw std::runtime_error("truth table: bad entry '" + tok + "'");
    }
    if (tt.entries.size() != (std::size_t{1} << tt.n)) throw std::runtime_error("truth table: expected 2^n entries");
    return tt;
}

inline void write_truth_table(std::ostream& out, int n, const std::vector<int8_t>& entries) {
    out << "n=" << n << "\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ' ';
        if (entries[i] == 0) out << '*';
        else out << static_cast<int>(entries[i]);
    }
    out << "\n";
}

}  // namespace qcc
