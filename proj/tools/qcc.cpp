// Experiment driver: one subcommand per experiment, CSV rows on stdout (or --csv), summary on stderr.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcc/counting.hpp"
#include "qcc/lowerbound.hpp"
#include "qcc/oracles.hpp"
#include "qcc/query.hpp"
#include "qcc/search.hpp"
#include "qcc/verify.hpp"

#ifndef QCC_COMMIT
#define QCC_COMMIT "unknown"
#endif

using namespace qcc;

namespace {

struct Options {
    int n = 64;
    int t = 1;
    int k = 2;
    int m = 0;  // weight for count; -1 picks it per trial
    std::string gadget = "and2";
    std::string fn = "parity";
    std::string noise = "phase:0.0025";
    std::string mode = "known";
    std::string box = "and";
    std::string mu = "uniform";
    double eps = 1.0 / 3.0;
    double delta = 1.0 / 3.0;
    double gdm_eps = 0.4;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string csv;
    std::string constants_file;
    int threads = 1;
    int criterion = 0;
    bool verbose = false;
};

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;
    std::vector<std::string> summary;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
template <class T>
std::string str(const T& v) {
    if constexpr (std::is_floating_point_v<T>) return fmt(v);
    else if constexpr (std::is_same_v<T, bool>) return v ? "1" : "0";
    else if constexpr (std::is_convertible_v<T, std::string>) return std::string(v);
    else return std::to_string(v);
}

// ---- parameter parsing ----

// and2 | xor2 | ip:<m> | addr[:<n>]; the addr size defaults to --n.
Gadget parse_gadget(const std::string& spec, int n_default) {
    if (spec == "and2" || spec == "xor2") return gadget_library(spec);
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const int size = colon == std::string::npos ? n_default : std::stoi(spec.substr(colon + 1));
    if (name == "ip") return inner_product(size, size);
    if (name == "addr") return addressing(size, log2_exact(static_cast<std::size_t>(size)) + 1);
    throw std::invalid_argument("unknown gadget: " + spec);
}

BooleanFunction read_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const TruthTable tt = read_truth_table(in);
    if (tt.partial()) throw std::invalid_argument(path + ": partial table where a total function is needed");
    return BooleanFunction(tt.n, tt.entries);
}

SymmetricSpec parse_symmetric(const std::string& spec, int n) {
    if (spec.rfind("custom:", 0) == 0) {
        const BooleanFunction f = read_function_file(spec.substr(7));
        std::vector<int8_t> w(static_cast<std::size_t>(f.n + 1), 0);
        for (std::size_t x = 0; x < f.size(); ++x) {
            auto& slot = w[static_cast<std::size_t>(std::popcount(x))];
            if (slot != 0 && slot != f.table[x]) throw std::invalid_argument(spec + " is not symmetric");
            slot = f.table[x];
        }
        return SymmetricSpec(f.n, w);
    }
    return symmetric_library(spec, n);
}

BooleanFunction parse_function(const std::string& spec, int n) {
    if (spec.rfind("custom:", 0) == 0) return read_function_file(spec.substr(7));
    return symmetric_library(spec, n).to_function();
}

struct NoiseSpec {
    NoiseKind kind = NoiseKind::Perfect;
    std::optional<double> eps;
    NoiseModel model(std::uint64_t realization) const {
        if (kind == NoiseKind::PhaseOnComplement) return NoiseModel::phase_on_complement();
        if (kind == NoiseKind::RandomPhases) return NoiseModel::random_phases(realization);
        return NoiseModel::perfect();
    }
};

// perfect | phase:<eps> | phases:<eps>; eps is the first schedule level.
NoiseSpec parse_noise(const std::string& spec) {
    NoiseSpec ns;
    if (spec == "perfect") return ns;
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind == "phase") ns.kind = NoiseKind::PhaseOnComplement;
    else if (kind == "phases") ns.kind = NoiseKind::RandomPhases;
    else throw std::invalid_argument("unknown noise model: " + spec);
    if (colon != std::string::npos) {
        ns.eps = std::stod(spec.substr(colon + 1));
        if (!(*ns.eps > 0.0 && *ns.eps < 1.0)) throw std::invalid_argument("noise eps must lie in (0,1)");
    }
    return ns;
}

ProtocolConstants load_constants(const Options& o, const NoiseSpec& ns) {
    ProtocolConstants pc;
    if (!o.constants_file.empty()) {
        std::ifstream in(o.constants_file);
        if (!in) throw std::runtime_error("cannot open " + o.constants_file);
        const auto j = nlohmann::json::parse(in);
        for (const auto& [key, v] : j.items()) {
            if (key == "reflection_scale") pc.reflection.scale = v.get<std::uint64_t>();
            else if (key == "reflection_offset") pc.reflection.offset = v.get<std::uint64_t>();
            else if (key == "eps_base") pc.eps.base = v.get<double>();
            else if (key == "eps_ratio") pc.eps.ratio = v.get<double>();
            else if (key == "per_run_success") pc.per_run_success = v.get<double>();
            else if (key == "search_miss") pc.search_miss = v.get<double>();
            else if (key == "pk_success_floor") pc.pk_success_floor = v.get<double>();
            else if (key == "pk_rep_offset") pc.pk_rep_offset = v.get<int>();
            else if (key == "part1_error") pc.part1_error = v.get<double>();
            else if (key == "bcw_c") pc.bcw_c = v.get<double>();
            else if (key == "index_exchange") pc.index_exchange = v.get<bool>();
            else throw std::invalid_argument("unknown constant: " + key);
        }
    }
    if (ns.eps) pc.eps.base = *ns.eps;
    return pc;
}

std::string constants_echo(const ProtocolConstants& pc) {
    std::ostringstream os;
    os << "refl=" << pc.reflection.scale << "x+" << pc.reflection.offset << ";eps=" << fmt(pc.eps.base) << "*" << fmt(pc.eps.ratio)
       << "^j;succ=" << fmt(pc.per_run_success) << ";miss=" << fmt(pc.search_miss) << ";pk=" << fmt(pc.pk_success_floor) << "+"
       << pc.pk_rep_offset << ";p1=" << fmt(pc.part1_error) << ";bcw=" << fmt(pc.bcw_c) << ";xchg=" << pc.index_exchange;
    return os.str();
}

// ---- trial pool ----

// Rows come back in trial order whatever the thread count. Each worker owns its SimCache.
std::vector<Row> run_trials(int trials, int threads, const std::function<Row(int, SimCache&)>& one) {
    std::vector<Row> out(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        SimCache cache;
        for (int i; (i = next++) < trials;) {
            try {
                out[static_cast<std::size_t>(i)] = one(i, cache);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = trials;
            }
        }
    };
    const int w = std::max(1, std::min(threads, trials));
    std::vector<std::thread> pool;
    for (int i = 1; i < w; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

std::uint64_t realization_seed(std::uint64_t seed, int trial) { return splitmix64(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial)); }

void require_pow2(int n, const char* what) {
    if (n < 2 || !is_pow2(static_cast<std::size_t>(n))) throw std::invalid_argument(std::string(what) + ": --n must be a power of 2, >= 2");
}

// ---- experiments ----

Table exp_search(const Options& o) {
    require_pow2(o.n, "search");
    const NoiseSpec ns = parse_noise(o.noise);
    const ProtocolConstants pc = load_constants(o, ns);
    const Gadget G = parse_gadget(o.gadget, o.n);
    const std::size_t n = static_cast<std::size_t>(o.n), t = static_cast<std::size_t>(o.t);
    if (t < 1 || t > n) throw std::invalid_argument("search: 1 <= t <= n");
    const bool unknown = o.mode == "unknown";
    if (!unknown && o.mode != "known") throw std::invalid_argument("search: --mode known|unknown");
    auto rows = run_trials(o.trials, o.threads, [&](int i, SimCache& cache) {
        Rng rng = verify::trial_rng(o.seed, static_cast<std::uint64_t>(i));
        const Signs z = verify::random_weight_string(n, t, rng);
        CostMeter m;
        Session s{rng, m, pc, ns.model(realization_seed(o.seed, i)), Backend::Sector, nullptr, nullptr, &cache};
        const auto inst = SearchInstance::planted(G, z);
        const auto hit = unknown ? search_unknown(inst, s) : search_known_t(inst, t, s);
        if (hit && z[*hit] != -1) throw std::logic_error("search reported a non-solution");
        return Row{str(i), str(hit.has_value()), hit ? str(*hit) : "", str(m.total()), str(m.epr_consumed)};
    });
    std::size_t succ = 0;
    double cost = 0, epr = 0;
    for (const auto& r : rows) succ += r[1] == "1", cost += std::stod(r[3]), epr += std::stod(r[4]);
    Table tb;
    tb.header = {"experiment", "mode", "n", "t", "gadget", "noise", "trials", "seed", "constants", "successes", "success_freq", "mean_cost", "mean_epr"};
    tb.rows.push_back({"search", o.mode, str(o.n), str(o.t), G.name, o.noise, str(o.trials), str(o.seed), constants_echo(pc), str(succ),
                       fmt(double(succ) / o.trials), fmt(cost / o.trials), fmt(epr / o.trials)});
    const int k = iteration_count(grover_angle(t, n));
    tb.summary.push_back("levels k=" + str(k) + "  closed-form run cost=" + str(search_run_cost(n, t, G, pc)));
    return tb;
}

Table exp_count(const Options& o) {
    require_pow2(o.n, "count");
    const NoiseSpec ns = parse_noise(o.noise);
    const ProtocolConstants pc = load_constants(o, ns);
    const Gadget G = parse_gadget(o.gadget, o.n);
    const std::size_t n = static_cast<std::size_t>(o.n), t = static_cast<std::size_t>(o.t);
    if (t < 1 || t > n) throw std::invalid_argument("count: 1 <= t <= n");
    auto rows = run_trials(o.trials, o.threads, [&](int i, SimCache& cache) {
        Rng rng = verify::trial_rng(o.seed, static_cast<std::uint64_t>(i));
        const std::size_t w = o.m >= 0 ? static_cast<std::size_t>(o.m) : rng() % (2 * t + 2);
        if (w > n) throw std::invalid_argument("count: weight exceeds n");
        const Signs z = verify::random_weight_string(n, w, rng);
        CostMeter m;
        Session s{rng, m, pc, ns.model(realization_seed(o.seed, i)), Backend::Sector, nullptr, nullptr, &cache};
        const auto rep = count_or_threshold(SearchInstance::planted(G, z), t, s);
        return Row{"count", str(o.n), str(o.t), G.name, o.noise, str(o.seed), constants_echo(pc), str(i), str(w), rep.describe(),
                   str(rep.correct_for(w)), str(m.total()), str(m.epr_consumed)};
    });
    Table tb;
    tb.header = {"experiment", "n", "t", "gadget", "noise", "seed", "constants", "trial", "weight", "output", "correct", "cost", "epr"};
    tb.rows = std::move(rows);
    std::size_t bad = 0;
    for (const auto& r : tb.rows) bad += r[10] == "0";
    tb.summary.push_back("errors " + str(bad) + "/" + str(o.trials));
    return tb;
}

Table exp_eval(const Options& o) {
    require_pow2(o.n, "eval-symmetric");
    const NoiseSpec ns = parse_noise(o.noise);
    const ProtocolConstants pc = load_constants(o, ns);
    const Gadget G = parse_gadget(o.gadget, o.n);
    const SymmetricSpec f = parse_symmetric(o.fn, o.n);
    if (f.n != o.n) throw std::invalid_argument("eval-symmetric: function arity differs from --n");
    const std::size_t n = static_cast<std::size_t>(o.n);
    const auto bcw = bcw_baseline_cost(f, n, pc.bcw_c);
    auto rows = run_trials(o.trials, o.threads, [&](int i, SimCache& cache) {
        Rng rng = verify::trial_rng(o.seed, static_cast<std::uint64_t>(i));
        const std::size_t w = o.m >= 0 ? static_cast<std::size_t>(o.m) : rng() % (n + 1);
        if (w > n) throw std::invalid_argument("eval-symmetric: weight exceeds n");
        const auto inst = SearchInstance::planted(G, verify::random_weight_string(n, w, rng));
        CostMeter m;
        Session s{rng, m, pc, ns.model(realization_seed(o.seed, i)), Backend::Sector, nullptr, nullptr, &cache};
        const auto rep = eval_symmetric(f, G, inst.X, inst.Y, s);
        const int8_t want = f.at_weight(static_cast<int>(w));
        return Row{"eval-symmetric", o.fn, str(o.n), G.name, o.noise, str(o.seed), constants_echo(pc), str(i), str(w), str(int(rep.value)),
                   str(int(want)), rep.path, str(m.total()), str(bcw)};
    });
    Table tb;
    tb.header = {"experiment", "fn", "n", "gadget", "noise", "seed", "constants", "trial", "weight", "value", "expected", "path", "cost", "bcw_cost"};
    tb.rows = std::move(rows);
    std::size_t bad = 0;
    for (const auto& r : tb.rows) bad += r[9] != r[10];
    tb.summary.push_back("t=" + str(symmetric_threshold(f)) + " Gamma=" + str(gamma(f)) + " errors " + str(bad) + "/" + str(o.trials));
    return tb;
}

// Inputs for r o~ h_G in the X-blocks-then-Y-blocks layout; odd trials corrupt one block.
Table exp_query(const Options& o) {
    const Gadget G = parse_gadget(o.gadget, o.n);
    const BooleanFunction r = parse_function(o.fn, o.n);
    const std::size_t n = static_cast<std::size_t>(r.n), jl = std::size_t{1} << G.j, kl = std::size_t{1} << G.k;
    auto rows = run_trials(o.trials, o.threads, [&](int i, SimCache&) {
        Rng rng = verify::trial_rng(o.seed, static_cast<std::uint64_t>(i));
        Signs in;
        for (std::size_t b = 0; b < 2 * n; ++b) {
            const int bits = b < n ? G.j : G.k;
            Signs h = hadamard_codeword(from_index(rng() % (std::size_t{1} << bits), bits));
            if (rng() & 1)
                for (auto& v : h) v = static_cast<int8_t>(-v);
            in.insert(in.end(), h.begin(), h.end());
        }
        if (i % 2 == 1) in[rng() % in.size()] *= -1;
        QueryOracle q(in);
        const int8_t quantum = rtilde_hG_query_algorithm(q, r, G, rng);
        const int8_t classical = rtilde_hG_classical(in, r, G);
        return Row{"query-sim", o.fn, str(r.n), G.name, str(o.seed), str(i), str(int(quantum)), str(int(classical)), str(quantum == classical), str(q.count())};
    });
    Table tb;
    tb.header = {"experiment", "fn", "n", "gadget", "seed", "trial", "quantum", "classical", "agree", "queries"};
    tb.rows = std::move(rows);
    std::size_t bad = 0;
    for (const auto& row : tb.rows) bad += row[8] == "0";
    tb.summary.push_back("input length " + str(n * (jl + kl)) + "  disagreements " + str(bad) + "/" + str(o.trials));
    return tb;
}

Table exp_adeg(const Options& o) {
    const BooleanFunction f = parse_function(o.fn, o.n);
    const auto rep = approx_degree_report(f, o.eps);
    std::string errs;
    for (double e : rep.errors) errs += (errs.empty() ? "" : ";") + fmt(e);
    Table tb;
    tb.header = {"experiment", "fn", "n", "eps", "exact_lp", "errors", "degree"};
    tb.rows.push_back({"adeg", o.fn, str(f.n), fmt(o.eps), str(rep.exact_arithmetic), errs, str(rep.degree)});
    if (rep.witness) tb.summary.push_back("dual witness at degree " + str(rep.degree) + " with correlation " + fmt(rep.witness->correlation));
    return tb;
}

Table exp_disc(const Options& o) {
    const Gadget G = parse_gadget(o.gadget, o.n);
    const double d = discrepancy_uniform(G);
    // ADDR_n: 1/sqrt(n); IP_m: 2^(-m/2).
    double bound = 1.0;
    std::string exact;
    if (G.name.rfind("addr", 0) == 0) {
        const int an = G.k;
        bound = 1.0 / std::sqrt(static_cast<double>(an));
        exact = oracle::addr_disc_uniform(an).get_str();
    } else if (G.name.rfind("ip", 0) == 0) {
        bound = std::ldexp(1.0, -G.j / 2) * (G.j % 2 ? std::sqrt(0.5) : 1.0);
    }
    Table tb;
    tb.header = {"experiment", "gadget", "rows", "cols", "disc_uniform", "exact", "bound", "within_bound"};
    tb.rows.push_back({"disc", G.name, str(G.rows()), str(G.cols()), fmt(d), exact, fmt(bound), str(d <= bound + 1e-12)});
    return tb;
}

Table exp_xor(const Options& o) {
    const Gadget G = parse_gadget(o.gadget, o.n);
    const Distribution mu = o.mu == "balanced" ? balanced_distribution(G) : uniform_distribution(G.table.size());
    if (o.mu != "balanced" && o.mu != "uniform") throw std::invalid_argument("xor-lemma: --mu uniform|balanced");
    Table tb;
    tb.header = {"experiment", "gadget", "mu", "k", "lhs", "rhs", "holds"};
    for (int k = 1; k <= o.k; ++k) {
        const auto r = xor_lemma_check(G, mu, k);
        tb.rows.push_back({"xor-lemma", G.name, o.mu, str(k), fmt(r.lhs), fmt(r.rhs), str(r.holds)});
    }
    return tb;
}

Table exp_gdm(const Options& o) {
    const Gadget G = parse_gadget(o.gadget, o.n);
    const double d = discrepancy_uniform(G);
    Table tb;
    tb.header = {"experiment", "gadget", "delta", "eps", "disc_uniform", "bound_argument"};
    tb.rows.push_back({"gdm", G.name, fmt(o.delta), fmt(o.gdm_eps), fmt(d), fmt(gdm_bound(o.delta, o.gdm_eps, d))});
    return tb;
}

// Exhaustive when the input space has at most 2^16 points, sampled otherwise.
Table exp_reductions(const Options& o) {
    Table tb;
    tb.header = {"experiment", "fn", "n", "gadget", "box", "seed", "inputs", "mismatches"};
    std::size_t inputs = 0, bad = 0;
    std::string fname = o.fn, gname = o.gadget;
    int arity = o.n;
    if (o.box == "addr") {
        require_pow2(o.n, "reductions");
        const std::size_t N = static_cast<std::size_t>(o.n), a = static_cast<std::size_t>(log2_exact(N));
        const std::size_t xb = N * a, yb = N * N;
        const bool all = xb + yb <= 16;
        Rng rng(o.seed);
        const std::size_t total = all ? std::size_t{1} << (xb + yb) : static_cast<std::size_t>(o.trials);
        for (std::size_t idx = 0; idx < total; ++idx) {
            const std::size_t code = all ? idx : 0;
            const Signs x = all ? from_index(code >> yb, static_cast<int>(xb)) : verify::random_weight_string(xb, rng() % (xb + 1), rng);
            const Signs y = all ? from_index(code & ((std::size_t{1} << yb) - 1), static_cast<int>(yb)) : verify::random_weight_string(yb, rng() % (yb + 1), rng);
            ++inputs;
            bad += !embed_reduction_addr(o.n, x, y).equal;
        }
        fname = "parity", gname = "addr";
    } else {
        const Box b = o.box == "xor" ? Box::Xor : Box::And;
        if (o.box != "and" && o.box != "xor") throw std::invalid_argument("reductions: --box and|xor|addr");
        const Gadget G = parse_gadget(o.gadget, o.n);
        const BooleanFunction r = parse_function(o.fn, o.n);
        arity = r.n;
        gname = G.name;
        const std::size_t xb = static_cast<std::size_t>(r.n * G.j), yb = static_cast<std::size_t>(r.n * G.k);
        const bool all = xb + yb <= 16;
        Rng rng(o.seed);
        const std::size_t total = all ? std::size_t{1} << (xb + yb) : static_cast<std::size_t>(o.trials);
        for (std::size_t idx = 0; idx < total; ++idx) {
            Signs x(xb), y(yb);
            if (all) {
                x = from_index(idx >> yb, static_cast<int>(xb));
                y = from_index(idx & ((std::size_t{1} << yb) - 1), static_cast<int>(yb));
            } else {
                for (auto& v : x) v = (rng() & 1) ? 1 : -1;
                for (auto& v : y) v = (rng() & 1) ? 1 : -1;
            }
            ++inputs;
            bad += !embed_reduction(r, G, x, y, b).equal;
        }
    }
    tb.rows.push_back({"reductions", fname, str(arity), gname, o.box, str(o.seed), str(inputs), str(bad)});
    return tb;
}

Table exp_transitivity(const Options& o) {
    const Gadget G = parse_gadget(o.gadget, o.n);
    if (G.j != G.k) throw std::invalid_argument("transitivity: gadget needs equal input sizes");
    const std::size_t len = std::size_t{1} << G.j;
    const auto perms = transitive_perms(len);
    const bool lifted = verify_transitive_hadamardized(G, perms);
    std::string table_route;
    if (2 * len <= static_cast<std::size_t>(kMaxTableBits)) table_route = str(verify_transitive(hadamardize(G), perms));
    Table tb;
    tb.header = {"experiment", "gadget", "arity", "generators", "single_orbit", "transitive", "table_route"};
    tb.rows.push_back({"transitivity", G.name, str(2 * len), str(perms.size()), str(single_orbit(2 * len, perms)), str(lifted), table_route});
    return tb;
}

int run_verify(const Options& o) {
    int failures = 0;
    for (int id = 1; id <= 8; ++id) {
        if (o.criterion != 0 && id != o.criterion) continue;
        const auto c = verify::run_criterion(id);
        verify::print(std::cout, c, o.verbose || !c.pass());
        failures += !c.pass();
    }
    std::cout << (failures ? std::to_string(failures) + " criteria fail" : std::string("all criteria pass")) << "\n";
    return failures ? 1 : 0;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_csv(std::ostream& os, const Table& tb) {
    auto line = [&](const Row& r, const std::string& last) {
        for (std::size_t i = 0; i < r.size(); ++i) os << csv_field(r[i]) << ',';
        os << last << '\n';
    };
    line(tb.header, "commit");
    for (const auto& r : tb.rows) line(r, QCC_COMMIT);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-party search, counting and lower-bound experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--n", o.n, "input length, function arity, or gadget size");
    app.add_option("--t", o.t, "threshold or solution count");
    app.add_option("--k", o.k, "largest XOR-lemma power");
    app.add_option("--w", o.m, "planted weight (-1 draws one per trial)");
    app.add_option("--gadget", o.gadget, "and2 | xor2 | ip:<m> | addr[:<n>]");
    app.add_option("--fn", o.fn, "parity | or | nor | maj | thr:<tau> | custom:<file>");
    app.add_option("--noise", o.noise, "perfect | phase:<eps> | phases:<eps>");
    app.add_option("--mode", o.mode, "search: known | unknown");
    app.add_option("--box", o.box, "reductions: and | xor | addr");
    app.add_option("--mu", o.mu, "xor-lemma: uniform | balanced");
    app.add_option("--eps", o.eps, "adeg error");
    app.add_option("--delta", o.delta, "gdm success bias");
    app.add_option("--gdm-eps", o.gdm_eps, "gdm correlation");
    app.add_option("--trials", o.trials)->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed);
    app.add_option("--csv", o.csv, "write CSV here instead of stdout");
    app.add_option("--constants", o.constants_file, "JSON constant overrides");
    app.add_option("--threads", o.threads)->check(CLI::PositiveNumber);

    std::map<std::string, std::function<Table(const Options&)>> experiments{
        {"search", exp_search},           {"count", exp_count}, {"eval-symmetric", exp_eval}, {"query-sim", exp_query},
        {"adeg", exp_adeg},               {"disc", exp_disc},   {"xor-lemma", exp_xor},       {"gdm", exp_gdm},
        {"reductions", exp_reductions},   {"transitivity", exp_transitivity}};
    for (const auto& [name, fn] : experiments) app.add_subcommand(name);
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance battery");
    verify_cmd->add_option("--criterion", o.criterion, "run one criterion only");
    verify_cmd->add_flag("-v,--verbose", o.verbose);

    CLI11_PARSE(app, argc, argv);
    try {
        if (verify_cmd->parsed()) return run_verify(o);
        for (const auto& [name, fn] : experiments) {
            if (!app.got_subcommand(name)) continue;
            const Table tb = fn(o);
            if (o.csv.empty()) {
                write_csv(std::cout, tb);
            } else {
                std::ofstream out(o.csv);
                if (!out) throw std::runtime_error("cannot write " + o.csv);
                write_csv(out, tb);
                std::cerr << "wrote " << tb.rows.size() << " rows to " << o.csv << "\n";
            }
            for (const auto& s : tb.summary) std::cerr << s << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
