#include "mrfse/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mrfse/errors.hpp"
#include "mrfse/rng.hpp"

namespace mrfse {

namespace {

constexpr double kCondTolerance = 1e-10;  // conditional-equality tolerance
constexpr std::int64_t kJointCellLimit = 1LL << 22;

// Seeds for the generated extreme models; fixed so the CPTs are part of the
// model definition, not of any particular run.
constexpr std::uint64_t kCompleteModelSeed = 0x636f6d706c657465ULL;
constexpr std::uint64_t kIndependentModelSeed = 0x696e646570656e64ULL;

std::vector<std::string> indexed_names(int p) {
    std::vector<std::string> names;
    names.reserve(p);
    for (int i = 1; i <= p; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

DiscreteDistribution seeded_row(SplitMix64& rng, int a) {
    DiscreteDistribution d;
    d.probs.resize(a);
    double sum = 0.0;
    for (int i = 0; i < a; ++i) {
        d.probs[i] = 0.15 + rng.next_double();
        sum += d.probs[i];
    }
    for (double& x : d.probs) x /= sum;
    return d;
}

// Parses "name(k)" into (name, k); returns nullopt for a bare name.
std::optional<std::pair<std::string, int>> parse_parameterized(const std::string& s) {
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return std::nullopt;
    const std::string base = s.substr(0, open);
    const std::string arg = s.substr(open + 1, s.size() - open - 2);
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return std::make_pair(base, std::stoi(arg));
}

FactorizedModel make_example3() {
    FactorizedModel m;
    m.name = "example3";
    m.alphabet.labels = {"0", "1", "2"};
    m.vertices.names = indexed_names(5);

    auto dist = [](double a, double b, double c) {
        return DiscreteDistribution{{a, b, c}};
    };

    // ids: x1=0, x2=1, x3=2, x4=3, x5=4; sampling order x3, x1, x2, x4, x5
    Factor f3;
    f3.target = 2;
    f3.cpt = {dist(0.3, 0.2, 0.5)};

    Factor f1;
    f1.target = 0;
    f1.parents = {2};
    f1.cpt = {dist(0.2, 0.4, 0.4), dist(0.3, 0.4, 0.3), dist(0.4, 0.3, 0.3)};

    // rows in lexicographic (x1, x3) order
    Factor f2;
    f2.target = 1;
    f2.parents = {0, 2};
    f2.cpt = {
        dist(0.5, 0.5, 0.0),    // x1=0, x3=0
        dist(0.3, 0.0, 0.7),    // x1=0, x3=1
        dist(0.0, 0.75, 0.25),  // x1=0, x3=2
        dist(0.5, 0.25, 0.25),  // x1=1, x3=0
        dist(0.25, 0.25, 0.5),  // x1=1, x3=1
        dist(0.3, 0.3, 0.4),    // x1=1, x3=2
        dist(0.25, 0.25, 0.5),  // x1=2, x3=0
        dist(0.3, 0.7, 0.0),    // x1=2, x3=1
        dist(0.4, 0.3, 0.3),    // x1=2, x3=2
    };

    Factor f4;
    f4.target = 3;
    f4.parents = {2};
    f4.cpt = {dist(0.1, 0.4, 0.5), dist(0.2, 0.7, 0.1), dist(0.3, 0.6, 0.1)};

    Factor f5;
    f5.target = 4;
    f5.parents = {2};
    f5.cpt = {dist(0.2, 0.6, 0.2), dist(0.3, 0.1, 0.6), dist(0.4, 0.3, 0.3)};

    m.factors = {f3, f1, f2, f4, f5};
    m.validate();
    return m;
}

FactorizedModel make_markov_chain_window(int k) {
    if (k < 1) throw ArgumentError("window length must be at least 1");
    FactorizedModel m;
    m.name = "markov_chain_window(" + std::to_string(k) + ")";
    m.alphabet.labels = {"0", "1"};
    m.vertices.names = indexed_names(k);

    // Transition rows (1/2, 1/2) and (1, 0); initial law is the stationary
    // distribution (2/3, 1/3). Two adjacent ones are impossible.
    Factor first;
    first.target = 0;
    first.cpt = {DiscreteDistribution{{2.0 / 3.0, 1.0 / 3.0}}};
    m.factors.push_back(first);
    for (int i = 1; i < k; ++i) {
        Factor f;
        f.target = i;
        f.parents = {i - 1};
        f.cpt = {DiscreteDistribution{{0.5, 0.5}}, DiscreteDistribution{{1.0, 0.0}}};
        m.factors.push_back(f);
    }
    m.validate();
    return m;
}

FactorizedModel make_complete(int p) {
    if (p < 1) throw ArgumentError("vertex count must be at least 1");
    FactorizedModel m;
    m.name = "complete(" + std::to_string(p) + ")";
    m.alphabet.labels = {"0", "1", "2"};
    m.vertices.names = indexed_names(p);

    SplitMix64 rng(kCompleteModelSeed + static_cast<std::uint64_t>(p));
    const int a = m.alphabet.size();
    std::size_t rows = 1;
    for (int i = 0; i < p; ++i) {
        Factor f;
        f.target = i;
        for (int parent = 0; parent < i; ++parent) f.parents.push_back(parent);
        f.cpt.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) f.cpt.push_back(seeded_row(rng, a));
        m.factors.push_back(std::move(f));
        rows *= a;
    }
    m.validate();
    return m;
}

FactorizedModel make_independent(int p) {
    if (p < 1) throw ArgumentError("vertex count must be at least 1");
    FactorizedModel m;
    m.name = "independent(" + std::to_string(p) + ")";
    m.alphabet.labels = {"0", "1", "2"};
    m.vertices.names = indexed_names(p);

    SplitMix64 rng(kIndependentModelSeed + static_cast<std::uint64_t>(p));
    for (int i = 0; i < p; ++i) {
        Factor f;
        f.target = i;
        f.cpt = {seeded_row(rng, m.alphabet.size())};
        m.factors.push_back(std::move(f));
    }
    m.validate();
    return m;
}

// Dense big-endian radix index over an id list (first id most significant).
std::int64_t radix_index(std::span<const std::uint8_t> full, std::span<const int> ids, int a) {
    std::int64_t idx = 0;
    for (int id : ids) idx = idx * a + full[id];
    return idx;
}

// All conditionals p(._v | a_S) as a dense table over configurations of S,
// computed from the exact joint. Rows with zero mass stay empty.
struct ConditionalTable {
    std::vector<double> mass;          // |A|^|S| marginal masses of a_S
    std::vector<double> probs;         // |A|^|S| x |A|, normalized where mass > 0
    int alphabet = 0;

    std::span<const double> row(std::int64_t idx) const {
        return {probs.data() + static_cast<std::size_t>(idx) * alphabet,
                static_cast<std::size_t>(alphabet)};
    }
};

// Exact joint over all p vertices, big-endian over ids 0..p-1. Guards memory.
std::vector<double> full_joint(const FactorizedModel& m) {
    const int p = m.p();
    const int a = m.alphabet.size();
    std::int64_t cells = 1;
    for (int i = 0; i < p; ++i) {
        cells *= a;
        if (p > 20 || cells > kJointCellLimit)
            throw CapacityError("exact computation limited to |A|^p <= 2^22 and p <= 20");
    }
    std::vector<double> joint(static_cast<std::size_t>(cells));
    std::vector<std::uint8_t> config(p, 0);
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        std::int64_t rem = idx;
        for (int i = p - 1; i >= 0; --i) {
            config[i] = static_cast<std::uint8_t>(rem % a);
            rem /= a;
        }
        joint[static_cast<std::size_t>(idx)] = m.joint_probability(config);
    }
    return joint;
}

ConditionalTable conditional_table(const FactorizedModel& m, std::span<const double> joint, int v,
                                   std::span<const int> cond) {
    const int p = m.p();
    const int a = m.alphabet.size();
    std::int64_t rows = 1;
    for (std::size_t i = 0; i < cond.size(); ++i) rows *= a;

    ConditionalTable table;
    table.alphabet = a;
    table.mass.assign(static_cast<std::size_t>(rows), 0.0);
    table.probs.assign(static_cast<std::size_t>(rows) * a, 0.0);

    std::vector<std::uint8_t> config(p, 0);
    const std::int64_t cells = static_cast<std::int64_t>(joint.size());
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        std::int64_t rem = idx;
        for (int i = p - 1; i >= 0; --i) {
            config[i] = static_cast<std::uint8_t>(rem % a);
            rem /= a;
        }
        const double mass = joint[static_cast<std::size_t>(idx)];
        if (mass == 0.0) continue;
        const std::int64_t row = radix_index(config, cond, a);
        table.mass[static_cast<std::size_t>(row)] += mass;
        table.probs[static_cast<std::size_t>(row) * a + config[v]] += mass;
    }
    for (std::int64_t r = 0; r < rows; ++r) {
        const double mass = table.mass[static_cast<std::size_t>(r)];
        if (mass == 0.0) continue;
        for (int sym = 0; sym < a; ++sym) table.probs[static_cast<std::size_t>(r) * a + sym] /= mass;
    }
    return table;
}

// Does conditioning on `cond` reproduce the full conditional of X_v on every
// positive-probability configuration?
bool is_markov_set(const FactorizedModel& m, std::span<const double> joint, int v,
                   std::span<const int> cond, const ConditionalTable& full_table,
                   std::span<const int> full_set) {
    const int a = m.alphabet.size();
    const ConditionalTable sub = conditional_table(m, joint, v, cond);

    const std::int64_t full_rows = static_cast<std::int64_t>(full_table.mass.size());
    std::vector<std::uint8_t> full_config(full_set.size(), 0);
    for (std::int64_t r = 0; r < full_rows; ++r) {
        if (full_table.mass[static_cast<std::size_t>(r)] == 0.0) continue;
        std::int64_t rem = r;
        for (int i = static_cast<int>(full_set.size()) - 1; i >= 0; --i) {
            full_config[i] = static_cast<std::uint8_t>(rem % a);
            rem /= a;
        }
        // project the full configuration onto cond (ids are a subsequence)
        std::int64_t sub_row = 0;
        std::size_t ci = 0;
        for (std::size_t i = 0; i < full_set.size() && ci < cond.size(); ++i) {
            if (full_set[i] == cond[ci]) {
                sub_row = sub_row * a + full_config[i];
                ++ci;
            }
        }
        const auto lhs = full_table.row(r);
        const auto rhs = sub.row(sub_row);
        for (int sym = 0; sym < a; ++sym) {
            if (std::abs(lhs[sym] - rhs[sym]) > kCondTolerance) return false;
        }
    }
    return true;
}

}  // namespace

std::size_t Factor::row_index(std::span<const std::uint8_t> parent_config,
                              int alphabet_size) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < parents.size(); ++i)
        idx = idx * alphabet_size + parent_config[i];
    return idx;
}

void FactorizedModel::validate() const {
    alphabet.validate();
    vertices.validate();
    const int n_vertices = p();
    if (static_cast<int>(factors.size()) != n_vertices)
        throw ArgumentError("model must have exactly one factor per vertex");

    std::vector<bool> seen(n_vertices, false);
    std::size_t expected_rows = 1;
    for (const auto& f : factors) {
        if (f.target < 0 || f.target >= n_vertices) throw ArgumentError("factor target out of range");
        if (seen[f.target]) throw ArgumentError("vertex appears as target more than once");
        expected_rows = 1;
        for (std::size_t i = 0; i < f.parents.size(); ++i) {
            const int parent = f.parents[i];
            if (parent < 0 || parent >= n_vertices) throw ArgumentError("factor parent out of range");
            if (!seen[parent])
                throw ArgumentError("factor parents must appear as earlier targets");
            if (i > 0 && f.parents[i - 1] >= parent)
                throw ArgumentError("factor parents must be strictly increasing");
            expected_rows *= alphabet.size();
        }
        if (f.cpt.size() != expected_rows)
            throw ArgumentError("cpt must cover every parent configuration");
        for (const auto& row : f.cpt) {
            if (row.size() != alphabet.size())
                throw ArgumentError("cpt row length must equal the alphabet size");
            row.validate();
        }
        seen[f.target] = true;
    }
}

double FactorizedModel::joint_probability(std::span<const std::uint8_t> full_config) const {
    double prob = 1.0;
    std::vector<std::uint8_t> parent_config;
    for (const auto& f : factors) {
        parent_config.clear();
        for (int parent : f.parents) parent_config.push_back(full_config[parent]);
        prob *= f.cpt[f.row_index(parent_config, alphabet.size())][full_config[f.target]];
        if (prob == 0.0) return 0.0;
    }
    return prob;
}

bool TrueGraph::has_edge(int v, int w) const {
    if (v > w) std::swap(v, w);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(v, w));
}

std::vector<int> TrueGraph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FactorizedModel builtin_model(const std::string& name) {
    if (name == "example3") return make_example3();
    if (const auto parsed = parse_parameterized(name)) {
        const auto& [base, arg] = *parsed;
        if (base == "markov_chain_window") return make_markov_chain_window(arg);
        if (base == "complete") return make_complete(arg);
        if (base == "independent") return make_independent(arg);
    }
    throw ArgumentError("unknown builtin model: " + name);
}

Sample sample_model(const FactorizedModel& m, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("sample size must be positive");
    const int p = m.p();
    const int a = m.alphabet.size();

    Sample s;
    s.alphabet = m.alphabet;
    s.vertices = m.vertices;
    s.n = n;
    s.data.resize(static_cast<std::size_t>(n) * p);

    SplitMix64 rng(seed);
    std::vector<std::uint8_t> row(p, 0);
    std::vector<std::uint8_t> parent_config;
    for (std::int64_t i = 0; i < n; ++i) {
        for (const auto& f : m.factors) {
            parent_config.clear();
            for (int parent : f.parents) parent_config.push_back(row[parent]);
            const auto& dist = f.cpt[f.row_index(parent_config, a)];
            const double u = rng.next_double();
            double cum = 0.0;
            int drawn = -1;
            for (int sym = 0; sym < a; ++sym) {
                cum += dist[sym];
                if (u < cum) {
                    drawn = sym;
                    break;
                }
            }
            if (drawn < 0) {
                // guard against cumulative rounding just below 1
                drawn = a - 1;
                while (drawn > 0 && dist[drawn] == 0.0) --drawn;
            }
            row[f.target] = static_cast<std::uint8_t>(drawn);
        }
        std::copy(row.begin(), row.end(), s.data.begin() + static_cast<std::size_t>(i) * p);
    }
    return s;
}

std::optional<DiscreteDistribution> exact_conditional(const FactorizedModel& m, int v,
                                                      std::span<const int> w_set,
                                                      std::span<const std::uint8_t> a_w) {
    const int p = m.p();
    const int a = m.alphabet.size();
    if (v < 0 || v >= p) throw ArgumentError("target vertex id out of range");
    if (w_set.size() != a_w.size()) throw ArgumentError("configuration does not align with W");
    for (std::size_t i = 0; i < w_set.size(); ++i) {
        if (w_set[i] < 0 || w_set[i] >= p) throw ArgumentError("conditioning vertex id out of range");
        if (w_set[i] == v) throw ArgumentError("target vertex cannot belong to the conditioning set");
        if (i > 0 && w_set[i - 1] >= w_set[i])
            throw ArgumentError("conditioning set must be strictly increasing");
        if (a_w[i] >= a) throw ArgumentError("symbol code out of alphabet range");
    }

    std::vector<int> unassigned;
    for (int u = 0; u < p; ++u) {
        if (u == v || std::binary_search(w_set.begin(), w_set.end(), u)) continue;
        unassigned.push_back(u);
    }
    if (unassigned.size() > 20)
        throw CapacityError("exact conditional limited to 20 unassigned vertices");

    std::vector<std::uint8_t> config(p, 0);
    for (std::size_t i = 0; i < w_set.size(); ++i) config[w_set[i]] = a_w[i];

    std::int64_t cells = 1;
    for (std::size_t i = 0; i < unassigned.size(); ++i) cells *= a;

    std::vector<double> numerator(a, 0.0);
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        std::int64_t rem = idx;
        for (int i = static_cast<int>(unassigned.size()) - 1; i >= 0; --i) {
            config[unassigned[i]] = static_cast<std::uint8_t>(rem % a);
            rem /= a;
        }
        for (int sym = 0; sym < a; ++sym) {
            config[v] = static_cast<std::uint8_t>(sym);
            numerator[sym] += m.joint_probability(config);
        }
    }
    double mass = 0.0;
    for (double x : numerator) mass += x;
    if (mass == 0.0) return std::nullopt;

    DiscreteDistribution dist;
    dist.probs.resize(a);
    for (int sym = 0; sym < a; ++sym) dist.probs[sym] = numerator[sym] / mass;
    return dist;
}

std::optional<DiscreteDistribution> exact_conditional(const FactorizedModel& m, int v,
                                                      const Configuration& a_w) {
    a_w.validate();
    return exact_conditional(m, v, a_w.vertices, a_w.symbols);
}

TrueGraph true_graph(const FactorizedModel& m) {
    const int p = m.p();
    const std::vector<double> joint = full_joint(m);

    // ne(v) = vertices whose removal from the full conditioning set breaks
    // some conditional; under the Markov intersection property this is the
    // smallest Markov neighborhood.
    std::vector<std::vector<int>> neighborhoods(p);
    for (int v = 0; v < p; ++v) {
        std::vector<int> full_set;
        for (int u = 0; u < p; ++u) {
            if (u != v) full_set.push_back(u);
        }
        const ConditionalTable full_table = conditional_table(m, joint, v, full_set);
        for (int w : full_set) {
            std::vector<int> without;
            for (int u : full_set) {
                if (u != w) without.push_back(u);
            }
            if (!is_markov_set(m, joint, v, without, full_table, full_set))
                neighborhoods[v].push_back(w);
        }
        if (!is_markov_set(m, joint, v, neighborhoods[v], full_table, full_set))
            throw ArgumentError(
                "model violates the Markov intersection property: deletion "
                "neighborhood is not itself Markov");
    }

    TrueGraph g;
    g.vertices = m.vertices;
    for (int v = 0; v < p; ++v) {
        for (int w : neighborhoods[v]) {
            if (w > v) g.edges.emplace_back(v, w);
        }
    }
    // union of both directions; duplicates collapse
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

TheoremConstants theorem_constants(const FactorizedModel& m, int v) {
    const int p = m.p();
    const int a = m.alphabet.size();
    if (v < 0 || v >= p) throw ArgumentError("target vertex id out of range");

    const TrueGraph g = true_graph(m);
    const std::vector<int> ne = g.neighbors(v);
    const std::vector<double> joint = full_joint(m);

    TheoremConstants out;
    out.p_min = 1.0;
    out.alpha_min = std::numeric_limits<double>::infinity();

    const ConditionalTable ne_table = conditional_table(m, joint, v, ne);

    // every subset of ne(v), the full set included for p_min
    const int k = static_cast<int>(ne.size());
    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
        std::vector<int> w;
        for (int i = 0; i < k; ++i) {
            if (bits & (1u << i)) w.push_back(ne[i]);
        }
        const ConditionalTable w_table = conditional_table(m, joint, v, w);
        for (std::size_t r = 0; r < w_table.mass.size(); ++r) {
            if (w_table.mass[r] == 0.0) continue;
            const auto dist = w_table.row(static_cast<std::int64_t>(r));
            for (int sym = 0; sym < a; ++sym) {
                if (dist[sym] > 0.0) out.p_min = std::min(out.p_min, dist[sym]);
            }
        }
        if (static_cast<int>(w.size()) == k) continue;  // alpha ranges over proper subsets

        double alpha = 0.0;
        std::vector<std::uint8_t> ne_config(ne.size(), 0);
        for (std::size_t r = 0; r < ne_table.mass.size(); ++r) {
            const double mass = ne_table.mass[r];
            if (mass == 0.0) continue;
            std::int64_t rem = static_cast<std::int64_t>(r);
            for (int i = k - 1; i >= 0; --i) {
                ne_config[i] = static_cast<std::uint8_t>(rem % a);
                rem /= a;
            }
            std::int64_t w_row = 0;
            std::size_t wi = 0;
            for (int i = 0; i < k && wi < w.size(); ++i) {
                if (ne[i] == w[wi]) {
                    w_row = w_row * a + ne_config[i];
                    ++wi;
                }
            }
            DiscreteDistribution p_ne, p_w;
            const auto ne_row = ne_table.row(static_cast<std::int64_t>(r));
            const auto w_row_dist = w_table.row(w_row);
            p_ne.probs.assign(ne_row.begin(), ne_row.end());
            p_w.probs.assign(w_row_dist.begin(), w_row_dist.end());
            alpha += mass * kl_divergence(p_ne, p_w);
        }
        out.alpha_min = std::min(out.alpha_min, alpha);
    }

    out.c_threshold = static_cast<double>(a) * a / (out.p_min * (a - 1));
    return out;
}

ErrorReport error_metrics(const TrueGraph& truth, const GraphEstimate& est) {
    if (truth.vertices.names != est.vertices.names)
        throw ArgumentError("true and estimated graphs must share the vertex set");
    const int p = truth.vertices.count();

    std::int64_t true_edges = 0;     // ordered pairs in E
    std::int64_t true_nonedges = 0;  // ordered pairs not in E (v != w)
    std::int64_t missed = 0;
    std::int64_t spurious = 0;
    for (int v = 0; v < p; ++v) {
        for (int w = 0; w < p; ++w) {
            if (v == w) continue;
            const bool in_truth = truth.has_edge(v, w);
            const bool in_est = est.has_edge(v, w);
            if (in_truth) {
                ++true_edges;
                if (!in_est) ++missed;
            } else {
                ++true_nonedges;
                if (in_est) ++spurious;
            }
        }
    }

    ErrorReport r;
    r.ue = true_edges == 0 ? 0.0 : static_cast<double>(missed) / static_cast<double>(true_edges);
    r.oe = true_nonedges == 0 ? 0.0
                              : static_cast<double>(spurious) / static_cast<double>(true_nonedges);
    const double ordered_pairs = static_cast<double>(p) * (p - 1);
    r.te = (r.oe * static_cast<double>(true_edges) + r.ue * static_cast<double>(true_nonedges)) /
           ordered_pairs;
    return r;
}

}  // namespace mrfse
