#include "influgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace influgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flat adjacency snapshot; algorithms iterate this, never the live graph.
struct Csr {
    std::size_t n = 0;
    std::vector<std::size_t> offsets; // n+1
    std::vector<NodeId> targets;
    std::vector<double> weights;

    std::span<const NodeId> row(NodeId u) const {
        return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
    }
};

Csr build_csr(const InfluenceGraph& g, Direction direction) {
    const std::size_t n = g.node_count();
    Csr csr;
    csr.n = n;
    csr.offsets.assign(n + 1, 0);
    csr.targets.reserve(g.edge_count());
    csr.weights.reserve(g.edge_count());

    if (direction == Direction::out) {
        for (NodeId u = 0; u < n; ++u) {
            for (const auto& e : g.out_edges(u)) {
                csr.targets.push_back(e.target);
                csr.weights.push_back(e.weight);
            }
            csr.offsets[u + 1] = csr.targets.size();
        }
    } else {
        // Reverse rows: row v lists the sources of edges into v, with weights.
        std::vector<std::size_t> counts(n, 0);
        for (NodeId u = 0; u < n; ++u)
            counts[u] = g.in_neighbors(u).size();
        for (NodeId u = 0; u < n; ++u)
            csr.offsets[u + 1] = csr.offsets[u] + counts[u];
        csr.targets.resize(g.edge_count());
        csr.weights.resize(g.edge_count());
        std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
        for (NodeId u = 0; u < n; ++u) {
            for (const auto& e : g.out_edges(u)) {
                std::size_t slot = cursor[e.target]++;
                csr.targets[slot] = u;
                csr.weights[slot] = e.weight;
            }
        }
    }
    return csr;
}

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(a[i] - b[i]);
    return s;
}

void require_edges(const InfluenceGraph& g, Measure m) {
    if (g.edge_count() == 0)
        throw DegenerateInputError(std::string(measure_name(m)) +
                                   " undefined on an edgeless graph");
}

// y = M x over a CSR snapshot of M's rows.
void csr_apply(const Csr& m, std::span<const double> x, std::span<double> y) {
    for (NodeId u = 0; u < m.n; ++u) {
        double sum = 0.0;
        for (std::size_t k = m.offsets[u]; k < m.offsets[u + 1]; ++k)
            sum += m.weights[k] * x[m.targets[k]];
        y[u] = sum;
    }
}

[[noreturn]] void throw_non_convergence(Measure m, std::vector<double> last,
                                        int iterations, double residual) {
    CentralityResult partial{m, std::move(last), false, iterations, residual};
    throw NonConvergenceError(std::string(measure_name(m)) +
                                  " did not converge within " +
                                  std::to_string(iterations) + " iterations",
                              std::move(partial));
}

} // namespace

const std::array<Measure, kMeasureCount>& measure_registry() {
    static const std::array<Measure, kMeasureCount> registry = {
        Measure::in_degree,          Measure::out_degree,
        Measure::total_degree,       Measure::weighted_in_degree,
        Measure::weighted_out_degree, Measure::weighted_total_degree,
        Measure::betweenness,        Measure::weighted_betweenness,
        Measure::closeness_in,       Measure::closeness_out,
        Measure::harmonic_in,        Measure::harmonic_out,
        Measure::eigenvector_right,  Measure::eigenvector_left,
        Measure::katz,               Measure::pagerank,
        Measure::reverse_pagerank,   Measure::hits_authority,
        Measure::hits_hub,           Measure::contribution,
    };
    return registry;
}

std::string_view measure_name(Measure m) {
    switch (m) {
    case Measure::in_degree: return "in-degree";
    case Measure::out_degree: return "out-degree";
    case Measure::total_degree: return "total-degree";
    case Measure::weighted_in_degree: return "weighted-in-degree";
    case Measure::weighted_out_degree: return "weighted-out-degree";
    case Measure::weighted_total_degree: return "weighted-total-degree";
    case Measure::betweenness: return "betweenness";
    case Measure::weighted_betweenness: return "weighted-betweenness";
    case Measure::closeness_in: return "closeness-in";
    case Measure::closeness_out: return "closeness-out";
    case Measure::harmonic_in: return "harmonic-in";
    case Measure::harmonic_out: return "harmonic-out";
    case Measure::eigenvector_right: return "eigenvector-right";
    case Measure::eigenvector_left: return "eigenvector-left";
    case Measure::katz: return "katz";
    case Measure::pagerank: return "pagerank";
    case Measure::reverse_pagerank: return "reverse-pagerank";
    case Measure::hits_authority: return "hits-authority";
    case Measure::hits_hub: return "hits-hub";
    case Measure::contribution: return "contribution";
    }
    return "unknown";
}

std::optional<Measure> measure_from_name(std::string_view name) {
    for (Measure m : measure_registry())
        if (measure_name(m) == name)
            return m;
    return std::nullopt;
}

void SolverConfig::check() const {
    if (!(tolerance > 0.0))
        throw InvalidParameterError("tolerance must be positive");
    if (max_iterations < 1)
        throw InvalidParameterError("max_iterations must be positive");
    if (!(damping > 0.0 && damping < 1.0))
        throw InvalidParameterError("damping must lie in (0,1)");
    if (!(katz_alpha > 0.0))
        throw InvalidParameterError("katz_alpha must be positive");
    if (!(katz_beta > 0.0))
        throw InvalidParameterError("katz_beta must be positive");
    if (!(jaccard_epsilon > 0.0))
        throw InvalidParameterError("jaccard_epsilon must be positive");
}

CentralityResult degree_scores(const InfluenceGraph& graph, Direction direction,
                               bool weighted) {
    const std::size_t n = graph.node_count();
    Measure m;
    switch (direction) {
    case Direction::in:
        m = weighted ? Measure::weighted_in_degree : Measure::in_degree;
        break;
    case Direction::out:
        m = weighted ? Measure::weighted_out_degree : Measure::out_degree;
        break;
    default:
        m = weighted ? Measure::weighted_total_degree : Measure::total_degree;
        break;
    }
    CentralityResult result{m, std::vector<double>(n, 0.0), true, 0, 0.0};
    graph.for_each_edge([&](const InfluenceEdge& e) {
        double value = weighted ? e.weight : 1.0;
        if (direction == Direction::out || direction == Direction::all)
            result.scores[e.source] += value;
        if (direction == Direction::in || direction == Direction::all)
            result.scores[e.target] += value;
    });
    return result;
}

CentralityResult betweenness_scores(const InfluenceGraph& graph, bool weighted) {
    const std::size_t n = graph.node_count();
    const Measure m = weighted ? Measure::weighted_betweenness : Measure::betweenness;

    if (weighted) {
        bool bad = false;
        graph.for_each_edge([&](const InfluenceEdge& e) {
            if (!(e.weight > 0.0))
                bad = true;
        });
        if (bad)
            throw InvalidWeightError("weighted betweenness requires positive weights");
    }

    Csr out = build_csr(graph, Direction::out);
    Csr in = build_csr(graph, Direction::in);

    CentralityResult result{m, std::vector<double>(n, 0.0), true, 0, 0.0};
    if (n < 3 || graph.edge_count() == 0)
        return result;

    std::vector<double> dist(n, kInf);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<NodeId> order; // settle order of reached nodes
    order.reserve(n);

    auto accumulate = [&](NodeId s) {
        // Walk the shortest-path DAG backwards over in-edges.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId w = *it;
            for (std::size_t k = in.offsets[w]; k < in.offsets[w + 1]; ++k) {
                NodeId v = in.targets[k];
                double len = weighted ? 1.0 / in.weights[k] : 1.0;
                if (dist[v] + len == dist[w])
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s)
                result.scores[w] += delta[w];
        }
        for (NodeId v : order) { // reset only what this source touched
            dist[v] = kInf;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
        order.clear();
    };

    if (!weighted) {
        std::vector<NodeId> queue(n);
        for (NodeId s = 0; s < n; ++s) {
            std::size_t head = 0, tail = 0;
            dist[s] = 0.0;
            sigma[s] = 1.0;
            queue[tail++] = s;
            while (head < tail) {
                NodeId u = queue[head++];
                order.push_back(u);
                for (std::size_t k = out.offsets[u]; k < out.offsets[u + 1]; ++k) {
                    NodeId v = out.targets[k];
                    if (dist[v] == kInf) {
                        dist[v] = dist[u] + 1.0;
                        queue[tail++] = v;
                    }
                    if (dist[v] == dist[u] + 1.0)
                        sigma[v] += sigma[u];
                }
            }
            accumulate(s);
        }
    } else {
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        std::vector<bool> settled(n, false);
        for (NodeId s = 0; s < n; ++s) {
            dist[s] = 0.0;
            sigma[s] = 1.0;
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (settled[u] || d > dist[u])
                    continue;
                settled[u] = true;
                order.push_back(u);
                for (std::size_t k = out.offsets[u]; k < out.offsets[u + 1]; ++k) {
                    NodeId v = out.targets[k];
                    double nd = dist[u] + 1.0 / out.weights[k];
                    if (nd < dist[v]) {
                        dist[v] = nd;
                        sigma[v] = sigma[u];
                        pq.push({nd, v});
                    } else if (nd == dist[v] && !settled[v]) {
                        sigma[v] += sigma[u];
                    }
                }
            }
            for (NodeId v : order)
                settled[v] = false;
            accumulate(s);
        }
    }
    return result;
}

namespace {

// BFS hop distances from s along csr rows; touched nodes recorded in `order`.
void bfs_distances(const Csr& csr, NodeId s, std::vector<double>& dist,
                   std::vector<NodeId>& queue, std::vector<NodeId>& order) {
    std::size_t head = 0, tail = 0;
    dist[s] = 0.0;
    queue[tail++] = s;
    while (head < tail) {
        NodeId u = queue[head++];
        order.push_back(u);
        for (NodeId v : csr.row(u)) {
            if (dist[v] == kInf) {
                dist[v] = dist[u] + 1.0;
                queue[tail++] = v;
            }
        }
    }
}

} // namespace

CentralityResult closeness_scores(const InfluenceGraph& graph, Direction direction) {
    if (direction == Direction::all)
        throw InvalidInputError("closeness direction must be in or out");
    const std::size_t n = graph.node_count();
    const Measure m = direction == Direction::in ? Measure::closeness_in
                                                 : Measure::closeness_out;
    CentralityResult result{m, std::vector<double>(n, 0.0), true, 0, 0.0};
    if (n < 2)
        return result;

    Csr csr = build_csr(graph, direction);
    std::vector<double> dist(n, kInf);
    std::vector<NodeId> queue(n), order;
    order.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        bfs_distances(csr, s, dist, queue, order);
        double total = 0.0;
        std::size_t reached = order.size(); // includes s itself
        for (NodeId v : order)
            total += dist[v];
        if (reached > 1) {
            double r1 = static_cast<double>(reached - 1);
            result.scores[s] = (r1 / static_cast<double>(n - 1)) * (r1 / total);
        }
        for (NodeId v : order)
            dist[v] = kInf;
        order.clear();
    }
    return result;
}

CentralityResult harmonic_scores(const InfluenceGraph& graph, Direction direction) {
    if (direction == Direction::all)
        throw InvalidInputError("harmonic direction must be in or out");
    const std::size_t n = graph.node_count();
    const Measure m = direction == Direction::in ? Measure::harmonic_in
                                                 : Measure::harmonic_out;
    CentralityResult result{m, std::vector<double>(n, 0.0), true, 0, 0.0};
    if (n < 2)
        return result;

    Csr csr = build_csr(graph, direction);
    std::vector<double> dist(n, kInf);
    std::vector<NodeId> queue(n), order;
    order.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        bfs_distances(csr, s, dist, queue, order);
        double sum = 0.0;
        for (NodeId v : order)
            if (v != s)
                sum += 1.0 / dist[v];
        result.scores[s] = sum;
        for (NodeId v : order)
            dist[v] = kInf;
        order.clear();
    }
    return result;
}

CentralityResult eigenvector_scores(const InfluenceGraph& graph,
                                    EigenvectorSide side,
                                    const SolverConfig& config) {
    config.check();
    const Measure m = side == EigenvectorSide::right ? Measure::eigenvector_right
                                                     : Measure::eigenvector_left;
    require_edges(graph, m);
    const std::size_t n = graph.node_count();

    // Right side multiplies by A (rows = out-edges); left side by A^T.
    Csr csr = build_csr(graph, side == EigenvectorSide::right ? Direction::out
                                                              : Direction::in);

    // Iterate on A + I: same dominant eigenvector for a nonnegative matrix,
    // but the unit shift breaks the +/- eigenvalue pairing of bipartite
    // structures that makes the bare iteration oscillate forever.
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n, 0.0);
    double residual = kInf;
    for (int it = 1; it <= config.max_iterations; ++it) {
        csr_apply(csr, x, y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += x[i];
        double norm = l2_norm(y);
        for (double& v : y)
            v = std::max(v / norm, 0.0);
        residual = l2_distance(x, y);
        x.swap(y);
        if (residual <= config.tolerance)
            return CentralityResult{m, std::move(x), true, it, residual};
    }
    throw_non_convergence(m, std::move(x), config.max_iterations, residual);
}

CentralityResult katz_scores(const InfluenceGraph& graph,
                             const SolverConfig& config) {
    config.check();
    const std::size_t n = graph.node_count();
    if (n == 0)
        return CentralityResult{Measure::katz, {}, true, 0, 0.0};

    double max_total = 0.0;
    {
        CentralityResult deg = degree_scores(graph, Direction::all, true);
        for (double d : deg.scores)
            max_total = std::max(max_total, d);
    }
    if (max_total > 0.0 && config.katz_alpha >= 1.0 / max_total)
        throw InvalidParameterError(
            "katz_alpha violates the spectral-radius bound: alpha must be below 1/" +
            std::to_string(max_total));

    Csr in = build_csr(graph, Direction::in);
    std::vector<double> x(n, config.katz_beta);
    std::vector<double> y(n, 0.0);
    double residual = kInf;
    for (int it = 1; it <= config.max_iterations; ++it) {
        csr_apply(in, x, y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = config.katz_alpha * y[i] + config.katz_beta;
        residual = l2_distance(x, y);
        x.swap(y);
        if (residual <= config.tolerance) {
            double norm = l2_norm(x);
            for (double& v : x)
                v /= norm;
            return CentralityResult{Measure::katz, std::move(x), true, it, residual};
        }
    }
    double norm = l2_norm(x);
    for (double& v : x)
        v /= norm;
    throw_non_convergence(Measure::katz, std::move(x), config.max_iterations,
                          residual);
}

CentralityResult pagerank_scores(const InfluenceGraph& graph, bool reverse,
                                 const SolverConfig& config) {
    config.check();
    const Measure m = reverse ? Measure::reverse_pagerank : Measure::pagerank;
    const std::size_t n = graph.node_count();
    if (n == 0)
        return CentralityResult{m, {}, true, 0, 0.0};

    // Push-style update over out-rows (of the transpose when reversed).
    Csr out = reverse ? build_csr(graph, Direction::in)
                      : build_csr(graph, Direction::out);
    std::vector<double> out_weight(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
        for (std::size_t k = out.offsets[u]; k < out.offsets[u + 1]; ++k)
            out_weight[u] += out.weights[k];

    const double d = config.damping;
    const double teleport = (1.0 - d) / static_cast<double>(n);
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n, 0.0);
    double residual = kInf;
    for (int it = 1; it <= config.max_iterations; ++it) {
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u)
            if (out_weight[u] == 0.0)
                dangling += x[u];
        double base = teleport + d * dangling / static_cast<double>(n);
        std::fill(y.begin(), y.end(), base);
        for (NodeId u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0)
                continue;
            double share = d * x[u] / out_weight[u];
            for (std::size_t k = out.offsets[u]; k < out.offsets[u + 1]; ++k)
                y[out.targets[k]] += share * out.weights[k];
        }
        residual = l1_distance(x, y);
        x.swap(y);
        if (residual <= config.tolerance) {
            double sum = 0.0;
            for (double v : x)
                sum += v;
            for (double& v : x)
                v /= sum;
            return CentralityResult{m, std::move(x), true, it, residual};
        }
    }
    throw_non_convergence(m, std::move(x), config.max_iterations, residual);
}

HitsResult hits_scores(const InfluenceGraph& graph, const SolverConfig& config) {
    config.check();
    require_edges(graph, Measure::hits_authority);
    const std::size_t n = graph.node_count();

    Csr out = build_csr(graph, Direction::out);
    Csr in = build_csr(graph, Direction::in);

    double uniform = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> auth(n, uniform), hub(n, uniform);
    std::vector<double> auth_next(n, 0.0), hub_next(n, 0.0);
    double residual = kInf;
    for (int it = 1; it <= config.max_iterations; ++it) {
        csr_apply(in, hub, auth_next); // a = A^T h
        double na = l2_norm(auth_next);
        for (double& v : auth_next)
            v /= na;
        csr_apply(out, auth_next, hub_next); // h = A a
        double nh = l2_norm(hub_next);
        for (double& v : hub_next)
            v /= nh;
        residual = std::max(l2_distance(auth, auth_next),
                            l2_distance(hub, hub_next));
        auth.swap(auth_next);
        hub.swap(hub_next);
        if (residual <= config.tolerance) {
            return HitsResult{
                CentralityResult{Measure::hits_authority, std::move(auth), true,
                                 it, residual},
                CentralityResult{Measure::hits_hub, std::move(hub), true, it,
                                 residual}};
        }
    }
    throw_non_convergence(Measure::hits_authority, std::move(auth),
                          config.max_iterations, residual);
}

InfluenceGraph inverse_jaccard_weights(const InfluenceGraph& graph,
                                       double epsilon) {
    if (!(epsilon > 0.0))
        throw InvalidParameterError("jaccard epsilon must be positive");
    const std::size_t n = graph.node_count();

    std::vector<std::vector<NodeId>> all_neighbors(n);
    for (NodeId u = 0; u < n; ++u) {
        auto nb = graph.neighbors(u, Direction::all);
        std::sort(nb.begin(), nb.end());
        all_neighbors[u] = std::move(nb);
    }

    auto jaccard = [&](NodeId u, NodeId v) {
        // Sorted-merge intersection/union over N(u)\{v} and N(v)\{u}.
        const auto& a = all_neighbors[u];
        const auto& b = all_neighbors[v];
        std::size_t i = 0, j = 0, inter = 0, uni = 0;
        while (i < a.size() || j < b.size()) {
            NodeId x = i < a.size() ? a[i] : std::numeric_limits<NodeId>::max();
            NodeId y = j < b.size() ? b[j] : std::numeric_limits<NodeId>::max();
            if (x == v) { ++i; continue; }
            if (y == u) { ++j; continue; }
            if (x == y) {
                ++inter;
                ++uni;
                ++i;
                ++j;
            } else if (x < y) {
                ++uni;
                ++i;
            } else {
                ++uni;
                ++j;
            }
        }
        return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    };

    InfluenceGraph result = graph;
    graph.for_each_edge([&](const InfluenceEdge& e) {
        double w = std::max(1.0 - jaccard(e.source, e.target), epsilon);
        result.set_weight(e.source, e.target, w);
    });
    return result;
}

CentralityResult contribution_scores(const InfluenceGraph& graph,
                                     const SolverConfig& config) {
    config.check();
    require_edges(graph, Measure::contribution);
    InfluenceGraph reweighted =
        inverse_jaccard_weights(graph, config.jaccard_epsilon);
    try {
        CentralityResult result =
            eigenvector_scores(reweighted, EigenvectorSide::right, config);
        result.measure = Measure::contribution;
        return result;
    } catch (NonConvergenceError& e) {
        CentralityResult partial = e.partial();
        partial.measure = Measure::contribution;
        throw NonConvergenceError("contribution did not converge", std::move(partial));
    }
}

CentralityResult compute_measure(const InfluenceGraph& graph, Measure m,
                                 const SolverConfig& config) {
    switch (m) {
    case Measure::in_degree: return degree_scores(graph, Direction::in, false);
    case Measure::out_degree: return degree_scores(graph, Direction::out, false);
    case Measure::total_degree: return degree_scores(graph, Direction::all, false);
    case Measure::weighted_in_degree: return degree_scores(graph, Direction::in, true);
    case Measure::weighted_out_degree: return degree_scores(graph, Direction::out, true);
    case Measure::weighted_total_degree: return degree_scores(graph, Direction::all, true);
    case Measure::betweenness: return betweenness_scores(graph, false);
    case Measure::weighted_betweenness: return betweenness_scores(graph, true);
    case Measure::closeness_in: return closeness_scores(graph, Direction::in);
    case Measure::closeness_out: return closeness_scores(graph, Direction::out);
    case Measure::harmonic_in: return harmonic_scores(graph, Direction::in);
    case Measure::harmonic_out: return harmonic_scores(graph, Direction::out);
    case Measure::eigenvector_right:
        return eigenvector_scores(graph, EigenvectorSide::right, config);
    case Measure::eigenvector_left:
        return eigenvector_scores(graph, EigenvectorSide::left, config);
    case Measure::katz: return katz_scores(graph, config);
    case Measure::pagerank: return pagerank_scores(graph, false, config);
    case Measure::reverse_pagerank: return pagerank_scores(graph, true, config);
    case Measure::hits_authority: return hits_scores(graph, config).authority;
    case Measure::hits_hub: return hits_scores(graph, config).hub;
    case Measure::contribution: return contribution_scores(graph, config);
    }
    throw InvalidInputError("unknown measure");
}

std::vector<SuiteEntry> run_suite(const InfluenceGraph& graph,
                                  const SolverConfig& config) {
    const auto& registry = measure_registry();
    return run_suite(graph, std::span<const Measure>(registry), config);
}

std::vector<SuiteEntry> run_suite(const InfluenceGraph& graph,
                                  std::span<const Measure> measures,
                                  const SolverConfig& config) {
    std::vector<SuiteEntry> entries;
    entries.reserve(measures.size());
    for (Measure m : measures) {
        SuiteEntry entry{m, std::nullopt, {}};
        try {
            entry.result = compute_measure(graph, m, config);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace influgraph
