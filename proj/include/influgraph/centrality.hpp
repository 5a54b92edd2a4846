#ifndef INFLUGRAPH_CENTRALITY_HPP_
#define INFLUGRAPH_CENTRALITY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "influgraph/errors.hpp"
#include "influgraph/graph.hpp"

namespace influgraph {

/// The fixed 20-measure registry. Order here is the canonical suite order.
enum class Measure {
    in_degree,
    out_degree,
    total_degree,
    weighted_in_degree,
    weighted_out_degree,
    weighted_total_degree,
    betweenness,
    weighted_betweenness,
    closeness_in,
    closeness_out,
    harmonic_in,
    harmonic_out,
    eigenvector_right,
    eigenvector_left,
    katz,
    pagerank,
    reverse_pagerank,
    hits_authority,
    hits_hub,
    contribution,
};

inline constexpr std::size_t kMeasureCount = 20;

/// All 20 measures in registry order.
const std::array<Measure, kMeasureCount>& measure_registry();

std::string_view measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view name);

/// Iteration parameters shared by the spectral / random-walk measures.
struct SolverConfig {
    double tolerance = 1e-10;
    int max_iterations = 1000;
    double damping = 0.85;      // PageRank family
    double katz_alpha = 0.005;
    double katz_beta = 1.0;
    double jaccard_epsilon = 1e-6; // weight floor for inverse-Jaccard reweighting

    void check() const;
};

struct CentralityResult {
    Measure measure;
    std::vector<double> scores; // indexed by node id
    bool converged = true;
    int iterations = 0;
    double residual = 0.0;
};

/// Iterative solver hit max_iterations; carries the last iterate.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(std::string message, CentralityResult partial)
        : Error(std::move(message)), partial_(std::move(partial)) {}
    const CentralityResult& partial() const { return partial_; }

private:
    CentralityResult partial_;
};

/// Degree family. direction=total sums in and out.
CentralityResult degree_scores(const InfluenceGraph& graph, Direction direction,
                               bool weighted);

/// Directed Brandes betweenness, unnormalized. With weighted=true the
/// path length of an edge is 1/weight (stronger influence = shorter).
CentralityResult betweenness_scores(const InfluenceGraph& graph, bool weighted);

/// Wasserman-Faust closeness on unit hop distances. direction must be
/// in or out; "in" measures how quickly a node is reached.
CentralityResult closeness_scores(const InfluenceGraph& graph, Direction direction);

/// Harmonic centrality: sum of reciprocal hop distances, 1/inf = 0.
CentralityResult harmonic_scores(const InfluenceGraph& graph, Direction direction);

enum class EigenvectorSide { right, left };

/// Power iteration on the weighted adjacency matrix (left = transpose),
/// uniform start, L2-normalized each step.
CentralityResult eigenvector_scores(const InfluenceGraph& graph,
                                    EigenvectorSide side,
                                    const SolverConfig& config = {});

/// Katz: x = alpha * A^T x + beta * 1, Jacobi iteration, L2-normalized result.
CentralityResult katz_scores(const InfluenceGraph& graph,
                             const SolverConfig& config = {});

/// PageRank with weight-proportional transitions, uniform teleport and
/// uniform dangling redistribution. reverse=true runs on the transpose.
CentralityResult pagerank_scores(const InfluenceGraph& graph, bool reverse,
                                 const SolverConfig& config = {});

struct HitsResult {
    CentralityResult authority;
    CentralityResult hub;
};

/// HITS mutual recursion, L2 normalization each half-step.
HitsResult hits_scores(const InfluenceGraph& graph,
                       const SolverConfig& config = {});

/// Reweighted copy: each edge (u,v) gets weight 1 - J(u,v) where J is the
/// Jaccard similarity of the endpoints' all-direction neighbor sets with
/// the opposite endpoint removed (J = 0 on an empty union). Weights are
/// floored at epsilon to stay positive.
InfluenceGraph inverse_jaccard_weights(const InfluenceGraph& graph,
                                       double epsilon = 1e-6);

/// Eigenvector centrality (right side) on the inverse-Jaccard reweighted graph.
CentralityResult contribution_scores(const InfluenceGraph& graph,
                                     const SolverConfig& config = {});

/// Dispatches one registry measure by id.
CentralityResult compute_measure(const InfluenceGraph& graph, Measure m,
                                 const SolverConfig& config = {});

/// One suite slot: either a result or the error that prevented it.
struct SuiteEntry {
    Measure measure;
    std::optional<CentralityResult> result;
    std::string error; // empty on success
};

/// Runs the listed measures (default: the whole registry, registry order).
/// Individual failures are recorded, not propagated.
std::vector<SuiteEntry> run_suite(const InfluenceGraph& graph,
                                  const SolverConfig& config = {});
std::vector<SuiteEntry> run_suite(const InfluenceGraph& graph,
                                  std::span<const Measure> measures,
                                  const SolverConfig& config = {});

} // namespace influgraph

#endif // INFLUGRAPH_CENTRALITY_HPP_
