#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "folkrec/recommendation.hpp"

namespace folkrec {

using NodeId = std::uint32_t;

struct WeightedEdge {
  NodeId a;
  NodeId b;
  double weight;
};

/// Undirected weighted graph over users, resources and tags, stored as
/// adjacency lists. Node order: users, then resources, then tags, each in
/// id (lexicographic) order.
class FolksonomyGraph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };

  /// w(u,t) = posts of u with t, w(u,r) = tags in post (u,r),
  /// w(r,t) = users that gave t to r.
  static FolksonomyGraph from_index(const TrainingIndex& index);

  /// Arbitrary undirected graph; parallel edges add up. Used for solver tests.
  static FolksonomyGraph from_edges(std::size_t nodes, std::span<const WeightedEdge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  NodeId user_node(UserId u) const { return static_cast<NodeId>(u); }
  NodeId resource_node(ResourceId r) const { return static_cast<NodeId>(users_ + r); }
  NodeId tag_node(TagId t) const { return static_cast<NodeId>(users_ + resources_ + t); }
  std::size_t tag_count() const { return tags_; }

  std::span<const Neighbor> neighbors(NodeId n) const { return adjacency_[n]; }
  double degree(NodeId n) const { return degree_[n]; }
  /// Edge weight, 0 when absent.
  double weight(NodeId a, NodeId b) const;

  /// Column-stochastic transition applied to w: out_i = sum_j w(i,j)/deg(j) * w_j,
  /// with zero-degree nodes keeping their own mass.
  void propagate(std::span<const double> w, std::span<double> out) const;

 private:
  std::size_t users_ = 0, resources_ = 0, tags_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> degree_;
};

struct RankParams {
  double damping = 0.7;
  double tol = 1e-6;
  unsigned max_iter = 100;

  void validate() const;
};

struct RankResult {
  std::vector<double> weights;
  std::vector<double> deltas;  // L1 change of every iteration
  unsigned iterations = 0;
  bool converged = false;
};

/// Power iteration of w <- damping * A w + (1 - damping) * p from the uniform
/// vector. Stops once the L1 distance to the fixpoint is provably below
/// tol (change * damping / (1 - damping) < tol, and change < tol) or after
/// max_iter iterations, in which case `converged` is false.
RankResult adapted_pagerank(const FolksonomyGraph& graph, std::span<const double> preference,
                            const RankParams& params = {});

std::vector<double> uniform_preference(std::size_t nodes);

/// 0.25 of the mass on each known query node, the rest spread uniformly.
std::vector<double> query_preference(std::size_t nodes, std::optional<NodeId> user,
                                     std::optional<NodeId> resource);

/// w1 - w0 for every node, with w1 ranked under `preference` and w0 the
/// uniform-preference baseline.
std::vector<double> folkrank_differential(const FolksonomyGraph& graph,
                                          std::span<const double> preference,
                                          std::span<const double> baseline,
                                          const RankParams& params = {});

/// Graph and baseline ranking built once per training index; queries run
/// independent iterations with private buffers.
class GraphRanker {
 public:
  GraphRanker(const TrainingIndex& index, RankParams params = {});

  const FolksonomyGraph& graph() const { return graph_; }
  std::span<const double> baseline() const { return baseline_.weights; }

  /// Tags ranked by their weight under the query-boosted preference.
  Recommendation apr(std::string_view user, std::string_view resource, std::size_t k) const;
  /// Tags with a positive FolkRank differential, best first. [] when
  /// neither the user nor the resource is in the graph.
  Recommendation folkrank(std::string_view user, std::string_view resource, std::size_t k) const;
  /// FolkRank differential restricted to tag nodes, indexed by tag id.
  std::vector<double> folkrank_tags(std::string_view user, std::string_view resource) const;

 private:
  std::vector<double> preference_for(std::string_view user, std::string_view resource,
                                     bool& boosted) const;

  const TrainingIndex& index_;
  RankParams params_;
  FolksonomyGraph graph_;
  RankResult baseline_;
};

Recommendation apr_recommend(const TrainingIndex& index, std::string_view user,
                             std::string_view resource, std::size_t k,
                             const RankParams& params = {});
Recommendation fr_recommend(const TrainingIndex& index, std::string_view user,
                            std::string_view resource, std::size_t k,
                            const RankParams& params = {});

}  // namespace folkrec
