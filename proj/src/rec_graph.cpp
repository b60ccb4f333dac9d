#include "folkrec/rec_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace folkrec {

FolksonomyGraph FolksonomyGraph::from_edges(std::size_t nodes, std::span<const WeightedEdge> edges) {
  FolksonomyGraph g;
  g.tags_ = 0;
  std::vector<std::map<NodeId, double>> merged(nodes);
  for (const auto& e : edges) {
    if (e.a >= nodes || e.b >= nodes) throw std::out_of_range("edge endpoint out of range");
    merged[e.a][e.b] += e.weight;
    if (e.a != e.b) merged[e.b][e.a] += e.weight;
  }
  g.adjacency_.resize(nodes);
  g.degree_.assign(nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (auto [j, w] : merged[i]) {
      g.adjacency_[i].push_back({j, w});
      g.degree_[i] += w;
    }
  }
  return g;
}

FolksonomyGraph FolksonomyGraph::from_index(const TrainingIndex& index) {
  const auto n_users = index.user_count();
  const auto n_resources = index.resource_count();
  std::vector<WeightedEdge> edges;
  auto user_node = [&](UserId u) { return static_cast<NodeId>(u); };
  auto resource_node = [&](ResourceId r) { return static_cast<NodeId>(n_users + r); };
  auto tag_node = [&](TagId t) { return static_cast<NodeId>(n_users + n_resources + t); };

  for (UserId u = 0; u < n_users; ++u)
    for (const auto& usage : index.user_profile(u))
      edges.push_back({user_node(u), tag_node(usage.tag), static_cast<double>(usage.times.size())});
  for (const auto& p : index.posts())
    edges.push_back({user_node(p.user), resource_node(p.resource), static_cast<double>(p.tags.size())});
  for (ResourceId r = 0; r < n_resources; ++r)
    for (const auto& [t, count] : index.resource_profile(r))
      edges.push_back({resource_node(r), tag_node(t), static_cast<double>(count)});

  auto g = from_edges(n_users + n_resources + index.tag_count(), edges);
  g.users_ = n_users;
  g.resources_ = n_resources;
  g.tags_ = index.tag_count();
  return g;
}

double FolksonomyGraph::weight(NodeId a, NodeId b) const {
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  return it != adj.end() && it->node == b ? it->weight : 0.0;
}

void FolksonomyGraph::propagate(std::span<const double> w, std::span<double> out) const {
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    if (degree_[i] == 0.0) {
      out[i] = w[i];
      continue;
    }
    double sum = 0.0;
    for (const auto& [j, weight] : adjacency_[i]) sum += weight * w[j] / degree_[j];
    out[i] = sum;
  }
}

void RankParams::validate() const {
  if (!(damping >= 0.0 && damping < 1.0)) throw UsageError("damping must lie in [0, 1)");
  if (!(tol > 0.0)) throw UsageError("tol must be > 0");
  if (max_iter == 0) throw UsageError("max_iter must be >= 1");
}

RankResult adapted_pagerank(const FolksonomyGraph& graph, std::span<const double> preference,
                            const RankParams& params) {
  const auto n = graph.node_count();
  if (preference.size() != n) throw std::invalid_argument("preference size differs from graph");
  RankResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  const double d = params.damping;
  // Successive iterates contract by d in L1, so change * d / (1 - d) bounds
  // the remaining distance to the fixpoint.
  const double bound_factor = std::max(1.0, d / (1.0 - d));

  std::vector<double> w(n, 1.0 / static_cast<double>(n)), next(n);
  for (unsigned it = 0; it < params.max_iter; ++it) {
    graph.propagate(w, next);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = d * next[i] + (1.0 - d) * preference[i];
      change += std::abs(next[i] - w[i]);
    }
    w.swap(next);
    result.deltas.push_back(change);
    result.iterations = it + 1;
    if (change * bound_factor < params.tol) {
      result.converged = true;
      break;
    }
  }
  result.weights = std::move(w);
  return result;
}

std::vector<double> uniform_preference(std::size_t nodes) {
  return std::vector<double>(nodes, nodes ? 1.0 / static_cast<double>(nodes) : 0.0);
}

std::vector<double> query_preference(std::size_t nodes, std::optional<NodeId> user,
                                     std::optional<NodeId> resource) {
  constexpr double kBoost = 0.25;
  const double boosted = kBoost * ((user ? 1 : 0) + (resource ? 1 : 0));
  std::vector<double> p(nodes, (1.0 - boosted) / static_cast<double>(nodes));
  if (user) p[*user] += kBoost;
  if (resource) p[*resource] += kBoost;
  return p;
}

std::vector<double> folkrank_differential(const FolksonomyGraph& graph,
                                          std::span<const double> preference,
                                          std::span<const double> baseline,
                                          const RankParams& params) {
  auto boosted = adapted_pagerank(graph, preference, params);
  std::vector<double> diff(graph.node_count());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = boosted.weights[i] - baseline[i];
  return diff;
}

GraphRanker::GraphRanker(const TrainingIndex& index, RankParams params)
    : index_(index), params_(params), graph_(FolksonomyGraph::from_index(index)) {
  params_.validate();
  baseline_ = adapted_pagerank(graph_, uniform_preference(graph_.node_count()), params_);
}

std::vector<double> GraphRanker::preference_for(std::string_view user, std::string_view resource,
                                                bool& boosted) const {
  std::optional<NodeId> u, r;
  if (auto id = index_.find_user(user)) u = graph_.user_node(*id);
  if (auto id = index_.find_resource(resource)) r = graph_.resource_node(*id);
  boosted = u || r;
  return query_preference(graph_.node_count(), u, r);
}

Recommendation GraphRanker::apr(std::string_view user, std::string_view resource,
                                std::size_t k) const {
  if (index_.empty()) return {};
  bool boosted = false;
  auto pref = preference_for(user, resource, boosted);
  auto ranked = boosted ? adapted_pagerank(graph_, pref, params_).weights : baseline_.weights;
  TagScores scores;
  scores.reserve(index_.tag_count());
  for (TagId t = 0; t < index_.tag_count(); ++t) scores.emplace_back(t, ranked[graph_.tag_node(t)]);
  return top_k(index_, std::move(scores), k);
}

std::vector<double> GraphRanker::folkrank_tags(std::string_view user,
                                               std::string_view resource) const {
  std::vector<double> out(index_.tag_count(), 0.0);
  bool boosted = false;
  auto pref = preference_for(user, resource, boosted);
  if (!boosted) return out;
  auto diff = folkrank_differential(graph_, pref, baseline_.weights, params_);
  for (TagId t = 0; t < index_.tag_count(); ++t) out[t] = diff[graph_.tag_node(t)];
  return out;
}

Recommendation GraphRanker::folkrank(std::string_view user, std::string_view resource,
                                     std::size_t k) const {
  auto diff = folkrank_tags(user, resource);
  TagScores scores;
  for (TagId t = 0; t < diff.size(); ++t)
    if (diff[t] > 0.0) scores.emplace_back(t, diff[t]);
  return top_k(index_, std::move(scores), k);
}

Recommendation apr_recommend(const TrainingIndex& index, std::string_view user,
                             std::string_view resource, std::size_t k, const RankParams& params) {
  if (index.empty()) return {};
  return GraphRanker(index, params).apr(user, resource, k);
}

Recommendation fr_recommend(const TrainingIndex& index, std::string_view user,
                            std::string_view resource, std::size_t k, const RankParams& params) {
  if (index.empty()) return {};
  return GraphRanker(index, params).folkrank(user, resource, k);
}

}  // namespace folkrec
