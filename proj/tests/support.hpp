#pragma once

// Test-only fixtures and reference oracles. Nothing here calls into the
// code paths the oracles are used to check.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "folkrec/corpus.hpp"
#include "folkrec/random.hpp"

namespace folkrec::testing {

inline std::string name(char prefix, std::size_t i) { return prefix + std::to_string(i); }

struct RandomShape {
  std::size_t max_users = 4;
  std::size_t max_resources = 4;
  std::size_t max_tags = 5;
  std::size_t max_posts = 12;
  std::size_t max_tags_per_post = 3;
  Timestamp max_time = 50;
};

/// Small random folksonomy; timestamps are drawn from a narrow range so
/// that ties occur.
inline Folksonomy random_folksonomy(Rng& rng, const RandomShape& shape) {
  const auto users = 1 + uniform_index(rng, shape.max_users);
  const auto resources = 1 + uniform_index(rng, shape.max_resources);
  const auto tags = 1 + uniform_index(rng, shape.max_tags);
  const auto want = 1 + uniform_index(rng, std::min(shape.max_posts, users * resources));
  std::map<std::pair<std::size_t, std::size_t>, Post> posts;
  while (posts.size() < want) {
    auto u = uniform_index(rng, users), r = uniform_index(rng, resources);
    if (posts.contains({u, r})) continue;
    Post p{name('u', u), name('r', r), {}, static_cast<Timestamp>(uniform_index(rng, shape.max_time + 1))};
    const auto n = 1 + uniform_index(rng, std::min(shape.max_tags_per_post, tags));
    while (p.tags.size() < n) {
      auto t = name('t', uniform_index(rng, tags));
      if (std::find(p.tags.begin(), p.tags.end(), t) == p.tags.end()) p.tags.push_back(t);
    }
    posts.emplace(std::pair{u, r}, std::move(p));
  }
  std::vector<Post> out;
  for (auto& [key, p] : posts) out.push_back(std::move(p));
  return Folksonomy(std::move(out));
}

/// Exhaustive p-core: tries every subset of users, resources and tags,
/// keeps the induced tag assignments, and returns the valid candidate with
/// the most assignments (the maximal sub-folksonomy).
inline Folksonomy brute_force_p_core(const Folksonomy& f, unsigned p) {
  std::vector<std::string> users, resources, tags;
  for (const auto& post : f.posts()) {
    users.push_back(post.user);
    resources.push_back(post.resource);
    tags.insert(tags.end(), post.tags.begin(), post.tags.end());
  }
  auto dedup = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(users);
  dedup(resources);
  dedup(tags);
  const std::size_t bits = users.size() + resources.size() + tags.size();
  if (bits > 20) throw std::invalid_argument("instance too large for exhaustive search");

  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  std::vector<Post> best;
  std::size_t best_tas = 0;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    auto kept = [&](std::size_t bit) { return (mask >> bit) & 1u; };
    std::vector<Post> induced;
    for (const auto& post : f.posts()) {
      if (!kept(index_of(users, post.user)) ||
          !kept(users.size() + index_of(resources, post.resource)))
        continue;
      Post q{post.user, post.resource, {}, post.timestamp};
      for (const auto& t : post.tags)
        if (kept(users.size() + resources.size() + index_of(tags, t))) q.tags.push_back(t);
      if (!q.tags.empty()) induced.push_back(std::move(q));
    }
    std::map<std::string, unsigned> uc, rc, tc;
    std::size_t tas = 0;
    for (const auto& q : induced) {
      ++uc[q.user];
      ++rc[q.resource];
      for (const auto& t : q.tags) ++tc[t];
      tas += q.tags.size();
    }
    bool valid = true;
    for (const auto* counts : {&uc, &rc, &tc})
      for (const auto& [key, c] : *counts) valid = valid && c >= p;
    if (valid && tas > best_tas) {
      best_tas = tas;
      best = std::move(induced);
    }
  }
  return Folksonomy(std::move(best));
}

using Rational = boost::multiprecision::cpp_rational;

struct ExactMetrics {
  std::vector<Rational> recall, precision, f1;  // index k - 1
  Rational mrr, map;
};

/// Straight-from-the-definition evaluator over exact rationals. Each entry
/// of `ranked` is the recommendation list of the matching truth set.
inline ExactMetrics naive_evaluate(const std::vector<std::vector<std::string>>& ranked,
                                   const std::vector<std::vector<std::string>>& truths) {
  const std::size_t n = truths.size();
  ExactMetrics m;
  m.recall.assign(10, 0);
  m.precision.assign(10, 0);
  m.f1.assign(10, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rec = ranked[i];
    const std::set<std::string> truth(truths[i].begin(), truths[i].end());
    for (std::size_t k = 1; k <= 10; ++k) {
      long hits = 0;
      for (std::size_t r = 0; r < std::min(k, rec.size()); ++r) hits += truth.count(rec[r]);
      m.precision[k - 1] += Rational(hits, static_cast<long>(k));
      m.recall[k - 1] += Rational(hits, static_cast<long>(truth.size()));
    }
    Rational rr = 0, ap = 0;
    long hits = 0;
    for (std::size_t r = 0; r < std::min<std::size_t>(10, rec.size()); ++r) {
      if (!truth.count(rec[r])) continue;
      ++hits;
      rr += Rational(1, static_cast<long>(r + 1));
      ap += Rational(hits, static_cast<long>(r + 1));
    }
    m.mrr += rr / static_cast<long>(truth.size());
    m.map += ap / static_cast<long>(truth.size());
  }
  for (std::size_t k = 0; k < 10; ++k) {
    m.precision[k] /= static_cast<long>(n);
    m.recall[k] /= static_cast<long>(n);
    const Rational sum = m.precision[k] + m.recall[k];
    m.f1[k] = sum == 0 ? Rational(0) : Rational(2 * m.precision[k] * m.recall[k] / sum);
  }
  m.mrr /= static_cast<long>(n);
  m.map /= static_cast<long>(n);
  return m;
}

inline double as_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace folkrec::testing
