#include "folkrec/synthetic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "folkrec/random.hpp"

namespace folkrec {

namespace {

constexpr Timestamp kEpochStart = 1'200'000'000;

class ZipfSampler {
 public:
  explicit ZipfSampler(std::size_t n) : cumulative_(n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) cumulative_[i] = total += 1.0 / static_cast<double>(i + 1);
  }
  std::size_t draw(Rng& rng) const {
    const double x = uniform_unit(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

std::string padded(char prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  return prefix + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') + digits;
}

int width_for(std::size_t n) { return static_cast<int>(std::to_string(n).size()); }

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_index(rng, hi - lo + 1));
}

std::size_t pick_weighted(Rng& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = uniform_unit(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

struct Usage {
  std::size_t count = 0;
  Timestamp last = 0;
};

}  // namespace

void SynthParams::validate() const {
  if (users < 1 || base_tags < 1 || min_posts < 1 || min_tags < 1 || topic_tags < 1)
    throw UsageError("synthetic counts must be >= 1");
  if (max_posts < min_posts || max_tags < min_tags)
    throw UsageError("synthetic maxima must not be below minima");
  for (double b : {reuse_bias, recency_bias, context_bias})
    if (!(b >= 0.0 && b <= 1.0)) throw UsageError("synthetic biases must lie in [0, 1]");
}

Folksonomy generate_synthetic(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  const std::size_t n_resources = params.resources ? params.resources : 3 * params.users;
  const ZipfSampler tag_popularity(params.base_tags);
  const ZipfSampler resource_popularity(n_resources);

  std::vector<std::string> tag_names;
  for (std::size_t i = 0; i < params.base_tags; ++i)
    tag_names.push_back(padded('t', i, width_for(params.base_tags)));
  std::vector<std::string> resource_names;
  std::vector<std::vector<std::size_t>> topics;
  std::vector<std::map<std::size_t, std::size_t>> applied;  // tag counts per resource so far
  auto add_resource = [&](std::string name) {
    std::vector<std::size_t> topic;
    const auto want = std::min(params.topic_tags, params.base_tags);
    for (std::size_t tries = 0; topic.size() < want && tries < 50 * want; ++tries) {
      auto t = tag_popularity.draw(rng);
      if (std::find(topic.begin(), topic.end(), t) == topic.end()) topic.push_back(t);
    }
    resource_names.push_back(std::move(name));
    topics.push_back(std::move(topic));
    applied.emplace_back();
    return resource_names.size() - 1;
  };
  for (std::size_t r = 0; r < n_resources; ++r) add_resource(padded('r', r, width_for(n_resources)));

  std::vector<Post> posts;
  std::size_t minted_resources = 0;
  for (std::size_t u = 0; u < params.users; ++u) {
    const std::string user = padded('u', u, width_for(params.users));
    const auto n_posts = between(rng, params.min_posts, params.max_posts);
    Timestamp now = kEpochStart + static_cast<Timestamp>(uniform_index(rng, 180 * 86400));
    std::map<std::size_t, Usage> history;
    std::set<std::size_t> visited;

    for (std::size_t p = 0; p < n_posts; ++p) {
      now += 3600 + static_cast<Timestamp>(uniform_index(rng, 14 * 86400));
      std::size_t resource = n_resources;
      for (int tries = 0; tries < 20 && resource == n_resources; ++tries) {
        auto r = resource_popularity.draw(rng);
        if (!visited.contains(r)) resource = r;
      }
      if (resource == n_resources)
        resource = add_resource(padded('x', minted_resources++, 7));
      visited.insert(resource);
      const auto& topic = topics[resource];
      // Context weight of a tag on this resource: earlier applications plus
      // one for a topic tag.
      auto context = [&](std::size_t t) {
        auto it = applied[resource].find(t);
        double w = it == applied[resource].end() ? 0.0 : static_cast<double>(it->second);
        if (std::find(topic.begin(), topic.end(), t) != topic.end()) w += 1.0;
        return w;
      };

      // Recency rank over the whole history: most recent first, ties by tag.
      std::vector<std::pair<std::size_t, Usage>> by_recency(history.begin(), history.end());
      std::stable_sort(by_recency.begin(), by_recency.end(),
                       [](const auto& a, const auto& b) { return a.second.last > b.second.last; });
      std::map<std::size_t, std::size_t> rank;
      for (std::size_t i = 0; i < by_recency.size(); ++i) rank[by_recency[i].first] = i + 1;

      std::vector<std::size_t> chosen;
      const auto n_tags = between(rng, params.min_tags, params.max_tags);
      for (std::size_t slot = 0; slot < n_tags; ++slot) {
        auto in_post = [&](std::size_t t) {
          return std::find(chosen.begin(), chosen.end(), t) != chosen.end();
        };
        std::vector<std::size_t> candidates;
        if (!history.empty() && uniform_unit(rng) < params.reuse_bias) {
          for (const auto& [t, usage] : history)
            if (!in_post(t)) candidates.push_back(t);
          if (uniform_unit(rng) < params.context_bias) {
            // Cued by the resource; with no match left the slot imitates below.
            std::erase_if(candidates, [&](std::size_t t) { return context(t) == 0.0; });
          }
        }
        if (!candidates.empty()) {
          double freq_total = 0.0, rank_total = 0.0;
          for (auto t : candidates) {
            freq_total += static_cast<double>(history[t].count);
            rank_total += 1.0 / static_cast<double>(rank[t]);
          }
          std::vector<double> weights;
          for (auto t : candidates)
            weights.push_back((1.0 - params.recency_bias) * static_cast<double>(history[t].count) / freq_total +
                              params.recency_bias / static_cast<double>(rank[t]) / rank_total);
          chosen.push_back(candidates[pick_weighted(rng, weights)]);
          continue;
        }
        // A tag this user has never applied, imitating the resource's tags.
        auto fresh = [&](std::size_t t) { return !history.contains(t) && !in_post(t); };
        std::vector<std::size_t> cued;
        std::vector<double> cue_weights;
        for (const auto& [t, n] : applied[resource])
          if (fresh(t)) cued.push_back(t);
        for (auto t : topic)
          if (fresh(t) && !applied[resource].contains(t)) cued.push_back(t);
        for (auto t : cued) cue_weights.push_back(context(t));
        if (!cued.empty()) {
          chosen.push_back(cued[pick_weighted(rng, cue_weights)]);
          continue;
        }
        std::size_t pick = tag_names.size();
        for (int tries = 0; tries < 50 && pick == tag_names.size(); ++tries) {
          auto t = tag_popularity.draw(rng);
          if (fresh(t)) pick = t;
        }
        if (pick == tag_names.size()) tag_names.push_back(padded('n', pick, 7));
        chosen.push_back(pick);
      }

      Post post{user, resource_names[resource], {}, now};
      for (auto t : chosen) {
        post.tags.push_back(tag_names[t]);
        ++applied[resource][t];
        auto& usage = history[t];
        ++usage.count;
        usage.last = now;
      }
      posts.push_back(std::move(post));
    }
  }
  return Folksonomy(std::move(posts));
}

}  // namespace folkrec
