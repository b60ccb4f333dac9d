// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and sizes are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "dense_oracle.hpp"
#include "folkrec/evaluation.hpp"
#include "folkrec/experiment.hpp"
#include "folkrec/index.hpp"
#include "folkrec/rec_frequency.hpp"
#include "folkrec/rec_graph.hpp"
#include "folkrec/rec_temporal.hpp"
#include "folkrec/registry.hpp"
#include "folkrec/scoring.hpp"
#include "folkrec/synthetic.hpp"
#include "support.hpp"

namespace {

using namespace folkrec;
namespace fs = std::filesystem;
using Tags = std::vector<std::string>;

constexpr int kMetricCorpora = 120;
constexpr int kCoreInstances = 150;
constexpr int kDegeneracyCorpora = 300;
constexpr int kRecencyPairs = 2000;
constexpr int kGraphs = 60;
constexpr std::size_t kMaxGraphNodes = 30;
constexpr double kAprL1Tol = 1e-6;
constexpr double kDifferentialSumTol = 1e-8;
constexpr std::size_t kTrendUsers = 2000;
constexpr double kTrendRecencyBias = 0.5;
constexpr double kTrendSeconds = 600;
constexpr int kSoftmaxVectors = 10'000;
constexpr double kSoftmaxSumTol = 1e-9;
constexpr double kSoftmaxShiftTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

// 1. evaluate == exact naive evaluator.
Outcome metrics_oracle() {
  Outcome o;
  Rng rng(101);
  int corpora = 0, cases = 0;
  const testing::RandomShape shape{.max_users = 10, .max_resources = 8, .max_tags = 8,
                                   .max_posts = 15, .max_tags_per_post = 4, .max_time = 60};
  while (corpora < kMetricCorpora) {
    auto f = testing::random_folksonomy(rng, shape);
    auto split = leave_one_out_split(f);
    if (split.test.empty()) continue;
    ++corpora;
    auto index = build_index(split.train);
    for (const auto& name : algorithm_names()) {
      auto rec = make_recommender(name, index);
      std::vector<Tags> ranked, truths;
      for (const auto& tc : split.test) {
        ranked.push_back(tag_names(rec->recommend({tc.user, tc.resource, tc.timestamp}, kMaxCutoff)));
        truths.push_back(tc.true_tags);
      }
      cases += static_cast<int>(split.test.size());
      const auto want = testing::naive_evaluate(ranked, truths);
      const auto got = evaluate(*rec, split.test, {.threads = 3});
      for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
        if (got.at(k).precision != testing::as_double(want.precision[k - 1]) ||
            got.at(k).recall != testing::as_double(want.recall[k - 1]) ||
            got.at(k).f1 != testing::as_double(want.f1[k - 1]))
          fail(o, name + " differs at k=" + std::to_string(k));
      }
      if (got.mrr != testing::as_double(want.mrr)) fail(o, name + " MRR differs");
      if (got.map != testing::as_double(want.map)) fail(o, name + " MAP differs");
    }
  }
  if (o.pass)
    o.detail = std::to_string(corpora) + " corpora x " + std::to_string(algorithm_names().size()) +
               " algorithms, " + std::to_string(cases) + " test cases, exact match";
  return o;
}

// 2. p_core == exhaustive search.
Outcome p_core_oracle() {
  Outcome o;
  Rng rng(202);
  int checked = 0, nonempty = 0;
  const testing::RandomShape shape{.max_users = 5, .max_resources = 5, .max_tags = 5,
                                   .max_posts = 12, .max_tags_per_post = 4, .max_time = 50};
  for (int i = 0; i < kCoreInstances; ++i) {
    auto f = testing::random_folksonomy(rng, shape);
    for (unsigned p = 1; p <= 4; ++p) {
      auto got = p_core(f, p);
      ++checked;
      nonempty += !got.empty();
      if (!(got == testing::brute_force_p_core(f, p)))
        fail(o, "instance " + std::to_string(i) + " p=" + std::to_string(p));
    }
  }
  if (o.pass)
    o.detail = std::to_string(kCoreInstances) + " instances, " + std::to_string(checked) +
               " (instance, p) pairs, " + std::to_string(nonempty) + " non-empty cores";
  return o;
}

// 3. BLL with d = 0 == MP_u, tie-breaks included.
Outcome bll_degeneracy() {
  Outcome o;
  Rng rng(303);
  DecayParams flat;
  flat.d = 0;
  std::size_t lists = 0;
  for (int i = 0; i < kDegeneracyCorpora; ++i) {
    auto f = i % 3 == 0 ? generate_synthetic({.users = 15, .seed = std::uint64_t(i)})
                        : testing::random_folksonomy(rng, {.max_users = 6, .max_tags = 8,
                                                           .max_posts = 16, .max_tags_per_post = 4});
    auto index = build_index(f);
    for (UserId u = 0; u < index.user_count(); ++u) {
      const auto user = std::string(index.user_name(u));
      const Timestamp ref = index.latest_timestamp(u) + 1 + Timestamp(uniform_index(rng, 1'000'000));
      for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
        ++lists;
        if (tag_names(bll_recommend(index, user, ref, k, flat)) != tag_names(mp_u(index, user, k)))
          fail(o, "corpus " + std::to_string(i) + " user " + user + " k=" + std::to_string(k));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(lists) + " top-k lists identical";
  return o;
}

// 4. Equal frequency, one usage strictly more recent => ranked higher.
Outcome recency_monotonicity() {
  Outcome o;
  Rng rng(404);
  for (int i = 0; i < kRecencyPairs; ++i) {
    const Timestamp ref = 1'000'000 + Timestamp(uniform_index(rng, 1'000'000));
    std::vector<Post> posts;
    auto add = [&](const std::string& tag, Timestamp t) {
      posts.push_back({"u", "r" + std::to_string(posts.size()), {tag}, t});
    };
    const auto shared = uniform_index(rng, 6);
    for (std::size_t j = 0; j < shared; ++j) {
      const auto t = ref - 1 - Timestamp(uniform_index(rng, 900'000));
      add("early", t);
      add("late", t);
    }
    // Distinct recencies, both at least the 1 s clamp.
    const auto older = ref - 2 - Timestamp(uniform_index(rng, 900'000));
    const auto newer = older + 1 + Timestamp(uniform_index(rng, std::uint64_t(ref - older - 1)));
    add("early", older);
    add("late", newer);
    // Unrelated distractor tags.
    for (std::size_t j = uniform_index(rng, 4); j > 0; --j)
      add("other" + std::to_string(j), ref - 1 - Timestamp(uniform_index(rng, 900'000)));
    auto index = build_index(Folksonomy(posts));
    auto rec = tag_names(bll_recommend(index, "u", ref, 10));
    auto pos = [&](const std::string& t) { return std::find(rec.begin(), rec.end(), t) - rec.begin(); };
    if (!(pos("late") < pos("early")) ||
        !(*bla(index, "u", "late", ref) > *bla(index, "u", "early", ref)))
      fail(o, "pair " + std::to_string(i));
  }
  if (o.pass) o.detail = std::to_string(kRecencyPairs) + " random tag pairs";
  return o;
}

// 5. Narrow folksonomy: every test resource unseen => BLL+C report == BLL report.
Outcome narrow_degeneracy() {
  Outcome o;
  SynthParams params;
  params.users = 300;
  params.seed = 5;
  const auto broad = generate_synthetic(params);
  std::vector<Post> posts;
  for (const auto& p : broad.posts()) posts.push_back({p.user, p.user + "/" + p.resource, p.tags, p.timestamp});
  const Folksonomy narrow(std::move(posts));
  auto split = leave_one_out_split(narrow);
  auto index = build_index(split.train);
  for (const auto& tc : split.test)
    if (index.find_resource(tc.resource)) fail(o, "test resource seen in training");
  auto bll = make_recommender("bll", index);
  auto bll_c = make_recommender("bll_c", index);
  for (const auto& tc : split.test)
    if (tag_names(bll->recommend({tc.user, tc.resource, tc.timestamp}, 10)) !=
        tag_names(bll_c->recommend({tc.user, tc.resource, tc.timestamp}, 10)))
      fail(o, "ranking differs for " + tc.user);
  const auto a = evaluate(*bll, split.test), b = evaluate(*bll_c, split.test);
  if (!a.same_metrics(b)) fail(o, "reports differ");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu test posts, both F1@5 %.6f MRR %.6f MAP %.6f",
                  split.test.size(), a.at(5).f1, a.mrr, a.map);
    o.detail = buf;
  }
  return o;
}

// 6. APR vs dense solve; FolkRank differential sums to 0; uniform boost is 0.
Outcome graph_solver() {
  Outcome o;
  Rng rng(606);
  double worst_l1 = 0, worst_sum = 0;
  const RankParams params;
  for (int i = 0; i < kGraphs; ++i) {
    const std::size_t n = 2 + uniform_index(rng, kMaxGraphNodes - 1);
    std::vector<WeightedEdge> edges;
    for (std::size_t e = uniform_index(rng, 3 * n); e > 0; --e)
      edges.push_back({NodeId(uniform_index(rng, n)), NodeId(uniform_index(rng, n)),
                       double(1 + uniform_index(rng, 6))});
    auto g = FolksonomyGraph::from_edges(n, edges);
    auto uniform = uniform_preference(n);
    std::optional<NodeId> a = NodeId(uniform_index(rng, n)), b = NodeId(uniform_index(rng, n));
    auto boosted = query_preference(n, a, b);

    auto w0 = adapted_pagerank(g, uniform, params);
    auto w1 = adapted_pagerank(g, boosted, params);
    for (const auto* run : {&w0, &w1})
      if (!run->converged) fail(o, "graph " + std::to_string(i) + " did not converge");
    const double e0 = testing::l1_distance(w0.weights, testing::dense_solve(n, edges, uniform, params.damping));
    const double e1 = testing::l1_distance(w1.weights, testing::dense_solve(n, edges, boosted, params.damping));
    worst_l1 = std::max({worst_l1, e0, e1});
    if (e0 >= kAprL1Tol || e1 >= kAprL1Tol) fail(o, "graph " + std::to_string(i) + " L1 too large");

    auto diff = folkrank_differential(g, boosted, w0.weights, params);
    double s = 0;
    for (double x : diff) s += x;
    worst_sum = std::max(worst_sum, std::abs(s));
    if (std::abs(s) >= kDifferentialSumTol) fail(o, "graph " + std::to_string(i) + " differential sum");

    for (double x : folkrank_differential(g, uniform, w0.weights, params))
      if (x != 0.0) fail(o, "graph " + std::to_string(i) + " uniform boost not zero");
  }
  // The same on folksonomy graphs, via the recommender entry point.
  Rng frng(607);
  for (int i = 0; i < kGraphs; ++i) {
    auto f = testing::random_folksonomy(frng, {.max_users = 6, .max_resources = 6, .max_tags = 8,
                                               .max_posts = 14, .max_tags_per_post = 4});
    auto index = build_index(f);
    GraphRanker ranker(index);
    if (ranker.graph().node_count() > kMaxGraphNodes) continue;
    const auto& post = f.posts()[uniform_index(frng, f.size())];
    auto full = folkrank_differential(
        ranker.graph(),
        query_preference(ranker.graph().node_count(),
                         ranker.graph().user_node(*index.find_user(post.user)),
                         ranker.graph().resource_node(*index.find_resource(post.resource))),
        ranker.baseline(), params);
    double s = 0;
    for (double x : full) s += x;
    worst_sum = std::max(worst_sum, std::abs(s));
    if (std::abs(s) >= kDifferentialSumTol) fail(o, "folksonomy " + std::to_string(i) + " differential sum");
  }
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d graphs <= %zu nodes, worst L1 %.2e, worst |sum diff| %.2e",
                  kGraphs, kMaxGraphNodes, worst_l1, worst_sum);
    o.detail = buf;
  }
  return o;
}

// 7. F1@5: BLL > MP_u and BLL+C >= BLL on a synthetic corpus.
Outcome trend() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SynthParams params;
  params.users = kTrendUsers;
  params.reuse_bias = 0.9;
  params.recency_bias = kTrendRecencyBias;
  params.seed = 1;
  auto split = leave_one_out_split(generate_synthetic(params));
  auto index = build_index(split.train);
  std::map<std::string, double> f1;
  for (const char* name : {"mp_u", "girp", "bll", "bll_c"})
    f1[name] = evaluate(*make_recommender(name, index), split.test, {.threads = 4}).at(5).f1;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!(f1["bll"] > f1["mp_u"])) fail(o, "BLL does not beat MP_u");
  if (!(f1["bll_c"] >= f1["bll"])) fail(o, "BLL+C below BLL");
  if (seconds >= kTrendSeconds) fail(o, "too slow");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu users, %zu test posts: F1@5 bll_c %.4f, bll %.4f, girp %.4f, mp_u %.4f (%.1fs)",
                kTrendUsers, split.test.size(), f1["bll_c"], f1["bll"], f1["girp"], f1["mp_u"], seconds);
  o.detail = o.pass ? std::string(buf) : o.detail + "; " + buf;
  return o;
}

// 8. Softmax sums to 1 and is shift invariant.
Outcome softmax_invariants() {
  Outcome o;
  Rng rng(808);
  double worst_sum = 0, worst_shift = 0;
  for (int i = 0; i < kSoftmaxVectors; ++i) {
    const auto n = 1 + uniform_index(rng, 50);
    const double scale = i % 4 == 0 ? 700 : i % 4 == 1 ? 1 : i % 4 == 2 ? 50 : 1e-6;
    std::vector<double> v(n);
    for (auto& x : v) x = (2 * uniform_unit(rng) - 1) * scale;
    if (i % 10 == 0) v[0] = uniform_unit(rng) < 0.5 ? 700 : -700;
    const double shift = (2 * uniform_unit(rng) - 1) * 10;
    std::vector<double> shifted(v);
    for (auto& x : shifted) x += shift;
    const auto a = softmax(v), b = softmax(shifted);
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(a[j])) fail(o, "non-finite output");
      s += a[j];
      worst_shift = std::max(worst_shift, std::abs(a[j] - b[j]));
    }
    worst_sum = std::max(worst_sum, std::abs(s - 1));
  }
  if (worst_sum > kSoftmaxSumTol) fail(o, "sum off by " + std::to_string(worst_sum));
  if (worst_shift > kSoftmaxShiftTol) fail(o, "shift changed an output");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d vectors, worst |sum-1| %.1e, worst shift delta %.1e",
                kSoftmaxVectors, worst_sum, worst_shift);
  o.detail = o.pass ? std::string(buf) : o.detail + "; " + buf;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9. Byte-identical outputs across reruns and thread counts.
Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "folkrec_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "data.tsv", std::ios::binary);
    write_assignments(out, generate_synthetic({.users = 300, .seed = 9}));
  }
  ExperimentConfig config;
  config.dataset = (dir / "data.tsv").string();
  config.core = 2;
  config.sample_fraction = 0.8;
  config.algorithms = algorithm_names();
  std::size_t files = 0;
  std::vector<std::vector<fs::path>> runs;
  for (unsigned threads : {1u, 4u, 1u, 7u}) {
    config.threads = threads;
    config.output_dir = (dir / ("run" + std::to_string(runs.size()))).string();
    runs.push_back(run_experiment(config));
  }
  for (std::size_t r = 1; r < runs.size(); ++r)
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
      ++files;
      if (slurp(runs[0][i]) != slurp(runs[r][i]))
        fail(o, runs[0][i].filename().string() + " differs in run " + std::to_string(r));
    }
  fs::remove_all(dir);
  if (o.pass)
    o.detail = "4 runs (threads 1,4,1,7), " + std::to_string(config.algorithms.size()) +
               " algorithms, " + std::to_string(files) + " file comparisons";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 metrics match exact reference evaluator", metrics_oracle},
      {"2 p-core matches exhaustive search", p_core_oracle},
      {"3 BLL with d=0 ranks like MP_u", bll_degeneracy},
      {"4 BLL recency monotonicity", recency_monotonicity},
      {"5 BLL+C equals BLL on unseen resources", narrow_degeneracy},
      {"6 graph solver correctness", graph_solver},
      {"7 F1@5 trend BLL+C >= BLL > MP_u", trend},
      {"8 softmax normalization invariants", softmax_invariants},
      {"9 byte-identical outputs across threads", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      fail(o, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
