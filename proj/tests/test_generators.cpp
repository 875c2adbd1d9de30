#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "degmatch/generators.hpp"
#include "degmatch/oracle.hpp"
#include "fixtures.hpp"

using namespace degmatch;

TEST_CASE("zipf profile follows C i^-alpha") {
  const auto p = zipf_profile(3, 500.0, 1.0);
  REQUIRE(p.is_per_node());
  REQUIRE(p.size() == 3);
  CHECK(p.degrees()[0] == 500.0);
  CHECK(p.degrees()[1] == 250.0);
  CHECK(p.degrees()[2] == doctest::Approx(500.0 / 3.0).epsilon(1e-15));
  const auto flat = zipf_profile(5, 7.0, 0.0);
  for (double d : flat.degrees()) CHECK(d == 7.0);
}

TEST_CASE("grouped profiles are validated") {
  CHECK_THROWS_AS(DegreeProfile::grouped({{2, 0.5}, {1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeProfile::grouped({{1, 0.5}, {2, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeProfile::grouped({{1, 0.5}, {2, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeProfile::per_node({1.0, -1.0}), std::invalid_argument);
  CHECK_NOTHROW(DegreeProfile::grouped({{1, 0.25}, {3, 0.75}}));
  CHECK_THROWS_AS(zipf_profile(3, 500.0, 1.0).check_for(100), std::invalid_argument);
}

TEST_CASE("per-node profiles group into node counts") {
  const auto p = DegreeProfile::per_node({2.0, 1.0, 2.0, 0.0});
  const auto classes = p.classes();
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].degree == 0.0);
  CHECK(classes[1].degree == 1.0);
  CHECK(classes[2].degree == 2.0);
  CHECK(classes[2].weight == 2.0);
}

TEST_CASE("expcutoff profile weights") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double cutoff : {10.0, 1000.0}) {
      const auto p = expcutoff_profile(alpha, cutoff);
      const auto classes = p.classes();
      long double total = 0.0L;
      for (std::size_t i = 0; i < classes.size(); ++i) {
        CHECK(classes[i].degree == static_cast<double>(i + 1));
        CHECK(classes[i].weight > 0.0);
        total += classes[i].weight;
        if (i + 1 < classes.size()) {
          const double d = classes[i].degree;
          const double expected = std::pow((d + 1.0) / d, -alpha) * std::exp(-1.0 / cutoff);
          CHECK(classes[i + 1].weight / classes[i].weight ==
                doctest::Approx(expected).epsilon(1e-11));
        }
      }
      CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("expcutoff with a tiny cutoff concentrates on degree 1") {
  const auto p = expcutoff_profile(1.0, 0.01);
  const auto classes = p.classes();
  REQUIRE(!classes.empty());
  CHECK(classes[0].degree == 1.0);
  CHECK(classes[0].weight > 1.0 - 1e-9);
}

TEST_CASE("expcutoff matches a direct long-double series") {
  // alpha = 1, cutoff = 10: weights d^-1 e^{-d/10} / sum over all d.
  long double norm = 0.0L;
  for (int d = 5000; d >= 1; --d) {
    norm += std::pow(static_cast<long double>(d), -1.0L) * std::exp(-d / 10.0L);
  }
  const auto classes = expcutoff_profile(1.0, 10.0, 1e-9).classes();
  long double kept = 0.0L;
  for (const auto& c : classes) {
    kept += std::pow(static_cast<long double>(c.degree), -1.0L) *
            std::exp(-static_cast<long double>(c.degree) / 10.0L);
  }
  CHECK(static_cast<double>((norm - kept) / norm) < 1e-9);
  for (const auto& c : classes) {
    const long double raw = std::pow(static_cast<long double>(c.degree), -1.0L) *
                            std::exp(-static_cast<long double>(c.degree) / 10.0L);
    CHECK(c.weight == doctest::Approx(static_cast<double>(raw / kept)).epsilon(1e-12));
  }
  // The truncation point is the smallest D with tail mass below 1e-9.
  const double last = classes.back().degree;
  long double tail_before = 0.0L;
  for (int d = 5000; d >= static_cast<int>(last); --d) {
    tail_before += std::pow(static_cast<long double>(d), -1.0L) * std::exp(-d / 10.0L);
  }
  CHECK(static_cast<double>(tail_before / norm) >= 1e-9);
}

TEST_CASE("clvb boundary profiles") {
  Rng rng(1);
  const auto empty = clvb_sample(DegreeProfile::per_node({0.0, 0.0}), 5, rng);
  CHECK(empty.edge_count() == 0);
  const auto full = clvb_sample(DegreeProfile::per_node({5.0, 0.0}), 5, rng);
  CHECK(full.offline_degrees() == std::vector<std::size_t>{5, 0});
  CHECK_THROWS_AS(clvb_sample(DegreeProfile::per_node({6.0}), 5, rng), std::invalid_argument);
  CHECK_THROWS_AS(clvb_sample(DegreeProfile::grouped({{1.0, 1.0}}), 5, rng),
                  std::invalid_argument);
}

TEST_CASE("clvb with unit degrees has mean offline degree one") {
  const auto p = DegreeProfile::per_node(std::vector<double>(1000, 1.0));
  double total = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    total += static_cast<double>(clvb_sample(p, 1000, TrialSeed{3, t}).edge_count());
  }
  CHECK(std::abs(total / (100.0 * 1000.0) - 1.0) < 0.05);
}

TEST_CASE("clvb degrees are binomial") {
  const std::size_t m = 50;
  const auto p = DegreeProfile::per_node({0.5, 5.0, 25.0, 45.0});
  constexpr int kSamples = 2000;
  std::vector<double> sum(4, 0.0), sumsq(4, 0.0);
  for (int s = 0; s < kSamples; ++s) {
    const auto g = clvb_sample(p, m, TrialSeed{4, static_cast<std::uint64_t>(s)});
    const auto deg = g.offline_degrees();
    for (std::size_t i = 0; i < 4; ++i) {
      sum[i] += static_cast<double>(deg[i]);
      sumsq[i] += static_cast<double>(deg[i] * deg[i]);
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double q = p.degrees()[i] / static_cast<double>(m);
    const double mean = static_cast<double>(m) * q;
    const double var = static_cast<double>(m) * q * (1.0 - q);
    const double got_mean = sum[i] / kSamples;
    const double got_var = sumsq[i] / kSamples - got_mean * got_mean;
    CHECK(std::abs(got_mean - mean) < 3.0 * std::sqrt(var / kSamples));
    // Standard error of the sample variance, sqrt((mu4 - var^2) / N).
    const double mu4 = var * (1.0 + 3.0 * (static_cast<double>(m) - 2.0) * q * (1.0 - q));
    CHECK(std::abs(got_var - var) < 3.0 * std::sqrt((mu4 - var * var) / kSamples) + 1e-12);
  }
}

TEST_CASE("clvb is reproducible per seed") {
  const auto p = zipf_profile(200, 100.0, 1.0);
  const auto a = clvb_sample(p, 200, TrialSeed{9, 3});
  const auto b = clvb_sample(p, 200, TrialSeed{9, 3});
  const auto c = clvb_sample(p, 200, TrialSeed{9, 4});
  CHECK(a.adjacency() == b.adjacency());
  CHECK(a.adjacency() != c.adjacency());
}

TEST_CASE("subsample predictor") {
  Rng rng(8);
  const auto g = fixtures::random_graph(30, 40, 0.2, rng);
  const auto exact = subsample_predictor(g, 1.0, rng);
  const auto deg = g.offline_degrees();
  for (NodeIndex u = 0; u < 30; ++u) CHECK(exact(u) == static_cast<double>(deg[u]));

  const BipartiteGraph empty(5, std::vector<std::vector<NodeIndex>>(10));
  const auto zero = subsample_predictor(empty, 0.3, rng);
  for (NodeIndex u = 0; u < 5; ++u) CHECK(zero(u) == 0.0);

  // fraction 0.1 of 40 online nodes: 4 sampled, counts rescaled by 10.
  const auto noisy = subsample_predictor(g, 0.1, rng);
  double sampled_edges = 0.0;
  for (NodeIndex u = 0; u < 30; ++u) {
    const double count = noisy(u) * 0.1;
    CHECK(count == doctest::Approx(std::round(count)));
    CHECK(count <= static_cast<double>(deg[u]) + 1e-9);
    sampled_edges += count;
  }
  CHECK(sampled_edges <= 4.0 * 30.0);
  CHECK_THROWS_AS(subsample_predictor(g, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(subsample_predictor(g, 1.5, rng), std::invalid_argument);
}

TEST_CASE("known iid sampling") {
  Rng rng(12);
  const BipartiteGraph base(3, {{0, 1}, {2}});
  {
    const TypeGraph single{base, {1.0, 0.0}};
    const auto [g, sigma] = known_iid_sample(single, 6, rng);
    CHECK(g.m_online() == 6);
    for (NodeIndex v = 0; v < 6; ++v) {
      CHECK(std::vector<NodeIndex>(g.neighbors(v).begin(), g.neighbors(v).end()) ==
            std::vector<NodeIndex>{0, 1});
    }
    CHECK(sigma(0) == 3.0);  // type degree 1, rescaled by 6 / 2
  }
  {
    const TypeGraph uniform{base, {0.5, 0.5}};
    const auto [g, sigma] = known_iid_sample(uniform, 2, rng);
    CHECK(sigma(0) == 1.0);
    CHECK(sigma(1) == 1.0);
    CHECK(sigma(2) == 1.0);
  }
  CHECK_THROWS(known_iid_sample(TypeGraph{base, {0.7, 0.7}}, 3, rng));
}

TEST_CASE("known iid expected degree equals sigma under a uniform type distribution") {
  Rng rng(13);
  const auto base = fixtures::random_graph(10, 8, 0.3, rng);
  const TypeGraph t{base, std::vector<double>(8, 1.0 / 8.0)};
  constexpr int kSamples = 1000;
  const std::size_t m_hat = 20;
  std::vector<double> sum(10, 0.0), sumsq(10, 0.0);
  DegreePredictor sigma;
  for (int s = 0; s < kSamples; ++s) {
    auto [g, pred] = known_iid_sample(t, m_hat, rng);
    sigma = pred;
    const auto deg = g.offline_degrees();
    for (std::size_t u = 0; u < 10; ++u) {
      sum[u] += static_cast<double>(deg[u]);
      sumsq[u] += static_cast<double>(deg[u] * deg[u]);
    }
  }
  for (NodeIndex u = 0; u < 10; ++u) {
    const double mean = sum[u] / kSamples;
    const double var = sumsq[u] / kSamples - mean * mean;
    CHECK(std::abs(mean - sigma(u)) <= 3.0 * std::sqrt(var / kSamples) + 1e-12);
  }
}

TEST_CASE("molloy-reed with unit degrees has a perfect type-graph matching") {
  Rng rng(14);
  MolloyReedParams p;
  p.n_offline = p.n_online = 200;
  p.cutoff = 0.01;  // all mass on degree 1
  const auto t = molloy_reed_typegraph(p, rng);
  validate_type_graph(t);
  CHECK(t.base.edge_count() == 200);
  CHECK(max_matching(t.base) == 200);
}

TEST_CASE("molloy-reed degree histogram matches the target profile") {
  MolloyReedParams p;
  p.n_offline = p.n_online = 1000;
  p.alpha = 1.0;
  p.cutoff = 10.0;
  const auto classes = expcutoff_profile(p.alpha, p.cutoff).classes();
  std::map<std::size_t, double> hist;
  double nodes = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(1000 + s);
    const auto t = molloy_reed_typegraph(p, rng);
    validate_type_graph(t);
    for (auto d : t.base.offline_degrees()) hist[d] += 1.0;
    std::vector<std::size_t> online(t.base.m_online());
    for (NodeIndex v = 0; v < t.base.m_online(); ++v) online[v] = t.base.neighbors(v).size();
    for (auto d : online) hist[d] += 1.0;
    nodes += 2000.0;
  }
  std::map<std::size_t, double> target;
  for (const auto& c : classes) target[static_cast<std::size_t>(c.degree)] = c.weight;
  double tv = 0.0;
  std::map<std::size_t, bool> keys;
  for (const auto& [d, _] : hist) keys[d] = true;
  for (const auto& [d, _] : target) keys[d] = true;
  for (const auto& [d, _] : keys) {
    const double got = hist.count(d) ? hist[d] / nodes : 0.0;
    const double want = target.count(d) ? target[d] : 0.0;
    tv += std::abs(got - want);
  }
  tv *= 0.5;
  MESSAGE("Molloy-Reed total variation: " << tv);
  CHECK(tv < 0.05);
}

TEST_CASE("molloy-reed and preferential attachment are reproducible") {
  MolloyReedParams mr;
  mr.n_offline = mr.n_online = 100;
  Rng a(3), b(3);
  CHECK(molloy_reed_typegraph(mr, a).base.adjacency() ==
        molloy_reed_typegraph(mr, b).base.adjacency());
  PrefAttachmentParams pa;
  pa.n_offline = pa.n_online = 100;
  Rng c(4), d(4);
  CHECK(pref_attachment_typegraph(pa, c).base.adjacency() ==
        pref_attachment_typegraph(pa, d).base.adjacency());
}

TEST_CASE("preferential attachment degrees are skewed and grow with size") {
  std::vector<double> medians;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    std::vector<std::size_t> max_deg;
    for (std::uint64_t s = 0; s < 11; ++s) {
      Rng rng(500 + s);
      PrefAttachmentParams p;
      p.n_offline = p.n_online = n;
      const auto t = pref_attachment_typegraph(p, rng);
      validate_type_graph(t);
      CHECK(t.base.edge_count() == n);
      const auto deg = t.base.offline_degrees();
      max_deg.push_back(*std::max_element(deg.begin(), deg.end()));
    }
    std::nth_element(max_deg.begin(), max_deg.begin() + 5, max_deg.end());
    medians.push_back(static_cast<double>(max_deg[5]));
  }
  CHECK(medians[0] < medians[1]);
  CHECK(medians[1] < medians[2]);
  // Uniform attachment would give max degree around log n / log log n.
  CHECK(medians[2] > 12.0);
}

TEST_CASE("bipartite double cover") {
  const auto single = bipartite_double_cover({{1, 2}}, 3);
  CHECK(single.edge_count() == 2);
  CHECK(single.has_edge(1, 2));
  CHECK(single.has_edge(2, 1));

  const auto triangle = bipartite_double_cover({{0, 1}, {1, 2}, {0, 2}}, 3);
  CHECK(triangle.n_offline() == 3);
  CHECK(triangle.m_online() == 3);
  CHECK(triangle.edge_count() == 6);
  CHECK(triangle.offline_degrees() == std::vector<std::size_t>{2, 2, 2});

  const auto loop = bipartite_double_cover({{1, 1}}, 2);
  CHECK(loop.edge_count() == 1);
  CHECK(loop.has_edge(1, 1));
}

TEST_CASE("double cover preserves degrees on both sides") {
  Rng rng(15);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 30;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> deg(n, 0);
    std::bernoulli_distribution edge(0.2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge(rng)) {
          edges.emplace_back(i, j);
          ++deg[i];
          ++deg[j];
        }
      }
    }
    const auto g = bipartite_double_cover(edges, n);
    CHECK(g.offline_degrees() == deg);
    for (NodeIndex v = 0; v < n; ++v) CHECK(g.neighbors(v).size() == deg[v]);
  }
}
