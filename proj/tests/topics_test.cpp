#include <doctest.h>

#include <cmath>
#include <numeric>

#include "splboard/topics.hpp"

using namespace splboard;

namespace {

FeatureDocument text_doc(const std::string& feature, const std::string& text) {
  return {feature, {Fragment{"f.c", 1, 1, FragmentKind::kCode, text}}};
}

Corpus toy_corpus() {
  return build_corpus({
      text_doc("GPS", "satellite fix satellite signal fix satellite receiver signal"),
      text_doc("Map", "tile render tile layer render tile projection layer"),
      text_doc("Route", "route waypoint route satellite path waypoint route fix"),
      text_doc("Voice", "speech prompt speech volume prompt speech render"),
      text_doc("Overlay", "satellite tile signal render fix layer satellite tile"),
  });
}

LdaParams small_params(int k, int iterations) {
  LdaParams p = LdaParams::with_topics(k);
  p.iterations = iterations;
  return p;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace

TEST_CASE("uniform source stays in [0, 1)") {
  UniformSource u(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.next();
    CHECK((x >= 0.0 && x < 1.0));
  }
  CHECK(UniformSource(9).next() == UniformSource(9).next());
}

TEST_CASE("gibbs conditional matches the closed form") {
  // Token 0 of doc [0, 1, 0] with z = [0, 1, 1].
  const double alpha = 0.5;
  const double beta = 0.1;
  GibbsSampler s({{0, 1, 0}}, {{0, 1, 1}}, 2, 2, alpha, beta, 3);
  // Counts without token 0: n_d = {0, 2}; topic 1 holds word 1 once and
  // word 0 once; topic 0 is empty.
  const double w0 = (0 + alpha) * (0 + beta) / (0 + 2 * beta);
  const double w1 = (2 + alpha) * (1 + beta) / (2 + 2 * beta);
  const auto p = s.conditional(0, 0);
  CHECK(p[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(w1 / (w0 + w1)).epsilon(1e-12));

  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) hits += s.resample(0, 0) == 0;
  CHECK(std::abs(hits / double(draws) - p[0]) < 0.01);
  CHECK(s.counts_consistent());
}

TEST_CASE("invalid sampler input") {
  CHECK_THROWS_AS(GibbsSampler({{0, 1}}, {{0}}, 2, 2, 1, 1, 0), PreconditionError);
  CHECK_THROWS_AS(GibbsSampler({{0, 1}}, {{0, 2}}, 2, 2, 1, 1, 0), PreconditionError);
  CHECK_THROWS_AS(GibbsSampler({{0}}, 1, 0, 1, 1, 0), TopicModelError);
  CHECK_THROWS_AS(GibbsSampler({{0}}, 1, 2, 0, 1, 0), TopicModelError);
}

TEST_CASE("single topic is degenerate") {
  const TopicModel m = train_lda(toy_corpus(), small_params(1, 20));
  for (const auto& row : m.theta) CHECK(row == std::vector<double>{1.0});
  const Inference inf = infer_theta(m, {"satellite", "fix"}, 10, 1);
  CHECK(inf.theta == std::vector<double>{1.0});
}

TEST_CASE("counts are conserved and distributions normalized") {
  const Corpus c = toy_corpus();
  std::size_t tokens = 0;
  for (const auto& d : c.docs) tokens += d.tokens.size();
  int sweeps = 0;
  const TopicModel m = train_lda(c, small_params(3, 50), [&](const GibbsSampler& s, int) {
    ++sweeps;
    CHECK(s.counts_consistent());
    CHECK(std::accumulate(s.topic_totals().begin(), s.topic_totals().end(), 0) ==
          static_cast<int>(tokens));
  });
  CHECK(sweeps == 50);
  for (const auto& row : m.phi)
    CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) < 1e-9);
  for (const auto& row : m.theta)
    CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) < 1e-9);
  CHECK(m.labels == std::vector<std::string>{"GPS", "Map", "Route", "Voice", "Overlay"});
  CHECK(m.word_id("satellite") != static_cast<std::size_t>(-1));
  CHECK(m.word_id("zzz") == static_cast<std::size_t>(-1));
}

TEST_CASE("training is deterministic per seed") {
  const Corpus c = toy_corpus();
  const TopicModel a = train_lda(c, small_params(3, 30));
  const TopicModel b = train_lda(c, small_params(3, 30));
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);
  LdaParams other = small_params(3, 30);
  other.seed = 7;
  CHECK(train_lda(c, other).topic_word != a.topic_word);
}

TEST_CASE("fold-in recovers a training document's mixture") {
  const Corpus c = toy_corpus();
  LdaParams p = small_params(3, 500);
  p.alpha = 0.5;
  const TopicModel m = train_lda(c, p);
  for (std::size_t d = 0; d < c.size(); ++d) {
    const Inference inf = infer_theta(m, c.docs[d].tokens, 500, 42);
    CHECK(inf.dropped == 0);
    CHECK(l1(inf.theta, m.theta[d]) < 0.1);
  }
}

TEST_CASE("fold-in drops unknown tokens") {
  const TopicModel m = train_lda(toy_corpus(), small_params(2, 10));
  const Inference inf = infer_theta(m, {"satellite", "unknownterm"}, 10, 1);
  CHECK(inf.dropped == 1);
  CHECK_THROWS_AS(infer_theta(m, {"nothing", "known"}, 10, 1), TopicModelError);
  CHECK_THROWS_AS(infer_theta(m, {}, 10, 1), TopicModelError);
}

TEST_CASE("cosine similarity") {
  CHECK(cosine({1, 1}, {1, 0}) == doctest::Approx(0.707107).epsilon(1e-6));
  CHECK(cosine({1, 0}, {0, 1}) == 0.0);
  CHECK(cosine({0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cosine({0, 0}, {1, 0}), TopicModelError);
  CHECK_THROWS_AS(cosine({1}, {1, 0}), TopicModelError);
}

TEST_CASE("similarity matrix") {
  const SimilarityMatrix s = similarity_matrix(
      {{"a", {0.2, 0.8}}, {"b", {0.6, 0.4}}, {"c", {0.2, 0.8}}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.values[i][i] == 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(s.values[i][j] == s.values[j][i]);
      CHECK((s.values[i][j] >= 0.0 && s.values[i][j] <= 1.0));
    }
  }
  CHECK(s.at("a", "c") == doctest::Approx(1.0));
  CHECK(export_similarity_csv(similarity_matrix({{"x", {1, 1}}, {"y", {1, 0}}})) ==
        ",x,y\nx,1.000000,0.707107\ny,0.707107,1.000000\n");
  CHECK_THROWS_AS(similarity_matrix({{"a", {0, 0}}}), TopicModelError);
}
