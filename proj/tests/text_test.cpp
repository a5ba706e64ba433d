#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "splboard/text.hpp"

using namespace splboard;

using Tokens = std::vector<std::string>;

namespace {

FeatureDocument text_doc(const std::string& feature, const std::string& text) {
  return {feature, {Fragment{"f.c", 1, 1, FragmentKind::kCode, text}}};
}

}  // namespace

TEST_CASE("tokenize splits identifiers and filters") {
  CHECK(tokenize("parseXMLFile2") == Tokens{"parse", "xml", "file"});
  CHECK(tokenize("") == Tokens{});
  CHECK(tokenize("GPS_route GPS_route if") == Tokens{"gps", "route", "gps", "route"});
  CHECK(tokenize("computeRouteDistance") == Tokens{"compute", "route", "distance"});
  CHECK(tokenize("gps_fix_timeout") == Tokens{"gps", "fix", "timeout"});
  CHECK(tokenize("HTTPServer") == Tokens{"http", "server"});
  CHECK(tokenize("layer3d tile42x") == Tokens{"layer", "tile"});
  CHECK(tokenize("int the for 12345 ab") == Tokens{});
  CHECK(tokenize("caf\xC3\xA9 route") == Tokens{"caf", "route"});
}

TEST_CASE("custom stopwords and stemming") {
  const Stopwords stop = parse_stopwords("# list\nroute\n\nmap\n");
  TokenizerOptions opts;
  opts.stopwords = &stop;
  CHECK(tokenize("route map the", opts) == Tokens{"the"});
  opts.stopwords = nullptr;
  opts.stem = true;
  CHECK(tokenize("routes routing routed", opts) == Tokens{"route", "rout", "rout"});
}

TEST_CASE("tokenize is idempotent on its own output") {
  const Tokens once = tokenize("updateTrafficFeed(); /* Refresh SEGMENT_speeds */");
  std::string joined;
  for (const auto& t : once) joined += t + " ";
  CHECK(tokenize(joined) == once);
}

TEST_CASE("corpus, document frequency and tf-idf") {
  const Corpus c = build_corpus({text_doc("A", "route route map"),
                                 text_doc("B", "route tile"), text_doc("C", "voice")});
  CHECK(c.size() == 3);
  CHECK(c.vocab == Tokens{"map", "route", "tile", "voice"});
  CHECK(c.df.at("route") == 2);
  CHECK(c.term_count(0, "route") == 2);
  CHECK(c.find("B") == 1);
  CHECK(c.find("Z") == Corpus::npos);

  const TfidfTable t = tfidf(c);
  CHECK(t.score(0, "route") == doctest::Approx(2 * std::log(1.5)).epsilon(1e-15));
  CHECK(t.score(1, "route") == doctest::Approx(0.405465).epsilon(1e-6));
  CHECK(t.score(0, "map") == doctest::Approx(std::log(3.0)));
  CHECK(t.score(2, "map") == 0.0);
  CHECK(t.tf(0, "route") == 2);
}

TEST_CASE("a term in every document scores zero") {
  const Corpus c = build_corpus({text_doc("A", "shared alpha"), text_doc("B", "shared beta")});
  CHECK(tfidf(c).score(0, "shared") == 0.0);
}

TEST_CASE("empty vocabulary is an error, empty documents are kept") {
  CHECK_THROWS_AS(build_corpus({text_doc("A", "the a 1")}), CorpusError);
  const Corpus c = build_corpus({text_doc("A", "route"), text_doc("B", "")});
  CHECK(c.size() == 2);
  CHECK(c.docs[1].tokens.empty());
}

TEST_CASE("corpus tsv export") {
  const Corpus c = build_corpus({text_doc("B", "tile"), text_doc("A", "route route")});
  CHECK(export_corpus_tsv(c, tfidf(c)) ==
        "A\troute\t2\t1.386294\nB\ttile\t1\t0.693147\n");
}

TEST_CASE("co-occurrence window") {
  const CooccurrenceGraph abc = cooccurrence({"a", "b", "c"}, 2);
  CHECK(abc.edges.size() == 2);
  CHECK(abc.weight("a", "b") == 1);
  CHECK(abc.weight("b", "c") == 1);
  CHECK(cooccurrence({"a", "a", "a"}, 4).edges.empty());
  CHECK(cooccurrence({"a", "b", "a", "b"}, 3).weight("a", "b") == 3);

  const CooccurrenceGraph g = cooccurrence({"a", "b", "c", "a", "b"}, 3);
  CHECK(g.weight("a", "b") == 3);
  CHECK(g.weight("b", "a") == 3);
  CHECK(g.weight("a", "c") == 2);
  CHECK(g.weight("b", "c") == 2);
  CHECK(g.degree("a") == 2);
  CHECK(g.weight("a", "z") == 0);
  CHECK_THROWS_AS(cooccurrence({"a"}, 1), PreconditionError);

  const CooccurrenceGraph rep = cooccurrence({"x", "y", "y", "x"}, 4);
  CHECK(rep.weight("x", "y") == 3);
}

TEST_CASE("co-occurrence totals match brute force") {
  std::mt19937_64 rng(3);
  const Tokens alphabet = {"aa", "bb", "cc", "dd", "ee"};
  for (int i = 0; i < 200; ++i) {
    Tokens toks(1 + rng() % 30);
    for (auto& t : toks) t = alphabet[rng() % alphabet.size()];
    const int window = 2 + static_cast<int>(rng() % 5);
    const CooccurrenceGraph g = cooccurrence(toks, window);
    long total = 0;
    for (const auto& [pair, w] : g.edges) {
      CHECK(pair.first < pair.second);
      total += w;
    }
    CHECK(total == oracle::cooccurrence_total(toks, window));
  }
}
