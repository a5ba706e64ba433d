#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "splboard/concepts.hpp"

using namespace splboard;

namespace {

FeatureDocument text_doc(const std::string& feature, const std::string& text) {
  return {feature, {Fragment{"f.c", 1, 1, FragmentKind::kCode, text}}};
}

struct Toy {
  Corpus corpus;
  TfidfTable scores;
  std::vector<CooccurrenceGraph> graphs;
};

Toy toy() {
  Toy t;
  t.corpus = build_corpus({
      text_doc("GPS", "satellite fix route satellite waypoint route satellite fix"),
      text_doc("Map", "tile route render tile layer render tile"),
  });
  t.scores = tfidf(t.corpus);
  t.graphs = feature_graphs(t.corpus);
  return t;
}

CandidateTable gps_candidates() {
  CandidateTable c;
  c["GPS"] = {{"GPS", "route", 1.0, 1.0, 1.0}, {"GPS", "waypoint", 0.5, 0.5, 0.5}};
  c["Map"] = {{"Map", "tile", 1.0, 1.0, 1.0}};
  return c;
}

}  // namespace

TEST_CASE("relevance blends the two normalized components") {
  const Toy t = toy();
  const auto table = candidate_concepts(t.corpus, t.scores, t.graphs, 0.5, 10);
  for (const auto& c : table.at("GPS"))
    CHECK(c.relevance == doctest::Approx(0.5 * c.tfidf_norm + 0.5 * c.centrality_norm));
  const CandidateConcept probe{"X", "t", 0.5 * 1.0 + 0.5 * 0.5, 1.0, 0.5};
  CHECK(probe.relevance == 0.75);
}

TEST_CASE("lambda 1 ranks by tf-idf alone") {
  const Toy t = toy();
  const auto table = candidate_concepts(t.corpus, t.scores, t.graphs, 1.0, 10);
  for (std::size_t d = 0; d < t.corpus.size(); ++d) {
    const auto& list = table.at(t.corpus.docs[d].feature);
    for (std::size_t i = 1; i < list.size(); ++i) {
      const double prev = t.scores.score(d, list[i - 1].term);
      const double cur = t.scores.score(d, list[i].term);
      CHECK(prev >= cur);
      if (prev == cur) CHECK(list[i - 1].term < list[i].term);
    }
  }
}

TEST_CASE("top-3 matches an independent recomputation") {
  const Toy t = toy();
  std::vector<std::vector<std::string>> docs;
  for (const auto& d : t.corpus.docs) docs.push_back(d.tokens);
  const auto table = candidate_concepts(t.corpus, t.scores, t.graphs, 0.5, 3);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto expected = oracle::rank_terms(docs, d, kDefaultWindow, 0.5);
    const auto& got = table.at(t.corpus.docs[d].feature);
    REQUIRE(got.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(got[i].term == expected[i].term);
      CHECK(got[i].relevance == doctest::Approx(expected[i].relevance).epsilon(1e-12));
    }
  }
}

TEST_CASE("top-k prefixes are stable as k grows") {
  const Toy t = toy();
  const auto big = candidate_concepts(t.corpus, t.scores, t.graphs, 0.5, 10);
  for (int k = 1; k <= 5; ++k) {
    const auto small = candidate_concepts(t.corpus, t.scores, t.graphs, 0.5, k);
    for (const auto& [feature, list] : small) {
      REQUIRE(list.size() <= big.at(feature).size());
      for (std::size_t i = 0; i < list.size(); ++i)
        CHECK(list[i].term == big.at(feature)[i].term);
    }
  }
}

TEST_CASE("invalid parameters") {
  const Toy t = toy();
  CHECK_THROWS_AS(candidate_concepts(t.corpus, t.scores, t.graphs, 1.5, 3), PreconditionError);
  CHECK_THROWS_AS(candidate_concepts(t.corpus, t.scores, t.graphs, 0.5, 0), PreconditionError);
}

TEST_CASE("curation replay") {
  const CandidateTable cands = gps_candidates();
  const CurationLedger ledger = {Accept{"GPS", "route"}, Accept{"GPS", "waypoint"},
                                 Relate{"route", "consists-of", "waypoint"}};
  const ConceptMap m = apply_curation(cands, ledger);
  CHECK(m.concepts.size() == 2);
  CHECK(m.relations.size() == 1);
  CHECK(m.feature_links().size() == 2);

  CHECK(apply_curation(cands, {}).concepts.empty());
  CHECK(apply_curation(cands, {Accept{"GPS", "route"}, Reject{"GPS", "route"}})
            .concepts.empty());
}

TEST_CASE("rename, expert-added terms and relation errors") {
  const CandidateTable cands = gps_candidates();
  const ConceptMap m = apply_curation(
      cands, {Accept{"GPS", "route"}, Rename{"route", "Route"}, Accept{"Map", "route"},
              Accept{"Map", "projection"}});
  CHECK(m.concepts.at("route").label == "Route");
  CHECK(m.concepts.at("route").features == std::set<std::string>{"GPS", "Map"});
  CHECK_FALSE(m.concepts.at("route").expert_added);
  CHECK(m.concepts.at("projection").expert_added);

  try {
    apply_curation(cands, {Accept{"GPS", "route"}, Relate{"route", "x", "tile"}});
    FAIL("expected CurationError");
  } catch (const CurationError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(apply_curation(cands, {Accept{"Nope", "route"}}), CurationError);
  // Endpoints are checked after the full replay.
  CHECK_NOTHROW(apply_curation(cands, {Relate{"route", "x", "tile"}, Accept{"GPS", "route"},
                                       Accept{"Map", "tile"}}));
}

TEST_CASE("replaying a ledger twice changes nothing") {
  const CandidateTable cands = gps_candidates();
  CurationLedger ledger = {Accept{"GPS", "route"}, Accept{"Map", "tile"},
                           Relate{"route", "near", "tile"}, Rename{"tile", "Tile"}};
  const ConceptMap once = apply_curation(cands, ledger);
  CurationLedger doubled = ledger;
  doubled.insert(doubled.end(), ledger.begin(), ledger.end());
  CHECK(apply_curation(cands, doubled) == once);
}

TEST_CASE("independent actions commute") {
  const CandidateTable cands = gps_candidates();
  CurationLedger ledger = {Accept{"GPS", "route"}, Accept{"GPS", "waypoint"},
                           Accept{"Map", "tile"}, Rename{"route", "Route"}};
  const ConceptMap base = apply_curation(cands, ledger);
  std::sort(ledger.begin(), ledger.end(), [](const auto& a, const auto& b) {
    return action_to_json(a) < action_to_json(b);
  });
  do {
    CHECK(apply_curation(cands, ledger) == base);
  } while (std::next_permutation(ledger.begin(), ledger.end(), [](const auto& a, const auto& b) {
    return action_to_json(a) < action_to_json(b);
  }));
}

TEST_CASE("ledger json lines") {
  const CurationLedger ledger = {Accept{"GPS", "route"}, Reject{"GPS", "fix"},
                                 Rename{"route", "Route"}, Relate{"route", "has", "fix"}};
  const std::string text = ledger_to_jsonl(ledger);
  CHECK(text.substr(0, text.find('\n')) ==
        R"({"op":"accept","feature":"GPS","term":"route"})");
  CHECK(parse_ledger(text) == ledger);
  CHECK(parse_ledger("\n" + text + "\n\n") == ledger);

  auto bad_line = [](const std::string& jsonl) {
    try {
      parse_ledger(jsonl);
    } catch (const LedgerFormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(bad_line(text + "{\"op\":\"merge\"}\n") == 5);
  CHECK(bad_line("{not json\n") == 1);
  CHECK(bad_line("{\"op\":\"accept\",\"feature\":\"GPS\"}\n") == 1);
  CHECK_THROWS_AS(parse_action("[1]"), Error);
}

TEST_CASE("curation status follows the last action") {
  const CurationLedger ledger = {Accept{"GPS", "route"}, Reject{"GPS", "fix"},
                                 Reject{"GPS", "route"}};
  CHECK(curation_status(ledger, "GPS", "route") == CandidateStatus::kRejected);
  CHECK(curation_status(ledger, "GPS", "fix") == CandidateStatus::kRejected);
  CHECK(curation_status(ledger, "GPS", "other") == CandidateStatus::kPending);
  CHECK(curation_status({Accept{"GPS", "x"}}, "GPS", "x") == CandidateStatus::kAccepted);
}

TEST_CASE("suggested relations") {
  const Toy t = toy();
  CandidateTable cands = candidate_concepts(t.corpus, t.scores, t.graphs);
  const ConceptMap m = apply_curation(
      cands, {Accept{"GPS", "satellite"}, Accept{"GPS", "fix"}, Accept{"GPS", "waypoint"}});
  const int w = t.graphs[0].weight("fix", "satellite");
  REQUIRE(w >= 2);
  const auto s = suggest_relations(m, t.graphs, w);
  REQUIRE_FALSE(s.empty());
  CHECK(s[0].a == "fix");
  CHECK(s[0].b == "satellite");
  for (const auto& r : s) CHECK(r.weight >= w);

  const ConceptMap related = apply_curation(
      cands, {Accept{"GPS", "satellite"}, Accept{"GPS", "fix"},
              Relate{"satellite", "gives", "fix"}});
  for (const auto& r : suggest_relations(related, t.graphs, 1))
    CHECK_FALSE((r.a == "fix" && r.b == "satellite"));

  const ConceptMap full = with_suggestions(m, s);
  CHECK(full.relations.size() == s.size());
  CHECK(full.relations.begin()->suggested);
  CHECK(full.relations.begin()->label == kSuggestedLabel);
}

TEST_CASE("dot export") {
  CHECK(export_map(ConceptMap{}, MapFormat::kDot) == "digraph conceptmap {\n}\n");
  const ConceptMap m = apply_curation(
      gps_candidates(), {Accept{"GPS", "waypoint"}, Accept{"GPS", "route"},
                         Relate{"route", "consists-of", "waypoint"}});
  CHECK(export_map(m, MapFormat::kDot) ==
        "digraph conceptmap {\n"
        "  \"route\" [label=\"route\"];\n"
        "  \"waypoint\" [label=\"waypoint\"];\n"
        "  \"route\" -> \"waypoint\" [label=\"consists-of\"];\n"
        "}\n");
}

TEST_CASE("json export round-trips byte for byte") {
  const ConceptMap m = with_suggestions(
      apply_curation(gps_candidates(),
                     {Accept{"GPS", "waypoint"}, Accept{"GPS", "route"}, Accept{"Map", "route"},
                      Accept{"Map", "quad\"tree"}, Rename{"route", "Route é"},
                      Relate{"route", "consists-of", "waypoint"}}),
      {{"route", "waypoint", 4}});
  const std::string json = export_map(m, MapFormat::kJson);
  const ConceptMap back = parse_concept_map_json(json);
  CHECK(back == m);
  CHECK(export_map(back, MapFormat::kJson) == json);
  CHECK_THROWS_AS(parse_concept_map_json("{\"concepts\": 3}"), Error);
}
