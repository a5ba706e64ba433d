#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "splboard/scanner.hpp"

using namespace splboard;

namespace {

const FeatureModel& nav_model() {
  static const FeatureModel m = parse_feature_model(
      "root Nav\n  mandatory Engine\n  optional GPS\n  optional Traffic\n");
  return m;
}

const MacroMap& nav_map() {
  static const MacroMap m = {{"FEAT_GPS", "GPS"}, {"FEAT_TRAFFIC", "Traffic"}};
  return m;
}

const FeatureDocument& doc(const ScanResult& r, const std::string& feature) {
  for (const auto& d : r.documents)
    if (d.feature == feature) return d;
  throw std::runtime_error("no document for " + feature);
}

using Sets = std::vector<std::set<std::string>>;

}  // namespace

TEST_CASE("ifdef region goes to its feature, the rest to the root") {
  const SourceFile f{"a.c", "int x;\n#ifdef FEAT_GPS\nint gps;\n#endif\nint y;\n"};
  CHECK(attribute_lines(f, nav_model(), nav_map()) ==
        Sets{{"Nav"}, {}, {"GPS"}, {}, {"Nav"}});

  const ScanResult r = scan_sources({f}, nav_model(), nav_map());
  REQUIRE(r.documents.size() == 4);
  const auto& gps = doc(r, "GPS");
  REQUIRE(gps.fragments.size() == 1);
  CHECK(gps.fragments[0] == Fragment{"a.c", 3, 3, FragmentKind::kCode, "int gps;"});
  CHECK(doc(r, "Nav").fragments.size() == 2);
  CHECK(doc(r, "Engine").fragments.empty());
}

TEST_CASE("nested regions attribute to every enclosing feature") {
  const SourceFile f{"n.c",
                     "#ifdef FEAT_GPS\na();\n#if defined(FEAT_TRAFFIC)\nb();\n#endif\n#endif\n"};
  CHECK(attribute_lines(f, nav_model(), nav_map()) ==
        Sets{{}, {"GPS"}, {}, {"GPS", "Traffic"}, {}, {}});
}

TEST_CASE("ifndef body is negative, its else is positive") {
  const SourceFile f{"x.c", "#ifndef FEAT_GPS\nno_gps();\n#else\ngps();\n#endif\n"};
  CHECK(attribute_lines(f, nav_model(), nav_map()) ==
        Sets{{}, {"Nav"}, {}, {"GPS"}, {}});
}

TEST_CASE("contradictory nesting falls back to the root") {
  const SourceFile f{"c.c", "#ifdef FEAT_GPS\n#ifndef FEAT_GPS\ndead();\n#endif\n#endif\n"};
  CHECK(attribute_lines(f, nav_model(), nav_map())[2] == std::set<std::string>{"Nav"});
}

TEST_CASE("identity fallback and unmapped macros") {
  const SourceFile f{"u.c", "#ifdef Engine\ne();\n#endif\n#ifdef NOPE\nn();\n#endif\n"};
  std::set<std::string> unmapped;
  const auto sets = attribute_lines(f, nav_model(), nav_map(), nullptr, &unmapped);
  CHECK(sets[1] == std::set<std::string>{"Engine"});
  CHECK(sets[4] == std::set<std::string>{"Nav"});
  CHECK(unmapped == std::set<std::string>{"NOPE"});
}

TEST_CASE("complex conditions are opaque and warned about") {
  const SourceFile f{"w.c",
                     "#ifdef FEAT_GPS\n#if defined(A) && defined(B)\nx();\n#elif C\ny();\n"
                     "#endif\n#endif\n"};
  std::vector<ScanWarning> warnings;
  const auto sets = attribute_lines(f, nav_model(), nav_map(), &warnings);
  CHECK(sets[2] == std::set<std::string>{"GPS"});
  CHECK(sets[4] == std::set<std::string>{"GPS"});
  CHECK_FALSE(warnings.empty());
  CHECK(warnings[0].line == 2);
}

TEST_CASE("unbalanced directives throw with the offending line") {
  auto line_of = [](const char* text) {
    try {
      attribute_lines(SourceFile{"bad.c", text}, nav_model(), nav_map());
    } catch (const ScanError& e) {
      CHECK(e.file() == "bad.c");
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("x;\n#endif\n") == 2);
  CHECK(line_of("#else\n") == 1);
  CHECK(line_of("#elif X\n") == 1);
  CHECK(line_of("#ifdef A\n#else\n#else\n#endif\n") == 3);
  CHECK(line_of("#ifdef A\n#else\n#elif B\n#endif\n") == 3);
  CHECK(line_of("a;\n#ifdef A\nb;\n") == 2);
}

TEST_CASE("fragments split on kind and attribution changes") {
  const SourceFile f{"k.c", "// header\n// more\nint a;\nint b;\n#ifdef FEAT_GPS\n// gps\n#endif\n"};
  const ScanResult r = scan_sources({f}, nav_model(), nav_map());
  const auto& nav = doc(r, "Nav").fragments;
  REQUIRE(nav.size() == 2);
  CHECK(nav[0] == Fragment{"k.c", 1, 2, FragmentKind::kComment, "// header\n// more"});
  CHECK(nav[1] == Fragment{"k.c", 3, 4, FragmentKind::kCode, "int a;\nint b;"});
  CHECK(doc(r, "GPS").fragments.at(0).kind == FragmentKind::kComment);
}

TEST_CASE("macro map naming an unknown feature is rejected") {
  const MacroMap bad = {{"X", "Nowhere"}};
  CHECK_THROWS_AS(scan_sources({{"a.c", "a;\n"}}, nav_model(), bad), Error);
}

TEST_CASE("comment line classification") {
  CHECK(is_comment_line("  // x"));
  CHECK(is_comment_line("/* x"));
  CHECK(is_comment_line(" * x"));
  CHECK(is_comment_line("#include <x.h>"));
  CHECK_FALSE(is_comment_line("int a; // trailing"));
  CHECK_FALSE(is_comment_line(""));
}

TEST_CASE("docs are appended and unknown features are all listed") {
  ScanResult r = scan_sources({{"a.c", "a;\n"}}, nav_model(), nav_map());
  ingest_docs(r.documents, {{"GPS", "docs/gps.md", "Satellite fix.\n"}});
  const auto& gps = doc(r, "GPS").fragments;
  REQUIRE(gps.size() == 1);
  CHECK(gps[0].kind == FragmentKind::kDoc);
  CHECK(gps[0].source == "docs/gps.md");

  try {
    ingest_docs(r.documents, {{"Zed", "z.md", ""}, {"GPS", "g.md", ""}, {"Ack", "a.md", ""}});
    FAIL("expected UnresolvedFeatureError");
  } catch (const UnresolvedFeatureError& e) {
    CHECK(e.names() == std::vector<std::string>{"Zed", "Ack"});
  }
}

TEST_CASE("map file parsing") {
  const MacroMap m = parse_macro_map("# c\nFEAT_GPS = GPS\n\n  WITH_X=X  \n");
  CHECK(m == MacroMap{{"FEAT_GPS", "GPS"}, {"WITH_X", "X"}});
  CHECK_THROWS_AS(parse_macro_map("FEAT_GPS GPS\n"), Error);
  const auto d = parse_doc_map("GPS = docs/gps.md\n");
  REQUIRE(d.size() == 1);
  CHECK(d[0].feature == "GPS");
  CHECK(d[0].path == "docs/gps.md");
}

TEST_CASE("attribution matches the exhaustive oracle on generated files") {
  const std::vector<std::string> macros = {"M0", "M1", "M2", "M3"};
  const FeatureModel model = parse_feature_model(
      "root R\n  optional F0\n  optional F1\n  optional F2\n  optional F3\n");
  MacroMap map;
  for (int i = 0; i < 4; ++i) map["M" + std::to_string(i)] = "F" + std::to_string(i);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const std::string text = oracle::generate_file(rng, macros, 3);
    auto expected = oracle::attribution(text, macros, "R");
    for (auto& s : expected) {
      std::set<std::string> mapped;
      for (const auto& name : s) mapped.insert(name == "R" ? "R" : map.at(name));
      s = mapped;
    }
    INFO(text);
    CHECK(attribute_lines({"g.c", text}, model, map) == expected);
  }
}

TEST_CASE("every non-directive line lands in some document exactly as scanned") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> macros = {"FEAT_GPS", "FEAT_TRAFFIC"};
  for (int i = 0; i < 20; ++i) {
    const std::string text = oracle::generate_file(rng, macros, 2);
    const SourceFile f{"p.c", text};
    const auto sets = attribute_lines(f, nav_model(), nav_map());
    std::size_t expected = 0;
    for (const auto& s : sets) expected += s.size();
    const ScanResult r = scan_sources({f}, nav_model(), nav_map());
    std::size_t covered = 0;
    for (const auto& d : r.documents)
      for (const auto& frag : d.fragments) covered += frag.last_line - frag.first_line + 1;
    CHECK(covered == expected);
    CHECK(scan_sources({f}, nav_model(), nav_map()).documents == r.documents);
  }
}
