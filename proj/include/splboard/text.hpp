#ifndef SPLBOARD_TEXT_HPP
#define SPLBOARD_TEXT_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splboard/error.hpp"
#include "splboard/scanner.hpp"

namespace splboard {

using Stopwords = std::set<std::string, std::less<>>;

// English function words plus C/C++ keywords and common type names.
const Stopwords& default_stopwords();

// One term per line; blank lines and `#` comments are skipped.
Stopwords parse_stopwords(std::string_view text);

struct TokenizerOptions {
  const Stopwords* stopwords = nullptr;  // nullptr selects the default list
  bool stem = false;                     // strip plural s / ing / ed
};

// Splits on non-alphanumerics, camelCase humps, letter/digit boundaries and
// underscores; lowercases; drops numbers, terms shorter than 3 and
// stopwords. Bytes >= 0x80 are treated as separators.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerOptions& options = {});

class CorpusError : public Error {
 public:
  using Error::Error;
};

struct CorpusDocument {
  std::string feature;
  std::vector<std::string> tokens;  // in text order
};

struct Corpus {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<CorpusDocument> docs;
  std::vector<std::string> vocab;  // sorted, unique
  std::map<std::string, int, std::less<>> df;

  std::size_t size() const { return docs.size(); }
  // Index into docs, or npos.
  std::size_t find(std::string_view feature) const;
  int term_count(std::size_t doc, std::string_view term) const;
};

// One corpus document per feature document (all fragments concatenated in
// order). Throws CorpusError when nothing survives tokenization.
Corpus build_corpus(const std::vector<FeatureDocument>& documents,
                    const TokenizerOptions& options = {});

// score(d, t) = tf(t, d) * ln(N / df(t)); only terms present in a document
// are stored, everything else scores 0.
class TfidfTable {
 public:
  TfidfTable() = default;
  explicit TfidfTable(std::vector<std::map<std::string, double, std::less<>>> rows,
                      std::vector<std::map<std::string, int, std::less<>>> counts)
      : rows_(std::move(rows)), counts_(std::move(counts)) {}

  double score(std::size_t doc, std::string_view term) const;
  int tf(std::size_t doc, std::string_view term) const;
  const std::map<std::string, double, std::less<>>& row(std::size_t doc) const {
    return rows_.at(doc);
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::map<std::string, double, std::less<>>> rows_;
  std::vector<std::map<std::string, int, std::less<>>> counts_;
};

TfidfTable tfidf(const Corpus& corpus);

// `feature<TAB>term<TAB>tf<TAB>tfidf` rows sorted by feature then term.
std::string export_corpus_tsv(const Corpus& corpus, const TfidfTable& table);

// Undirected co-occurrence counts. Keys are ordered pairs (a < b).
struct CooccurrenceGraph {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, int> edges;

  int weight(std::string_view a, std::string_view b) const;
  // Number of distinct neighbours.
  int degree(std::string_view term) const;
};

constexpr int kDefaultWindow = 4;

// For every position i, links token i to each distinct token at positions
// i+1 .. i+window-1 (self pairs skipped). Throws PreconditionError when
// window < 2.
CooccurrenceGraph cooccurrence(const std::vector<std::string>& tokens,
                               int window = kDefaultWindow);

}  // namespace splboard

#endif  // SPLBOARD_TEXT_HPP
