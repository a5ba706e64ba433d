#include "splboard/text.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "text_util.hpp"

namespace splboard {

namespace {

constexpr const char* kDefaultStopwords[] = {
    // English
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "could", "did",
    "does", "doing", "down", "during", "each", "few", "for", "from",
    "further", "had", "has", "have", "having", "here", "how", "if", "in",
    "into", "is", "it", "its", "itself", "just", "more", "most", "must", "no",
    "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
    "our", "out", "over", "own", "same", "shall", "should", "so", "some",
    "such", "than", "that", "the", "their", "them", "then", "there", "these",
    "they", "this", "those", "through", "to", "too", "under", "until", "up",
    "upon", "very", "via", "was", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "within", "would", "you",
    "your",
    // C / C++ keywords and preprocessor words
    "auto", "bool", "break", "case", "char", "const", "constexpr", "continue",
    "default", "define", "defined", "delete", "do", "double", "elif", "else",
    "endif", "enum", "extern", "false", "float", "for", "goto", "ifdef",
    "ifndef", "include", "inline", "int", "long", "namespace", "new", "null",
    "nullptr", "pragma", "private", "protected", "public", "register",
    "return", "short", "signed", "sizeof", "static", "struct", "switch",
    "template", "this", "true", "typedef", "typename", "undef", "union",
    "unsigned", "using", "virtual", "void", "volatile",
    // common type and library names
    "size", "uint", "std", "printf", "str", "ptr", "len", "tmp", "val", "args",
    "argc", "argv",
};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }

std::string stem(std::string term) {
  auto strip = [&](std::string_view suffix) {
    if (term.size() >= suffix.size() + 3 && term.ends_with(suffix)) {
      term.resize(term.size() - suffix.size());
      return true;
    }
    return false;
  };
  if (strip("ing") || strip("ed")) return term;
  if (!term.ends_with("ss")) strip("s");
  return term;
}

}  // namespace

const Stopwords& default_stopwords() {
  static const Stopwords words(std::begin(kDefaultStopwords),
                               std::end(kDefaultStopwords));
  return words;
}

Stopwords parse_stopwords(std::string_view text) {
  Stopwords out;
  for (std::string_view line : detail::split_lines(text)) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::string word(line);
    std::transform(word.begin(), word.end(), word.begin(), [](char c) {
      return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
    });
    out.insert(std::move(word));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerOptions& options) {
  const Stopwords& stop =
      options.stopwords ? *options.stopwords : default_stopwords();
  std::vector<std::string> out;

  auto emit = [&](std::string_view piece) {
    if (piece.empty() || is_digit(piece.front())) return;  // pure number
    std::string term(piece);
    for (char& c : term)
      if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    if (options.stem) term = stem(std::move(term));
    if (term.size() < 3 || stop.count(term)) return;
    out.push_back(std::move(term));
  };

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alnum(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && is_alnum(text[j])) ++j;
    // Split the alphanumeric run [i, j) into humps.
    std::size_t start = i;
    for (std::size_t k = i + 1; k < j; ++k) {
      const char prev = text[k - 1];
      const char cur = text[k];
      const bool boundary =
          (is_digit(prev) != is_digit(cur)) ||
          (is_lower(prev) && is_upper(cur)) ||
          (is_upper(prev) && is_upper(cur) && k + 1 < j &&
           is_lower(text[k + 1]));
      if (boundary) {
        emit(text.substr(start, k - start));
        start = k;
      }
    }
    if (j > start) emit(text.substr(start, j - start));
    i = j;
  }
  return out;
}

std::size_t Corpus::find(std::string_view feature) const {
  for (std::size_t i = 0; i < docs.size(); ++i)
    if (docs[i].feature == feature) return i;
  return npos;
}

int Corpus::term_count(std::size_t doc, std::string_view term) const {
  const auto& tokens = docs.at(doc).tokens;
  return static_cast<int>(std::count(tokens.begin(), tokens.end(), term));
}

Corpus build_corpus(const std::vector<FeatureDocument>& documents,
                    const TokenizerOptions& options) {
  Corpus corpus;
  std::set<std::string> vocab;
  for (const FeatureDocument& doc : documents) {
    CorpusDocument cd{doc.feature, {}};
    for (const Fragment& fragment : doc.fragments) {
      auto tokens = tokenize(fragment.text, options);
      cd.tokens.insert(cd.tokens.end(), std::make_move_iterator(tokens.begin()),
                       std::make_move_iterator(tokens.end()));
    }
    const std::set<std::string> distinct(cd.tokens.begin(), cd.tokens.end());
    for (const std::string& term : distinct) {
      ++corpus.df[term];
      vocab.insert(term);
    }
    corpus.docs.push_back(std::move(cd));
  }
  if (vocab.empty())
    throw CorpusError("corpus is empty: no document has any token left after "
                      "tokenization");
  corpus.vocab.assign(vocab.begin(), vocab.end());
  return corpus;
}

double TfidfTable::score(std::size_t doc, std::string_view term) const {
  const auto& row = rows_.at(doc);
  auto it = row.find(term);
  return it == row.end() ? 0.0 : it->second;
}

int TfidfTable::tf(std::size_t doc, std::string_view term) const {
  const auto& row = counts_.at(doc);
  auto it = row.find(term);
  return it == row.end() ? 0 : it->second;
}

TfidfTable tfidf(const Corpus& corpus) {
  const double n = static_cast<double>(corpus.size());
  std::vector<std::map<std::string, double, std::less<>>> rows;
  std::vector<std::map<std::string, int, std::less<>>> counts;
  for (const CorpusDocument& doc : corpus.docs) {
    std::map<std::string, int, std::less<>> tf;
    for (const std::string& t : doc.tokens) ++tf[t];
    std::map<std::string, double, std::less<>> row;
    for (const auto& [term, count] : tf) {
      const double df = corpus.df.find(term)->second;
      row.emplace(term, count * std::log(n / df));
    }
    rows.push_back(std::move(row));
    counts.push_back(std::move(tf));
  }
  return TfidfTable(std::move(rows), std::move(counts));
}

std::string export_corpus_tsv(const Corpus& corpus, const TfidfTable& table) {
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.docs[a].feature < corpus.docs[b].feature;
  });
  std::ostringstream out;
  for (std::size_t d : order) {
    for (const auto& [term, score] : table.row(d))
      out << corpus.docs[d].feature << '\t' << term << '\t' << table.tf(d, term)
          << '\t' << detail::fixed6(score) << '\n';
  }
  return out.str();
}

int CooccurrenceGraph::weight(std::string_view a, std::string_view b) const {
  if (a == b) return 0;
  std::pair<std::string, std::string> key{std::string(a), std::string(b)};
  if (key.second < key.first) std::swap(key.first, key.second);
  auto it = edges.find(key);
  return it == edges.end() ? 0 : it->second;
}

int CooccurrenceGraph::degree(std::string_view term) const {
  int degree = 0;
  for (const auto& [key, w] : edges)
    if (key.first == term || key.second == term) ++degree;
  return degree;
}

CooccurrenceGraph cooccurrence(const std::vector<std::string>& tokens,
                               int window) {
  if (window < 2)
    throw PreconditionError("co-occurrence window must be >= 2, got " +
                            std::to_string(window));
  CooccurrenceGraph graph;
  graph.nodes.insert(tokens.begin(), tokens.end());
  const std::size_t w = static_cast<std::size_t>(window);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::set<std::string_view> linked;
    for (std::size_t j = i + 1; j < tokens.size() && j < i + w; ++j) {
      if (tokens[j] == tokens[i] || !linked.insert(tokens[j]).second) continue;
      auto key = tokens[i] < tokens[j] ? std::pair{tokens[i], tokens[j]}
                                       : std::pair{tokens[j], tokens[i]};
      ++graph.edges[std::move(key)];
    }
  }
  return graph;
}

}  // namespace splboard
