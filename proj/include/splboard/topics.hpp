#ifndef SPLBOARD_TOPICS_HPP
#define SPLBOARD_TOPICS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splboard/error.hpp"
#include "splboard/text.hpp"

namespace splboard {

class TopicModelError : public Error {
 public:
  using Error::Error;
};

struct LdaParams {
  int topics = 10;
  double alpha = 5.0;  // 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 42;

  static LdaParams with_topics(int k) {
    LdaParams p;
    p.topics = k;
    p.alpha = 50.0 / k;
    return p;
  }
};

// Deterministic uniform draws on [0, 1) from a 64-bit Mersenne twister.
// The standard distributions are implementation-defined, so they are not
// used where bit-reproducibility matters.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(next() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

// Collapsed Gibbs sampler state. Documents are sequences of word ids in
// [0, vocab_size).
class GibbsSampler {
 public:
  GibbsSampler(std::vector<std::vector<int>> docs, int vocab_size, int topics,
               double alpha, double beta, std::uint64_t seed);

  // Explicit initial assignments, one per token (for controlled tests).
  GibbsSampler(std::vector<std::vector<int>> docs,
               std::vector<std::vector<int>> assignments, int vocab_size,
               int topics, double alpha, double beta, std::uint64_t seed);

  // Normalized P(z_i = k | rest) for token `pos` of document `doc`.
  std::vector<double> conditional(std::size_t doc, std::size_t pos) const;

  // Removes the token, draws a topic from the conditional, re-adds it.
  int resample(std::size_t doc, std::size_t pos);

  void sweep();

  // True when every count table agrees with the assignments.
  bool counts_consistent() const;

  int topics() const { return topics_; }
  int vocab_size() const { return vocab_size_; }
  const std::vector<std::vector<int>>& docs() const { return docs_; }
  const std::vector<std::vector<int>>& assignments() const { return z_; }
  const std::vector<std::vector<int>>& doc_topic() const { return n_dk_; }
  const std::vector<std::vector<int>>& topic_word() const { return n_kw_; }
  const std::vector<int>& topic_totals() const { return n_k_; }

 private:
  void fill_weights(std::size_t doc, int word, std::vector<double>& w) const;
  void add(std::size_t doc, std::size_t pos, int topic, int delta);

  std::vector<std::vector<int>> docs_;
  std::vector<std::vector<int>> z_;
  int vocab_size_;
  int topics_;
  double alpha_;
  double beta_;
  UniformSource rng_;
  std::vector<std::vector<int>> n_dk_;
  std::vector<std::vector<int>> n_kw_;
  std::vector<int> n_k_;
  std::vector<double> scratch_;
};

struct TopicModel {
  LdaParams params;
  std::vector<std::string> vocab;
  std::vector<std::string> labels;      // one per training document
  std::vector<std::vector<double>> phi;    // K x V
  std::vector<std::vector<double>> theta;  // D x K
  // Final topic-word counts, frozen for fold-in inference.
  std::vector<std::vector<int>> topic_word;
  std::vector<int> topic_totals;

  std::size_t word_id(std::string_view term) const;  // npos when unknown
};

// Optional hook run after every sweep (iteration index is 1-based).
using SweepObserver = std::function<void(const GibbsSampler&, int iteration)>;

TopicModel train_lda(const Corpus& corpus, const LdaParams& params,
                     const SweepObserver& observer = {});

struct Inference {
  std::vector<double> theta;
  std::size_t dropped = 0;  // tokens not in the model vocabulary
};

// Fold-in Gibbs sampling for an unseen document: the topic-word counts stay
// frozen, only the new document's assignments are resampled.
Inference infer_theta(const TopicModel& model,
                      const std::vector<std::string>& tokens, int iterations,
                      std::uint64_t seed);

struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;

  std::size_t index(std::string_view label) const;  // npos when unknown
  double at(std::string_view a, std::string_view b) const;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Pairwise cosine; the diagonal is exactly 1 and the matrix exactly
// symmetric.
SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, std::vector<double>>>& thetas);

// Header row and column of labels, values with 6 decimals.
std::string export_similarity_csv(const SimilarityMatrix& matrix);

// Diagnostic dump: K, alpha, beta, seed, iterations, vocab, phi, theta.
std::string export_model_json(const TopicModel& model);

}  // namespace splboard

#endif  // SPLBOARD_TOPICS_HPP
