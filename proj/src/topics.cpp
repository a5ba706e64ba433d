#include "splboard/topics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace splboard {

namespace {

void check_params(int topics, double alpha, double beta) {
  if (topics < 1) throw TopicModelError("topic count must be >= 1");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw TopicModelError("alpha and beta must be positive");
}

// Linear scan over unnormalized weights.
int draw(const std::vector<double>& weights, double total, double u) {
  double target = u * total;
  const int k = static_cast<int>(weights.size());
  for (int t = 0; t < k - 1; ++t) {
    target -= weights[t];
    if (target < 0.0) return t;
  }
  return k - 1;
}

}  // namespace

GibbsSampler::GibbsSampler(std::vector<std::vector<int>> docs, int vocab_size,
                           int topics, double alpha, double beta,
                           std::uint64_t seed)
    : docs_(std::move(docs)),
      vocab_size_(vocab_size),
      topics_(topics),
      alpha_(alpha),
      beta_(beta),
      rng_(seed) {
  check_params(topics, alpha, beta);
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    z_[d].resize(docs_[d].size());
    for (int& topic : z_[d])
      topic = static_cast<int>(rng_.below(static_cast<std::size_t>(topics_)));
  }
  n_dk_.assign(docs_.size(), std::vector<int>(topics_, 0));
  n_kw_.assign(topics_, std::vector<int>(vocab_size_, 0));
  n_k_.assign(topics_, 0);
  for (std::size_t d = 0; d < docs_.size(); ++d)
    for (std::size_t i = 0; i < docs_[d].size(); ++i) add(d, i, z_[d][i], +1);
  scratch_.resize(topics_);
}

GibbsSampler::GibbsSampler(std::vector<std::vector<int>> docs,
                           std::vector<std::vector<int>> assignments,
                           int vocab_size, int topics, double alpha,
                           double beta, std::uint64_t seed)
    : docs_(std::move(docs)),
      z_(std::move(assignments)),
      vocab_size_(vocab_size),
      topics_(topics),
      alpha_(alpha),
      beta_(beta),
      rng_(seed) {
  check_params(topics, alpha, beta);
  if (z_.size() != docs_.size())
    throw PreconditionError("one assignment vector per document required");
  n_dk_.assign(docs_.size(), std::vector<int>(topics_, 0));
  n_kw_.assign(topics_, std::vector<int>(vocab_size_, 0));
  n_k_.assign(topics_, 0);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    if (z_[d].size() != docs_[d].size())
      throw PreconditionError("assignment length differs from document length");
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      if (z_[d][i] < 0 || z_[d][i] >= topics_)
        throw PreconditionError("assignment outside [0, topics)");
      add(d, i, z_[d][i], +1);
    }
  }
  scratch_.resize(topics_);
}

void GibbsSampler::add(std::size_t doc, std::size_t pos, int topic, int delta) {
  const int word = docs_[doc][pos];
  n_dk_[doc][topic] += delta;
  n_kw_[topic][word] += delta;
  n_k_[topic] += delta;
}

void GibbsSampler::fill_weights(std::size_t doc, int word,
                                std::vector<double>& w) const {
  const double v_beta = vocab_size_ * beta_;
  for (int k = 0; k < topics_; ++k)
    w[k] = (n_dk_[doc][k] + alpha_) * (n_kw_[k][word] + beta_) /
           (n_k_[k] + v_beta);
}

std::vector<double> GibbsSampler::conditional(std::size_t doc,
                                              std::size_t pos) const {
  const int word = docs_.at(doc).at(pos);
  const int self = z_[doc][pos];
  const double v_beta = vocab_size_ * beta_;
  std::vector<double> w(topics_);
  double total = 0.0;
  for (int k = 0; k < topics_; ++k) {
    const int own = k == self ? 1 : 0;
    w[k] = (n_dk_[doc][k] - own + alpha_) * (n_kw_[k][word] - own + beta_) /
           (n_k_[k] - own + v_beta);
    total += w[k];
  }
  for (double& x : w) x /= total;
  return w;
}

int GibbsSampler::resample(std::size_t doc, std::size_t pos) {
  add(doc, pos, z_[doc][pos], -1);
  fill_weights(doc, docs_[doc][pos], scratch_);
  double total = 0.0;
  for (double x : scratch_) total += x;
  const int topic = draw(scratch_, total, rng_.next());
  z_[doc][pos] = topic;
  add(doc, pos, topic, +1);
  return topic;
}

void GibbsSampler::sweep() {
  for (std::size_t d = 0; d < docs_.size(); ++d)
    for (std::size_t i = 0; i < docs_[d].size(); ++i) resample(d, i);
  assert(counts_consistent());
}

bool GibbsSampler::counts_consistent() const {
  std::vector<std::vector<int>> dk(docs_.size(), std::vector<int>(topics_, 0));
  std::vector<std::vector<int>> kw(topics_, std::vector<int>(vocab_size_, 0));
  std::vector<int> k_tot(topics_, 0);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      ++dk[d][z_[d][i]];
      ++kw[z_[d][i]][docs_[d][i]];
      ++k_tot[z_[d][i]];
    }
  }
  if (dk != n_dk_ || kw != n_kw_ || k_tot != n_k_) return false;
  // Row-sum identities: sum_k n_dk = len(d), sum_w n_kw = n_k.
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    long sum = 0;
    for (int c : n_dk_[d]) sum += c;
    if (sum != static_cast<long>(docs_[d].size())) return false;
  }
  for (int k = 0; k < topics_; ++k) {
    long sum = 0;
    for (int c : n_kw_[k]) sum += c;
    if (sum != n_k_[k]) return false;
  }
  return true;
}

std::size_t TopicModel::word_id(std::string_view term) const {
  auto it = std::lower_bound(vocab.begin(), vocab.end(), term);
  if (it == vocab.end() || *it != term) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - vocab.begin());
}

TopicModel train_lda(const Corpus& corpus, const LdaParams& params,
                     const SweepObserver& observer) {
  check_params(params.topics, params.alpha, params.beta);
  if (params.iterations < 1) throw TopicModelError("iterations must be >= 1");
  if (corpus.vocab.empty()) throw TopicModelError("corpus is empty");

  TopicModel model;
  model.params = params;
  model.vocab = corpus.vocab;
  std::vector<std::vector<int>> docs;
  for (const CorpusDocument& doc : corpus.docs) {
    model.labels.push_back(doc.feature);
    std::vector<int> ids;
    ids.reserve(doc.tokens.size());
    for (const std::string& t : doc.tokens) {
      const std::size_t id = model.word_id(t);
      if (id == static_cast<std::size_t>(-1))
        throw TopicModelError("token '" + t + "' missing from corpus vocab");
      ids.push_back(static_cast<int>(id));
    }
    docs.push_back(std::move(ids));
  }

  const int k_topics = params.topics;
  const int v = static_cast<int>(model.vocab.size());
  GibbsSampler sampler(std::move(docs), v, k_topics, params.alpha, params.beta,
                       params.seed);
  for (int it = 1; it <= params.iterations; ++it) {
    sampler.sweep();
    if (observer) observer(sampler, it);
  }

  const double v_beta = v * params.beta;
  model.phi.assign(k_topics, std::vector<double>(v));
  for (int k = 0; k < k_topics; ++k)
    for (int w = 0; w < v; ++w)
      model.phi[k][w] = (sampler.topic_word()[k][w] + params.beta) /
                        (sampler.topic_totals()[k] + v_beta);
  const double k_alpha = k_topics * params.alpha;
  for (std::size_t d = 0; d < sampler.docs().size(); ++d) {
    const double len = static_cast<double>(sampler.docs()[d].size());
    std::vector<double> row(k_topics);
    for (int k = 0; k < k_topics; ++k)
      row[k] = (sampler.doc_topic()[d][k] + params.alpha) / (len + k_alpha);
    model.theta.push_back(std::move(row));
  }
  model.topic_word = sampler.topic_word();
  model.topic_totals = sampler.topic_totals();
  return model;
}

Inference infer_theta(const TopicModel& model,
                      const std::vector<std::string>& tokens, int iterations,
                      std::uint64_t seed) {
  if (iterations < 1) throw TopicModelError("iterations must be >= 1");
  Inference out;
  std::vector<int> words;
  for (const std::string& t : tokens) {
    const std::size_t id = model.word_id(t);
    if (id == static_cast<std::size_t>(-1)) {
      ++out.dropped;
    } else {
      words.push_back(static_cast<int>(id));
    }
  }
  if (words.empty())
    throw TopicModelError("document has no known tokens (" +
                          std::to_string(out.dropped) + " dropped)");

  const int k_topics = model.params.topics;
  const double alpha = model.params.alpha;
  const double beta = model.params.beta;
  const double v_beta = static_cast<double>(model.vocab.size()) * beta;

  UniformSource rng(seed);
  std::vector<int> z(words.size());
  std::vector<int> n_k_doc(k_topics, 0);
  for (int& topic : z) {
    topic = static_cast<int>(rng.below(static_cast<std::size_t>(k_topics)));
    ++n_k_doc[topic];
  }
  std::vector<double> weights(k_topics);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      --n_k_doc[z[i]];
      double total = 0.0;
      for (int k = 0; k < k_topics; ++k) {
        weights[k] = (n_k_doc[k] + alpha) *
                     (model.topic_word[k][words[i]] + beta) /
                     (model.topic_totals[k] + v_beta);
        total += weights[k];
      }
      z[i] = draw(weights, total, rng.next());
      ++n_k_doc[z[i]];
    }
  }
  const double denom = static_cast<double>(words.size()) + k_topics * alpha;
  out.theta.resize(k_topics);
  for (int k = 0; k < k_topics; ++k) out.theta[k] = (n_k_doc[k] + alpha) / denom;
  return out;
}

std::size_t SimilarityMatrix::index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return static_cast<std::size_t>(-1);
}

double SimilarityMatrix::at(std::string_view a, std::string_view b) const {
  const std::size_t i = index(a);
  const std::size_t j = index(b);
  if (i == static_cast<std::size_t>(-1) || j == static_cast<std::size_t>(-1))
    throw PreconditionError("unknown similarity label");
  return values[i][j];
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw TopicModelError("vector length mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw TopicModelError("zero vector in cosine");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

SimilarityMatrix similarity_matrix(
    const std::vector<std::pair<std::string, std::vector<double>>>& thetas) {
  SimilarityMatrix m;
  const std::size_t n = thetas.size();
  for (const auto& [label, vec] : thetas) {
    if (vec.size() != thetas.front().second.size())
      throw TopicModelError("topic vectors differ in length");
    double sum = 0.0;
    for (double x : vec) {
      if (!(x >= 0.0)) throw TopicModelError("negative entry for '" + label + "'");
      sum += x;
    }
    if (!(sum > 0.0)) throw TopicModelError("zero topic vector for '" + label + "'");
    m.labels.push_back(label);
  }
  m.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m.values[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = cosine(thetas[i].second, thetas[j].second);
      m.values[i][j] = s;
      m.values[j][i] = s;
    }
  }
  return m;
}

std::string export_similarity_csv(const SimilarityMatrix& matrix) {
  std::ostringstream out;
  for (const std::string& label : matrix.labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out << matrix.labels[i];
    for (double v : matrix.values[i]) out << ',' << detail::fixed6(v);
    out << '\n';
  }
  return out.str();
}

std::string export_model_json(const TopicModel& model) {
  nlohmann::ordered_json doc;
  doc["K"] = model.params.topics;
  doc["alpha"] = model.params.alpha;
  doc["beta"] = model.params.beta;
  doc["seed"] = model.params.seed;
  doc["iterations"] = model.params.iterations;
  doc["vocab"] = model.vocab;
  doc["labels"] = model.labels;
  doc["phi"] = model.phi;
  doc["theta"] = model.theta;
  return doc.dump() + "\n";
}

}  // namespace splboard
