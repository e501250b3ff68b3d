#pragma once

// Desk-scale text encoder: hashed word + character-trigram embeddings with
// mean pooling, trained contrastively against explicit negatives.

#include <span>
#include <string_view>

#include "taskgen.hpp"

namespace forge {

struct TokenizerConfig {
  uint32_t bucket_count = 65536;  // power of two, >= 256
  bool use_word_tokens = true;
  bool use_char_trigrams = true;
  uint32_t max_query_tokens = 512;
  uint32_t max_item_tokens = 256;

  void validate() const;
  bool operator==(const TokenizerConfig&) const = default;
};

struct EncoderModel {
  TokenizerConfig tokenizer;
  uint32_t dim = 64;
  double temperature = 0.05;
  std::vector<float> table;  // bucket_count x dim, row-major
  uint64_t init_seed = 0;

  std::span<const float> row(uint32_t bucket) const {
    return {table.data() + static_cast<size_t>(bucket) * dim, dim};
  }
  void validate() const;
};

struct TrainConfig {
  int epochs = 3;
  int batch_size = 64;
  double learning_rate = 0.08;
  double warmup_fraction = 0.1;  // linear warmup, then linear decay to 0
  uint64_t seed = 0;
  bool deterministic = true;

  void validate() const;
};

// Lowercases, splits on non-alphanumeric bytes, emits a word token followed
// by that word's boundary-padded character trigrams, hashes everything into
// [0, bucket_count), and keeps the first `limit` tokens.
std::vector<uint32_t> tokenize(std::string_view text, const TokenizerConfig& cfg, size_t limit);

// Mean of token rows, L2-normalized. Empty token list gives the zero vector.
std::vector<float> embed(std::string_view text, const EncoderModel& model, size_t limit);

// Item-side text, identical for training and indexing:
// title, "field : value" pairs in stored order, description.
std::string item_text(const Item& item);

struct InfoNceResult {
  double loss = 0.0;
  std::vector<double> grad_query;
  std::vector<double> grad_pos;
  std::vector<std::vector<double>> grad_negs;
};

// Softmax cross-entropy over cosine scores divided by tau; index 0 is the
// positive. Gradients are exact. Throws on a zero-norm input vector, which
// means empty text reached training.
InfoNceResult info_nce_loss(std::span<const double> query, std::span<const double> positive,
                            const std::vector<std::vector<double>>& negatives, double tau);

EncoderModel init_model(const TokenizerConfig& tokenizer, uint32_t dim, double temperature,
                        uint64_t seed);

struct TrainResult {
  EncoderModel model;
  std::vector<double> epoch_mean_loss;  // one entry per epoch
  size_t steps = 0;
};

// SGD with linear warmup and decay. One step per batch; every sample
// contributes one (query, positive, 7 negatives) term, multi-positive samples
// use one uniformly drawn positive per epoch. Deterministic runs produce
// identical model bytes for identical (data, config, seed).
TrainResult train(const Dataset& train_split, const Catalog& catalog,
                  const EncoderModel& model_init, const TrainConfig& cfg);

// Versioned header line (JSON) followed by the table as little-endian f32.
std::string serialize_model(const EncoderModel& model);
EncoderModel deserialize_model(std::string_view bytes);
void save_model(const EncoderModel& model, const std::string& path);
EncoderModel load_model(const std::string& path);
std::string model_fingerprint(const EncoderModel& model);

}  // namespace forge
