#include "encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace forge {

void TokenizerConfig::validate() const {
  if (bucket_count < 256 || (bucket_count & (bucket_count - 1)) != 0) {
    fail(ErrorKind::invalid_argument, "bucket_count must be a power of two >= 256");
  }
  if (max_query_tokens < 1 || max_item_tokens < 1) {
    fail(ErrorKind::invalid_argument, "token limits must be >= 1");
  }
}

void EncoderModel::validate() const {
  tokenizer.validate();
  if (dim < 1) fail(ErrorKind::invalid_argument, "model dim must be >= 1");
  if (!(temperature > 0.0)) fail(ErrorKind::invalid_argument, "temperature must be > 0");
  if (table.size() != static_cast<size_t>(tokenizer.bucket_count) * dim) {
    fail(ErrorKind::validation, "model table size does not match bucket_count x dim");
  }
  for (float w : table) {
    if (!std::isfinite(w)) fail(ErrorKind::validation, "non-finite weight in model table");
  }
}

void TrainConfig::validate() const {
  if (epochs < 0) fail(ErrorKind::invalid_argument, "epochs must be >= 0");
  if (batch_size < 1) fail(ErrorKind::invalid_argument, "batch_size must be >= 1");
  if (!(learning_rate > 0.0)) fail(ErrorKind::invalid_argument, "learning_rate must be > 0");
  if (warmup_fraction < 0.0 || warmup_fraction >= 1.0) {
    fail(ErrorKind::invalid_argument, "warmup_fraction must be in [0, 1)");
  }
}

// --- tokenizer -----------------------------------------------------------------

namespace {

inline bool token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
}

inline uint32_t bucket_of(std::string_view token, uint32_t bucket_count) {
  return static_cast<uint32_t>(fnv1a(token) & (bucket_count - 1));
}

}  // namespace

namespace {

inline bool negation_trigger(std::string_view w) {
  return w == "not" || w == "without" || w == "excluding" || w == "non";
}

inline bool scope_boundary(std::string_view w) { return w == "and" || w == "but" || w == "or"; }

}  // namespace

std::vector<uint32_t> tokenize(std::string_view text, const TokenizerConfig& cfg, size_t limit) {
  std::vector<uint32_t> out;
  std::string lower = to_lower(text);
  size_t i = 0;
  std::string scratch;
  // Words following a negation trigger hash into separate buckets ("n:" /
  // "nt:" prefixes) until a conjunction or the scope cap. A shared embedding
  // table cannot otherwise distinguish "co-op" from "not co-op": the negated
  // phrase would attract exactly the items it excludes.
  int neg_scope = 0;
  while (i < lower.size() && out.size() < limit) {
    while (i < lower.size() && !token_byte(static_cast<unsigned char>(lower[i]))) ++i;
    size_t start = i;
    while (i < lower.size() && token_byte(static_cast<unsigned char>(lower[i]))) ++i;
    if (i == start) break;
    std::string_view word = std::string_view(lower).substr(start, i - start);

    bool negated = false;
    if (negation_trigger(word)) {
      neg_scope = 4;
    } else if (scope_boundary(word)) {
      neg_scope = 0;
    } else if (neg_scope > 0) {
      --neg_scope;
      negated = true;
    }

    if (cfg.use_word_tokens) {
      scratch.assign(negated ? "n:" : "w:");
      scratch.append(word);
      out.push_back(bucket_of(scratch, cfg.bucket_count));
      if (out.size() >= limit) break;
    }
    if (cfg.use_char_trigrams) {
      std::string padded = "^" + std::string(word) + "$";
      for (size_t t = 0; t + 3 <= padded.size() && out.size() < limit; ++t) {
        scratch.assign(negated ? "nt:" : "t:");
        scratch.append(padded, t, 3);
        out.push_back(bucket_of(scratch, cfg.bucket_count));
      }
    }
  }
  return out;
}

namespace {

// Unnormalized mean of token rows, in double.
std::vector<double> mean_pool(const std::vector<uint32_t>& tokens, const EncoderModel& model) {
  std::vector<double> acc(model.dim, 0.0);
  if (tokens.empty()) return acc;
  for (uint32_t t : tokens) {
    std::span<const float> r = model.row(t);
    for (uint32_t d = 0; d < model.dim; ++d) acc[d] += r[d];
  }
  const double inv = 1.0 / static_cast<double>(tokens.size());
  for (double& v : acc) v *= inv;
  return acc;
}

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<float> embed(std::string_view text, const EncoderModel& model, size_t limit) {
  std::vector<uint32_t> tokens = tokenize(text, model.tokenizer, limit);
  std::vector<double> mean = mean_pool(tokens, model);
  double norm = norm_of(mean);
  std::vector<float> out(model.dim, 0.0f);
  if (norm > 0.0) {
    for (uint32_t d = 0; d < model.dim; ++d) {
      out[d] = static_cast<float>(mean[d] / norm);
    }
  }
  return out;
}

std::string item_text(const Item& item) {
  std::string text = item.title + ".";
  std::vector<std::string> parts;
  for (const auto& f : item.fields) {
    std::string value;
    if (const auto* t = std::get_if<TextValue>(&f.value)) {
      value = to_lower(t->value);
    } else if (const auto* n = std::get_if<NumberValue>(&f.value)) {
      value = format_number(n->value);
    } else if (const auto* d = std::get_if<DateValue>(&f.value)) {
      value = format_long_date(d->days);
    } else {
      value = join(std::get<CategoriesValue>(f.value).values, ", ");
    }
    parts.push_back(f.name + " : " + value);
  }
  if (!parts.empty()) text += " " + join(parts, ", ") + ".";
  if (!item.description.empty()) text += " " + item.description;
  return text;
}

// --- loss ----------------------------------------------------------------------

namespace {

struct CosResult {
  double value;
  // d cos(a,b) / da = b/(|a||b|) - cos * a/|a|^2
  std::vector<double> grad_a;
  std::vector<double> grad_b;
};

CosResult cosine_with_grads(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  double dot = 0.0;
  for (size_t i = 0; i < n; ++i) dot += a[i] * b[i];
  double na = norm_of(a), nb = norm_of(b);
  if (na == 0.0 || nb == 0.0) {
    fail(ErrorKind::invalid_argument, "info_nce_loss: zero-norm input vector");
  }
  CosResult r;
  r.value = dot / (na * nb);
  r.grad_a.resize(n);
  r.grad_b.resize(n);
  for (size_t i = 0; i < n; ++i) {
    r.grad_a[i] = b[i] / (na * nb) - r.value * a[i] / (na * na);
    r.grad_b[i] = a[i] / (na * nb) - r.value * b[i] / (nb * nb);
  }
  return r;
}

}  // namespace

InfoNceResult info_nce_loss(std::span<const double> query, std::span<const double> positive,
                            const std::vector<std::vector<double>>& negatives, double tau) {
  if (!(tau > 0.0)) fail(ErrorKind::invalid_argument, "info_nce_loss: tau must be > 0");
  const size_t dim = query.size();
  if (positive.size() != dim) fail(ErrorKind::invalid_argument, "info_nce_loss: dim mismatch");
  for (const auto& v : negatives) {
    if (v.size() != dim) fail(ErrorKind::invalid_argument, "info_nce_loss: dim mismatch");
  }

  const size_t n_scores = 1 + negatives.size();
  std::vector<CosResult> cos(n_scores);
  cos[0] = cosine_with_grads(query, positive);
  for (size_t i = 0; i < negatives.size(); ++i) {
    cos[i + 1] = cosine_with_grads(query, negatives[i]);
  }

  // Stabilized log-softmax over scores / tau.
  std::vector<double> logits(n_scores);
  double max_logit = -HUGE_VAL;
  for (size_t i = 0; i < n_scores; ++i) {
    logits[i] = cos[i].value / tau;
    max_logit = std::max(max_logit, logits[i]);
  }
  double z = 0.0;
  for (size_t i = 0; i < n_scores; ++i) z += std::exp(logits[i] - max_logit);

  InfoNceResult out;
  out.loss = -(logits[0] - max_logit) + std::log(z);

  std::vector<double> dscore(n_scores);
  for (size_t i = 0; i < n_scores; ++i) {
    double p = std::exp(logits[i] - max_logit) / z;
    dscore[i] = (p - (i == 0 ? 1.0 : 0.0)) / tau;
  }

  out.grad_query.assign(dim, 0.0);
  for (size_t i = 0; i < n_scores; ++i) {
    for (size_t d = 0; d < dim; ++d) out.grad_query[d] += dscore[i] * cos[i].grad_a[d];
  }
  out.grad_pos.resize(dim);
  for (size_t d = 0; d < dim; ++d) out.grad_pos[d] = dscore[0] * cos[0].grad_b[d];
  out.grad_negs.resize(negatives.size());
  for (size_t i = 0; i < negatives.size(); ++i) {
    out.grad_negs[i].resize(dim);
    for (size_t d = 0; d < dim; ++d) out.grad_negs[i][d] = dscore[i + 1] * cos[i + 1].grad_b[d];
  }
  return out;
}

// --- model init / io -------------------------------------------------------------

EncoderModel init_model(const TokenizerConfig& tokenizer, uint32_t dim, double temperature,
                        uint64_t seed) {
  EncoderModel model;
  model.tokenizer = tokenizer;
  model.dim = dim;
  model.temperature = temperature;
  model.init_seed = seed;
  model.table.resize(static_cast<size_t>(tokenizer.bucket_count) * dim);
  Rng rng(mix_seed(seed, 0x1417ull));
  // The init scale balances two regimes: shared random rows give the
  // untrained model an implicit token-overlap kernel (exact matching), and
  // training layers category structure on top. Too large and updates cannot
  // reshape it, too small and rare-token noise is all that is left.
  const double scale = 0.4 / std::sqrt(static_cast<double>(dim));
  for (float& w : model.table) {
    w = static_cast<float>((rng.real() * 2.0 - 1.0) * scale);
  }
  model.validate();
  return model;
}

std::string serialize_model(const EncoderModel& model) {
  Json header;
  header["version"] = 1;
  header["dim"] = model.dim;
  header["bucket_count"] = model.tokenizer.bucket_count;
  header["temperature"] = model.temperature;
  Json tok;
  tok["use_word_tokens"] = model.tokenizer.use_word_tokens;
  tok["use_char_trigrams"] = model.tokenizer.use_char_trigrams;
  tok["max_query_tokens"] = model.tokenizer.max_query_tokens;
  tok["max_item_tokens"] = model.tokenizer.max_item_tokens;
  header["tokenizer"] = tok;
  header["seed"] = model.init_seed;

  std::string out = header.dump();
  out += '\n';
  size_t off = out.size();
  out.resize(off + model.table.size() * sizeof(float));
  static_assert(sizeof(float) == 4);
  std::memcpy(out.data() + off, model.table.data(), model.table.size() * sizeof(float));
  return out;
}

EncoderModel deserialize_model(std::string_view bytes) {
  size_t nl = bytes.find('\n');
  if (nl == std::string_view::npos) fail(ErrorKind::parse, "model file: missing header line");
  Json header;
  try {
    header = Json::parse(bytes.substr(0, nl));
  } catch (const std::exception& e) {
    fail(ErrorKind::parse, std::string("model file: bad header: ") + e.what());
  }
  if (header.value("version", 0) != 1) {
    fail(ErrorKind::parse, "model file: unsupported version");
  }
  EncoderModel model;
  model.dim = header["dim"].get<uint32_t>();
  model.temperature = header["temperature"].get<double>();
  model.tokenizer.bucket_count = header["bucket_count"].get<uint32_t>();
  const Json& tok = header["tokenizer"];
  model.tokenizer.use_word_tokens = tok["use_word_tokens"].get<bool>();
  model.tokenizer.use_char_trigrams = tok["use_char_trigrams"].get<bool>();
  model.tokenizer.max_query_tokens = tok["max_query_tokens"].get<uint32_t>();
  model.tokenizer.max_item_tokens = tok["max_item_tokens"].get<uint32_t>();
  model.init_seed = header.value("seed", uint64_t{0});

  size_t expected = static_cast<size_t>(model.tokenizer.bucket_count) * model.dim * sizeof(float);
  std::string_view payload = bytes.substr(nl + 1);
  if (payload.size() != expected) {
    fail(ErrorKind::parse, "model file: table has " + std::to_string(payload.size()) +
                               " bytes, expected " + std::to_string(expected));
  }
  model.table.resize(static_cast<size_t>(model.tokenizer.bucket_count) * model.dim);
  std::memcpy(model.table.data(), payload.data(), expected);
  model.validate();
  return model;
}

void save_model(const EncoderModel& model, const std::string& path) {
  write_file(path, serialize_model(model));
}

EncoderModel load_model(const std::string& path) { return deserialize_model(read_file(path)); }

std::string model_fingerprint(const EncoderModel& model) {
  return hash_hex(fnv1a(serialize_model(model)));
}

// --- training ----------------------------------------------------------------------

TrainResult train(const Dataset& train_split, const Catalog& catalog,
                  const EncoderModel& model_init, const TrainConfig& cfg) {
  cfg.validate();
  model_init.validate();
  if (train_split.samples.empty()) {
    fail(ErrorKind::invalid_argument, "train: empty dataset");
  }

  TrainResult result;
  result.model = model_init;
  EncoderModel& model = result.model;
  const uint32_t dim = model.dim;
  const size_t n = train_split.samples.size();

  // Item token cache; item ids are resolved up front so a bad dataset fails
  // before any step runs.
  std::unordered_map<std::string_view, std::vector<uint32_t>> item_tokens;
  auto tokens_for_item = [&](const std::string& id) -> const std::vector<uint32_t>& {
    auto it = item_tokens.find(id);
    if (it != item_tokens.end()) return it->second;
    const Item& item = catalog.at(id);
    auto [ins, _] =
        item_tokens.emplace(item.id, tokenize(item_text(item), model.tokenizer,
                                              model.tokenizer.max_item_tokens));
    return ins->second;
  };
  for (const auto& s : train_split.samples) {
    for (const auto& id : s.positives) tokens_for_item(id);
    for (const auto& id : s.negatives) tokens_for_item(id);
  }

  std::vector<std::vector<uint32_t>> query_tokens(n);
  for (size_t i = 0; i < n; ++i) {
    query_tokens[i] =
        tokenize(train_split.samples[i].query, model.tokenizer, model.tokenizer.max_query_tokens);
  }

  const size_t batches_per_epoch = (n + cfg.batch_size - 1) / cfg.batch_size;
  const size_t total_steps = static_cast<size_t>(cfg.epochs) * batches_per_epoch;
  result.steps = total_steps;
  if (total_steps == 0) return result;  // epochs == 0 keeps the initial model

  const size_t warmup_steps =
      static_cast<size_t>(std::floor(cfg.warmup_fraction * static_cast<double>(total_steps)));
  auto lr_at = [&](size_t step) {
    if (warmup_steps > 0 && step < warmup_steps) {
      return cfg.learning_rate * static_cast<double>(step + 1) / static_cast<double>(warmup_steps);
    }
    return cfg.learning_rate * static_cast<double>(total_steps - step) /
           static_cast<double>(total_steps - warmup_steps);
  };

  size_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng shuffle_rng(mix_seed(cfg.seed, static_cast<uint64_t>(epoch), 0xE90Cull));
    shuffle_rng.shuffle(order);

    double epoch_loss = 0.0;
    for (size_t batch_start = 0; batch_start < n; batch_start += cfg.batch_size) {
      const size_t batch_end = std::min(n, batch_start + cfg.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(batch_end - batch_start);
      std::unordered_map<uint32_t, std::vector<double>> grads;

      auto scatter = [&](const std::vector<uint32_t>& tokens, const std::vector<double>& g) {
        const double inv = 1.0 / static_cast<double>(tokens.size());
        for (uint32_t t : tokens) {
          auto [it, inserted] = grads.try_emplace(t);
          if (inserted) it->second.assign(dim, 0.0);
          for (uint32_t d = 0; d < dim; ++d) it->second[d] += g[d] * inv * inv_batch;
        }
      };

      for (size_t bi = batch_start; bi < batch_end; ++bi) {
        const QuerySample& s = train_split.samples[order[bi]];
        const auto& q_tokens = query_tokens[order[bi]];
        if (q_tokens.empty()) {
          fail(ErrorKind::validation, "train: query tokenizes empty for sample " + s.sample_id);
        }
        Rng pos_rng(mix_seed(mix_seed(cfg.seed, s.seed), static_cast<uint64_t>(epoch), 0x90F0ull));
        const std::string& pos_id = s.positives[pos_rng.index(s.positives.size())];
        const auto& p_tokens = tokens_for_item(pos_id);
        if (p_tokens.empty()) {
          fail(ErrorKind::validation, "train: positive text tokenizes empty for sample " + s.sample_id);
        }

        std::vector<double> q_vec = mean_pool(q_tokens, model);
        std::vector<double> p_vec = mean_pool(p_tokens, model);
        std::vector<std::vector<double>> n_vecs;
        std::vector<const std::vector<uint32_t>*> n_tokens;
        n_vecs.reserve(s.negatives.size());
        for (const auto& id : s.negatives) {
          const auto& tok = tokens_for_item(id);
          if (tok.empty()) {
            fail(ErrorKind::validation, "train: negative text tokenizes empty for sample " + s.sample_id);
          }
          n_tokens.push_back(&tok);
          n_vecs.push_back(mean_pool(tok, model));
        }

        InfoNceResult nce = info_nce_loss(q_vec, p_vec, n_vecs, model.temperature);
        if (!std::isfinite(nce.loss)) {
          fail(ErrorKind::validation, "train: non-finite loss at sample " + s.sample_id);
        }
        epoch_loss += nce.loss;

        scatter(q_tokens, nce.grad_query);
        scatter(p_tokens, nce.grad_pos);
        for (size_t ni = 0; ni < n_tokens.size(); ++ni) scatter(*n_tokens[ni], nce.grad_negs[ni]);
      }

      const double lr = lr_at(step);
      for (const auto& [bucket, g] : grads) {
        float* row = model.table.data() + static_cast<size_t>(bucket) * dim;
        for (uint32_t d = 0; d < dim; ++d) {
          row[d] = static_cast<float>(static_cast<double>(row[d]) - lr * g[d]);
        }
      }
      ++step;
    }
    result.epoch_mean_loss.push_back(epoch_loss / static_cast<double>(n));
  }
  return result;
}

}  // namespace forge
