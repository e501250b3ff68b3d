#include "forge.h"

#include <cstring>

#include "agent.hpp"
#include "catalog.hpp"
#include "conditions.hpp"
#include "encoder.hpp"
#include "llm.hpp"
#include "retrieval.hpp"
#include "taskgen.hpp"
#include "templates.hpp"

// Opaque handle definitions wrap the C++ types directly.
struct forge_catalog {
  forge::Catalog value;
  uint64_t seed = 0;
};
struct forge_interactions {
  forge::InteractionLog value;
  uint64_t seed = 0;
};
struct forge_templates {
  forge::TemplatePool value;
};
struct forge_llm {
  forge::GenBackend value;
};
struct forge_dataset {
  forge::Dataset value;
};
struct forge_model {
  forge::EncoderModel value;
};
struct forge_report {
  forge::EvalReport value;
};
struct forge_conversations {
  std::vector<forge::Conversation> value;
  uint64_t seed = 0;
};

namespace {

thread_local std::string t_last_error;

forge_status status_of(forge::ErrorKind kind) {
  using forge::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return FORGE_ERR_INVALID_ARGUMENT;
    case ErrorKind::io: return FORGE_ERR_IO;
    case ErrorKind::parse: return FORGE_ERR_PARSE;
    case ErrorKind::validation: return FORGE_ERR_VALIDATION;
    case ErrorKind::insufficient_data: return FORGE_ERR_INSUFFICIENT_DATA;
    case ErrorKind::config: return FORGE_ERR_CONFIG;
    case ErrorKind::network: return FORGE_ERR_NETWORK;
    case ErrorKind::http_status: return FORGE_ERR_HTTP_STATUS;
    case ErrorKind::internal: return FORGE_ERR_INTERNAL;
  }
  return FORGE_ERR_INTERNAL;
}

template <typename Fn>
forge_status guarded(Fn&& fn) {
  try {
    fn();
    return FORGE_OK;
  } catch (const forge::Error& e) {
    t_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return FORGE_ERR_INTERNAL;
  }
}

forge_status require(bool ok, const char* message) {
  if (ok) return FORGE_OK;
  t_last_error = message;
  return FORGE_ERR_INVALID_ARGUMENT;
}

forge::MixConfig to_mix(const forge_mix* mix) {
  size_t train_total = (mix && mix->train_total) ? mix->train_total : 1200;
  forge::MixConfig out = forge::MixConfig::defaults(train_total);
  if (mix) {
    out.test_total = mix->test_total;
    bool custom = false;
    for (double f : mix->fractions) custom |= f != 0.0;
    if (custom) {
      for (size_t i = 0; i < forge::kTaskCount; ++i) out.fractions[i] = mix->fractions[i];
    }
  }
  return out;
}

forge::TrainConfig to_train_config(const forge_train_opts& opts) {
  forge::TrainConfig cfg;
  cfg.epochs = opts.epochs;
  cfg.batch_size = opts.batch_size;
  cfg.learning_rate = opts.learning_rate;
  cfg.warmup_fraction = opts.warmup_fraction;
  cfg.seed = opts.seed;
  cfg.deterministic = opts.deterministic != 0;
  return cfg;
}

forge::EncoderModel make_initial_model(const forge_train_opts& opts) {
  forge::TokenizerConfig tok;
  tok.bucket_count = static_cast<uint32_t>(opts.bucket_count);
  return forge::init_model(tok, static_cast<uint32_t>(opts.dim), opts.temperature, opts.seed);
}

}  // namespace

extern "C" {

const char* forge_version(void) { return forge::kToolVersion; }

const char* forge_last_error(void) { return t_last_error.c_str(); }

void forge_set_max_jobs(int n) { forge::set_max_jobs(n); }

/* --- catalog ------------------------------------------------------------------ */

forge_status forge_catalog_load(const char* path, forge_catalog** out) {
  if (auto s = require(path && out, "forge_catalog_load: null argument")) return s;
  return guarded([&] { *out = new forge_catalog{forge::load_catalog(path)}; });
}

forge_status forge_catalog_save(const forge_catalog* cat, const char* path) {
  if (auto s = require(cat && path, "forge_catalog_save: null argument")) return s;
  return guarded([&] { forge::save_catalog(cat->value, path, cat->seed); });
}

size_t forge_catalog_size(const forge_catalog* cat) { return cat ? cat->value.items.size() : 0; }

const char* forge_catalog_name(const forge_catalog* cat) {
  return cat ? cat->value.name.c_str() : "";
}

void forge_catalog_free(forge_catalog* cat) { delete cat; }

forge_status forge_interactions_load(const char* path, const forge_catalog* cat,
                                     forge_interactions** out) {
  if (auto s = require(path && cat && out, "forge_interactions_load: null argument")) return s;
  return guarded([&] {
    *out = new forge_interactions{forge::load_interactions(path, cat->value)};
  });
}

forge_status forge_interactions_save(const forge_interactions* log, const char* path) {
  if (auto s = require(log && path, "forge_interactions_save: null argument")) return s;
  return guarded([&] { forge::save_interactions(log->value, path, log->seed); });
}

size_t forge_interactions_users(const forge_interactions* log) {
  return log ? log->value.users.size() : 0;
}

size_t forge_interactions_events(const forge_interactions* log) {
  return log ? log->value.event_count() : 0;
}

size_t forge_interactions_short_users(const forge_interactions* log) {
  if (!log) return 0;
  size_t n = 0;
  for (const auto& u : log->value.users) n += u.short_history;
  return n;
}

void forge_interactions_free(forge_interactions* log) { delete log; }

forge_status forge_synth(uint64_t seed, size_t n_items, size_t n_users, forge_catalog** out_cat,
                         forge_interactions** out_log) {
  if (auto s = require(out_cat && out_log, "forge_synth: null output argument")) return s;
  return guarded([&] {
    forge::SynthResult r = forge::synth_catalog(seed, n_items, n_users);
    *out_cat = new forge_catalog{std::move(r.catalog), seed};
    *out_log = new forge_interactions{std::move(r.interactions), seed};
  });
}

/* --- templates ------------------------------------------------------------------- */

forge_status forge_templates_builtin(forge_templates** out) {
  if (auto s = require(out != nullptr, "forge_templates_builtin: null output")) return s;
  return guarded([&] { *out = new forge_templates{forge::builtin_templates()}; });
}

forge_status forge_templates_load(const char* path, forge_templates** out) {
  if (auto s = require(path && out, "forge_templates_load: null argument")) return s;
  return guarded([&] { *out = new forge_templates{forge::load_templates(path)}; });
}

forge_status forge_templates_save(const forge_templates* tpl, const char* path) {
  if (auto s = require(tpl && path, "forge_templates_save: null argument")) return s;
  return guarded([&] { forge::save_templates(tpl->value, path); });
}

size_t forge_templates_size(const forge_templates* tpl) { return tpl ? tpl->value.size() : 0; }

void forge_templates_free(forge_templates* tpl) { delete tpl; }

/* --- llm ----------------------------------------------------------------------------- */

forge_status forge_llm_fallback(forge_llm** out) {
  if (auto s = require(out != nullptr, "forge_llm_fallback: null output")) return s;
  *out = new forge_llm{forge::fallback_backend()};
  return FORGE_OK;
}

forge_status forge_llm_remote(const char* endpoint, const char* model, const char* auth_env,
                              forge_llm** out) {
  if (auto s = require(endpoint && model && auth_env && out, "forge_llm_remote: null argument")) {
    return s;
  }
  return guarded([&] {
    forge::RemoteBackend remote;
    remote.endpoint = endpoint;
    remote.model = model;
    remote.auth_env = auth_env;
    *out = new forge_llm{std::move(remote)};
  });
}

void forge_llm_free(forge_llm* llm) { delete llm; }

/* --- datasets ---------------------------------------------------------------------------- */

void forge_mix_init(forge_mix* mix) {
  if (!mix) return;
  std::memset(mix, 0, sizeof(*mix));
}

forge_status forge_generate(const forge_catalog* cat, const forge_interactions* log,
                            const forge_templates* tpl, const forge_llm* llm,
                            const forge_mix* mix, uint64_t seed, forge_dataset** out_train,
                            forge_dataset** out_test) {
  if (auto s = require(cat && log && tpl && llm && out_train && out_test,
                       "forge_generate: null argument")) {
    return s;
  }
  return guarded([&] {
    forge::TaskGenerator gen(cat->value, log->value, tpl->value, llm->value, seed);
    auto [train, test] = gen.generate_dataset(to_mix(mix));
    *out_train = new forge_dataset{std::move(train)};
    *out_test = new forge_dataset{std::move(test)};
  });
}

forge_status forge_dataset_load(const char* path, forge_dataset** out) {
  if (auto s = require(path && out, "forge_dataset_load: null argument")) return s;
  return guarded([&] { *out = new forge_dataset{forge::load_dataset(path)}; });
}

forge_status forge_dataset_save(const forge_dataset* ds, const char* path) {
  if (auto s = require(ds && path, "forge_dataset_save: null argument")) return s;
  return guarded([&] { forge::save_dataset(ds->value, path); });
}

size_t forge_dataset_size(const forge_dataset* ds) { return ds ? ds->value.samples.size() : 0; }

void forge_dataset_free(forge_dataset* ds) { delete ds; }

/* --- encoder ------------------------------------------------------------------------------- */

void forge_train_opts_init(forge_train_opts* opts) {
  if (!opts) return;
  opts->epochs = 3;
  opts->batch_size = 64;
  opts->learning_rate = 0.08;
  opts->warmup_fraction = 0.1;
  opts->seed = 0;
  opts->deterministic = 1;
  opts->dim = 64;
  opts->bucket_count = 65536;
  opts->temperature = 0.05;
}

forge_status forge_model_init(const forge_train_opts* opts, forge_model** out) {
  if (auto s = require(opts && out, "forge_model_init: null argument")) return s;
  return guarded([&] { *out = new forge_model{make_initial_model(*opts)}; });
}

forge_status forge_train(const forge_dataset* train, const forge_catalog* cat,
                         const forge_train_opts* opts, forge_model** out) {
  if (auto s = require(train && cat && opts && out, "forge_train: null argument")) return s;
  return guarded([&] {
    forge::EncoderModel init = make_initial_model(*opts);
    forge::TrainResult result =
        forge::train(train->value, cat->value, init, to_train_config(*opts));
    *out = new forge_model{std::move(result.model)};
  });
}

forge_status forge_model_load(const char* path, forge_model** out) {
  if (auto s = require(path && out, "forge_model_load: null argument")) return s;
  return guarded([&] { *out = new forge_model{forge::load_model(path)}; });
}

forge_status forge_model_save(const forge_model* model, const char* path) {
  if (auto s = require(model && path, "forge_model_save: null argument")) return s;
  return guarded([&] { forge::save_model(model->value, path); });
}

forge_status forge_model_scale(forge_model* model, double factor) {
  if (auto s = require(model != nullptr, "forge_model_scale: null model")) return s;
  return guarded([&] {
    if (!(factor > 0.0)) forge::fail(forge::ErrorKind::invalid_argument, "scale must be > 0");
    for (float& w : model->value.table) w = static_cast<float>(w * factor);
  });
}

void forge_model_free(forge_model* model) { delete model; }

/* --- evaluation -------------------------------------------------------------------------------- */

forge_status forge_evaluate(const forge_dataset* test, const forge_catalog* cat,
                            const forge_model* model, int k, const char* ood_label,
                            const char* label, forge_report** out) {
  if (auto s = require(test && cat && model && out, "forge_evaluate: null argument")) return s;
  return guarded([&] {
    *out = new forge_report{forge::evaluate(test->value, cat->value, model->value,
                                            static_cast<size_t>(k > 0 ? k : 5),
                                            ood_label ? ood_label : "", label ? label : "")};
  });
}

forge_status forge_report_save(const forge_report* report, const char* path,
                               int include_timings) {
  if (auto s = require(report && path, "forge_report_save: null argument")) return s;
  return guarded([&] { forge::save_report(report->value, path, include_timings != 0); });
}

forge_status forge_report_load(const char* path, forge_report** out) {
  if (auto s = require(path && out, "forge_report_load: null argument")) return s;
  return guarded([&] { *out = new forge_report{forge::load_report(path)}; });
}

forge_status forge_report_value(const forge_report* report, const char* task, double* out_value) {
  if (auto s = require(report && task && out_value, "forge_report_value: null argument")) return s;
  return guarded([&] { *out_value = report->value.value_of(task); });
}

forge_status forge_report_table(const forge_report* const* reports, size_t n, char** out_text) {
  if (auto s = require(reports && out_text, "forge_report_table: null argument")) return s;
  return guarded([&] {
    std::vector<forge::EvalReport> list;
    list.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (!reports[i]) forge::fail(forge::ErrorKind::invalid_argument, "null report in list");
      list.push_back(reports[i]->value);
    }
    std::string table = forge::render_report_table(list);
    *out_text = new char[table.size() + 1];
    std::memcpy(*out_text, table.c_str(), table.size() + 1);
  });
}

void forge_string_free(char* s) { delete[] s; }

void forge_report_free(forge_report* report) { delete report; }

/* --- conversations ------------------------------------------------------------------------------ */

forge_status forge_synth_conversations(const forge_catalog* cat, const forge_interactions* log,
                                       size_t n, uint64_t seed, const forge_llm* llm,
                                       forge_conversations** out) {
  if (auto s = require(cat && log && llm && out, "forge_synth_conversations: null argument")) {
    return s;
  }
  return guarded([&] {
    *out = new forge_conversations{
        forge::synth_conversations(cat->value, log->value, n, seed, llm->value), seed};
  });
}

forge_status forge_conversations_load(const char* path, const forge_catalog* cat,
                                      forge_conversations** out) {
  if (auto s = require(path && cat && out, "forge_conversations_load: null argument")) return s;
  return guarded([&] {
    *out = new forge_conversations{forge::load_conversations(path, cat->value)};
  });
}

forge_status forge_conversations_save(const forge_conversations* convs, const char* path) {
  if (auto s = require(convs && path, "forge_conversations_save: null argument")) return s;
  return guarded([&] { forge::save_conversations(convs->value, path, convs->seed); });
}

size_t forge_conversations_size(const forge_conversations* convs) {
  return convs ? convs->value.size() : 0;
}

forge_status forge_agent_eval(const forge_conversations* convs, const forge_catalog* cat,
                              const forge_model* model, int k, const char* label,
                              forge_report** out) {
  if (auto s = require(convs && cat && model && out, "forge_agent_eval: null argument")) return s;
  return guarded([&] {
    *out = new forge_report{forge::eval_conversations(convs->value, cat->value, model->value,
                                                      static_cast<size_t>(k > 0 ? k : 5), false,
                                                      label ? label : "")};
  });
}

void forge_conversations_free(forge_conversations* convs) { delete convs; }

}  // extern "C"
