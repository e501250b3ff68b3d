// forge CLI: synth / ingest / generate / train / eval / agent-eval / report.
// Links the public C API only.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forge.h"

namespace {

namespace fs = std::filesystem;

[[noreturn]] void die(const char* what) {
  std::fprintf(stderr, "forge: %s: %s\n", what, forge_last_error());
  std::exit(1);
}

#define CHECK(call)                 \
  do {                              \
    if ((call) != FORGE_OK) {      \
      die(#call);                   \
    }                               \
  } while (0)

// --catalog accepts either the catalog file or a directory holding
// catalog.jsonl (as written by `forge synth`).
std::string catalog_file(const std::string& path) {
  if (fs::is_directory(path)) return (fs::path(path) / "catalog.jsonl").string();
  return path;
}

std::string interactions_file(const std::string& catalog_arg, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (fs::is_directory(catalog_arg)) {
    return (fs::path(catalog_arg) / "interactions.jsonl").string();
  }
  return (fs::path(catalog_arg).parent_path() / "interactions.jsonl").string();
}

struct LlmOptions {
  std::string backend = "fallback";
  std::string endpoint;
  std::string model = "gpt-4";
  std::string auth_env = "FORGE_LLM_TOKEN";

  void attach(CLI::App* cmd) {
    cmd->add_option("--llm", backend, "Text generation backend: fallback | remote")
        ->check(CLI::IsMember({"fallback", "remote"}))
        ->capture_default_str();
    cmd->add_option("--endpoint", endpoint, "Remote chat-completion endpoint URL");
    cmd->add_option("--model-name", model, "Remote model name")->capture_default_str();
    cmd->add_option("--auth-env", auth_env, "Env var holding the remote bearer token")
        ->capture_default_str();
  }

  forge_llm* open() const {
    forge_llm* llm = nullptr;
    if (backend == "remote") {
      CHECK(forge_llm_remote(endpoint.c_str(), model.c_str(), auth_env.c_str(), &llm));
    } else {
      CHECK(forge_llm_fallback(&llm));
    }
    return llm;
  }
};

struct Handles {
  forge_catalog* catalog = nullptr;
  forge_interactions* interactions = nullptr;

  void load(const std::string& catalog_arg, const std::string& interactions_arg,
            bool need_interactions) {
    CHECK(forge_catalog_load(catalog_file(catalog_arg).c_str(), &catalog));
    if (need_interactions) {
      CHECK(forge_interactions_load(interactions_file(catalog_arg, interactions_arg).c_str(),
                                    catalog, &interactions));
    }
  }
  ~Handles() {
    forge_interactions_free(interactions);
    forge_catalog_free(catalog);
  }
};

int run_synth(uint64_t seed, size_t items, size_t users, size_t convs, const std::string& out) {
  fs::create_directories(out);
  forge_catalog* cat = nullptr;
  forge_interactions* log = nullptr;
  CHECK(forge_synth(seed, items, users, &cat, &log));
  std::string cat_path = (fs::path(out) / "catalog.jsonl").string();
  std::string log_path = (fs::path(out) / "interactions.jsonl").string();
  CHECK(forge_catalog_save(cat, cat_path.c_str()));
  CHECK(forge_interactions_save(log, log_path.c_str()));
  std::printf("catalog: %zu items -> %s\n", forge_catalog_size(cat), cat_path.c_str());
  std::printf("interactions: %zu users, %zu events -> %s\n", forge_interactions_users(log),
              forge_interactions_events(log), log_path.c_str());
  if (convs > 0) {
    forge_llm* llm = nullptr;
    CHECK(forge_llm_fallback(&llm));
    forge_conversations* cs = nullptr;
    CHECK(forge_synth_conversations(cat, log, convs, seed, llm, &cs));
    std::string conv_path = (fs::path(out) / "conversations.jsonl").string();
    CHECK(forge_conversations_save(cs, conv_path.c_str()));
    std::printf("conversations: %zu -> %s\n", forge_conversations_size(cs), conv_path.c_str());
    forge_conversations_free(cs);
    forge_llm_free(llm);
  }
  forge_interactions_free(log);
  forge_catalog_free(cat);
  return 0;
}

int run_ingest(const std::string& catalog_arg, const std::string& interactions_arg,
               const std::string& out) {
  Handles h;
  h.load(catalog_arg, interactions_arg, !interactions_arg.empty());
  std::printf("catalog '%s': %zu items\n", forge_catalog_name(h.catalog),
              forge_catalog_size(h.catalog));
  if (h.interactions) {
    std::printf("interactions: %zu users, %zu events, %zu short-history users\n",
                forge_interactions_users(h.interactions),
                forge_interactions_events(h.interactions),
                forge_interactions_short_users(h.interactions));
  }
  if (!out.empty()) {
    fs::create_directories(out);
    std::string cat_path = (fs::path(out) / "catalog.jsonl").string();
    CHECK(forge_catalog_save(h.catalog, cat_path.c_str()));
    std::printf("normalized catalog -> %s\n", cat_path.c_str());
    if (h.interactions) {
      std::string log_path = (fs::path(out) / "interactions.jsonl").string();
      CHECK(forge_interactions_save(h.interactions, log_path.c_str()));
      std::printf("normalized interactions -> %s\n", log_path.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: synthesize item-retrieval training data, fine-tune the hashed-token "
               "encoder, and evaluate Hit@K / Coverage@K"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("forge ") + forge_version() +
                                        " (formats: catalog=1 dataset=1 model=1 report=1)");
  app.set_config("--config", "", "Read options from a TOML-style config file; flags override");
  int jobs = 4;
  app.add_option("--jobs", jobs, "Global worker cap")->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic catalog and interaction log");
  uint64_t synth_seed = 42;
  size_t synth_items = 500, synth_users = 300, synth_convs = 0;
  std::string synth_out;
  synth->add_option("--seed", synth_seed, "Generation seed")->capture_default_str();
  synth->add_option("--items", synth_items, "Number of items (>= 10)")->capture_default_str();
  synth->add_option("--users", synth_users, "Number of users (>= 1)")->capture_default_str();
  synth->add_option("--convs", synth_convs, "Also write this many scripted conversations")
      ->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a catalog and interaction log");
  std::string ingest_catalog, ingest_interactions, ingest_out;
  ingest->add_option("--catalog", ingest_catalog, "Catalog file or directory")->required();
  ingest->add_option("--interactions", ingest_interactions, "Interactions file");
  ingest->add_option("--out", ingest_out, "Write normalized copies into this directory");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate the ten-task train/test dataset");
  std::string gen_catalog, gen_interactions, gen_templates, gen_split_out = "train.jsonl,test.jsonl";
  std::string gen_export_templates;
  size_t gen_total = 1200, gen_test_total = 0;
  uint64_t gen_seed = 42;
  LlmOptions gen_llm;
  gen->add_option("--catalog", gen_catalog, "Catalog file or directory (synth --out)");
  gen->add_option("--interactions", gen_interactions, "Interactions file (defaults next to catalog)");
  gen->add_option("--templates", gen_templates, "Template pool file (defaults to the builtin pool)");
  gen->add_option("--total", gen_total, "Train-split sample count")->capture_default_str();
  gen->add_option("--test-total", gen_test_total, "Test-split sample count (0: total/3)")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generation seed")->capture_default_str();
  gen->add_option("--split-out", gen_split_out, "TRAIN,TEST output paths")->capture_default_str();
  gen->add_option("--export-templates", gen_export_templates,
                  "Write the builtin template pool to this path and exit");
  gen_llm.attach(gen);

  // train
  auto* train = app.add_subcommand("train", "Train the encoder on a generated dataset");
  std::string train_dataset, train_catalog, train_out;
  forge_train_opts topts;
  forge_train_opts_init(&topts);
  train->add_option("--dataset", train_dataset, "Training dataset file")->required();
  train->add_option("--catalog", train_catalog, "Catalog file or directory")->required();
  train->add_option("--out", train_out, "Model output path")->required();
  train->add_option("--epochs", topts.epochs)->capture_default_str();
  train->add_option("--batch", topts.batch_size)->capture_default_str();
  train->add_option("--lr", topts.learning_rate)->capture_default_str();
  train->add_option("--warmup", topts.warmup_fraction)->capture_default_str();
  train->add_option("--seed", topts.seed)->capture_default_str();
  train->add_option("--dim", topts.dim)->capture_default_str();
  train->add_option("--buckets", topts.bucket_count)->capture_default_str();
  train->add_option("--temperature", topts.temperature)->capture_default_str();
  train->add_flag("--no-deterministic",
                  [&](size_t) { topts.deterministic = 0; },
                  "Allow nondeterministic batch reduction");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a model: per-task Hit@K / Coverage@K");
  std::string eval_dataset, eval_catalog, eval_model, eval_out, eval_ood, eval_label = "model";
  int eval_k = 5;
  bool eval_timings = false;
  eval->add_option("--dataset", eval_dataset, "Test dataset file")->required();
  eval->add_option("--catalog", eval_catalog, "Catalog file or directory")->required();
  eval->add_option("--model", eval_model, "Model file")->required();
  eval->add_option("--k", eval_k, "Cutoff")->capture_default_str();
  eval->add_option("--out", eval_out, "Report output path");
  eval->add_option("--ood-label", eval_ood, "Mark the report as out-of-domain for this source");
  eval->add_option("--label", eval_label, "Model label used in report tables")
      ->capture_default_str();
  eval->add_flag("--timings", eval_timings, "Include wall-clock in the report file");

  // agent-eval
  auto* agent = app.add_subcommand("agent-eval", "Score retrieval from scripted conversations");
  std::string agent_convs, agent_catalog, agent_model, agent_out, agent_label = "model";
  int agent_k = 5;
  bool agent_timings = false;
  agent->add_option("--conversations", agent_convs, "Conversations file")->required();
  agent->add_option("--catalog", agent_catalog, "Catalog file or directory")->required();
  agent->add_option("--model", agent_model, "Model file")->required();
  agent->add_option("--k", agent_k, "Cutoff")->capture_default_str();
  agent->add_option("--out", agent_out, "Report output path");
  agent->add_option("--label", agent_label, "Model label")->capture_default_str();
  agent->add_flag("--timings", agent_timings, "Include wall-clock in the report file");

  // report
  auto* report = app.add_subcommand("report", "Merge reports into one comparison table");
  std::vector<std::string> report_in;
  std::string report_out;
  report->add_option("--in", report_in, "Report files")->required()->expected(-1);
  report->add_option("--out", report_out, "Write the merged table to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  forge_set_max_jobs(jobs);

  if (synth->parsed()) {
    return run_synth(synth_seed, synth_items, synth_users, synth_convs, synth_out);
  }

  if (ingest->parsed()) {
    return run_ingest(ingest_catalog, ingest_interactions, ingest_out);
  }

  if (gen->parsed()) {
    if (!gen_export_templates.empty()) {
      forge_templates* tpl = nullptr;
      CHECK(forge_templates_builtin(&tpl));
      CHECK(forge_templates_save(tpl, gen_export_templates.c_str()));
      std::printf("templates: %zu -> %s\n", forge_templates_size(tpl),
                  gen_export_templates.c_str());
      forge_templates_free(tpl);
      return 0;
    }
    if (gen_catalog.empty()) {
      std::fprintf(stderr, "forge: generate requires --catalog\n");
      return 2;
    }
    auto paths = gen_split_out.find(',');
    if (paths == std::string::npos) {
      std::fprintf(stderr, "forge: --split-out needs TRAIN,TEST\n");
      return 2;
    }
    std::string train_path = gen_split_out.substr(0, paths);
    std::string test_path = gen_split_out.substr(paths + 1);

    Handles h;
    h.load(gen_catalog, gen_interactions, true);
    forge_templates* tpl = nullptr;
    if (gen_templates.empty()) {
      CHECK(forge_templates_builtin(&tpl));
    } else {
      CHECK(forge_templates_load(gen_templates.c_str(), &tpl));
    }
    forge_llm* llm = gen_llm.open();
    forge_mix mix;
    forge_mix_init(&mix);
    mix.train_total = gen_total;
    mix.test_total = gen_test_total;
    forge_dataset* train_ds = nullptr;
    forge_dataset* test_ds = nullptr;
    CHECK(forge_generate(h.catalog, h.interactions, tpl, llm, &mix, gen_seed, &train_ds,
                         &test_ds));
    CHECK(forge_dataset_save(train_ds, train_path.c_str()));
    CHECK(forge_dataset_save(test_ds, test_path.c_str()));
    std::printf("train: %zu samples -> %s\n", forge_dataset_size(train_ds), train_path.c_str());
    std::printf("test: %zu samples -> %s\n", forge_dataset_size(test_ds), test_path.c_str());
    forge_dataset_free(train_ds);
    forge_dataset_free(test_ds);
    forge_llm_free(llm);
    forge_templates_free(tpl);
    return 0;
  }

  if (train->parsed()) {
    Handles h;
    h.load(train_catalog, "", false);
    forge_dataset* ds = nullptr;
    CHECK(forge_dataset_load(train_dataset.c_str(), &ds));
    forge_model* model = nullptr;
    CHECK(forge_train(ds, h.catalog, &topts, &model));
    CHECK(forge_model_save(model, train_out.c_str()));
    std::printf("model: %zu samples, %d epochs -> %s\n", forge_dataset_size(ds), topts.epochs,
                train_out.c_str());
    forge_model_free(model);
    forge_dataset_free(ds);
    return 0;
  }

  if (eval->parsed()) {
    Handles h;
    h.load(eval_catalog, "", false);
    forge_dataset* ds = nullptr;
    CHECK(forge_dataset_load(eval_dataset.c_str(), &ds));
    forge_model* model = nullptr;
    CHECK(forge_model_load(eval_model.c_str(), &model));
    forge_report* rep = nullptr;
    CHECK(forge_evaluate(ds, h.catalog, model, eval_k, eval_ood.c_str(), eval_label.c_str(),
                         &rep));
    if (!eval_out.empty()) {
      CHECK(forge_report_save(rep, eval_out.c_str(), eval_timings ? 1 : 0));
    }
    const forge_report* list[] = {rep};
    char* table = nullptr;
    CHECK(forge_report_table(list, 1, &table));
    std::fputs(table, stdout);
    forge_string_free(table);
    forge_report_free(rep);
    forge_model_free(model);
    forge_dataset_free(ds);
    return 0;
  }

  if (agent->parsed()) {
    Handles h;
    h.load(agent_catalog, "", false);
    forge_conversations* convs = nullptr;
    CHECK(forge_conversations_load(agent_convs.c_str(), h.catalog, &convs));
    forge_model* model = nullptr;
    CHECK(forge_model_load(agent_model.c_str(), &model));
    forge_report* rep = nullptr;
    CHECK(forge_agent_eval(convs, h.catalog, model, agent_k, agent_label.c_str(), &rep));
    if (!agent_out.empty()) {
      CHECK(forge_report_save(rep, agent_out.c_str(), agent_timings ? 1 : 0));
    }
    const forge_report* list[] = {rep};
    char* table = nullptr;
    CHECK(forge_report_table(list, 1, &table));
    std::fputs(table, stdout);
    forge_string_free(table);
    forge_report_free(rep);
    forge_model_free(model);
    forge_conversations_free(convs);
    return 0;
  }

  if (report->parsed()) {
    std::vector<forge_report*> reps;
    for (const auto& path : report_in) {
      forge_report* r = nullptr;
      CHECK(forge_report_load(path.c_str(), &r));
      reps.push_back(r);
    }
    char* table = nullptr;
    CHECK(forge_report_table(const_cast<const forge_report* const*>(reps.data()), reps.size(),
                             &table));
    std::fputs(table, stdout);
    if (!report_out.empty()) {
      FILE* f = std::fopen(report_out.c_str(), "wb");
      if (!f) {
        std::fprintf(stderr, "forge: cannot write %s\n", report_out.c_str());
        return 1;
      }
      std::fputs(table, f);
      std::fclose(f);
    }
    forge_string_free(table);
    for (auto* r : reps) forge_report_free(r);
    return 0;
  }

  return 2;
}
