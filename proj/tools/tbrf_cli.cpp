// tbrf: command-line driver for the text-block refinement pipeline.
//
// Stages exchange only files: block dumps (JSON), feature/dataset rows
// (JSONL), models (JSON), labels (JSON) and zone detections (JSON).
// Exit codes: 0 ok, 1 domain error, 2 usage error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbrf/classifier.hpp"
#include "tbrf/config.hpp"
#include "tbrf/encoder.hpp"
#include "tbrf/evaluation.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/io.hpp"
#include "tbrf/pipeline.hpp"
#include "tbrf/report.hpp"
#include "tbrf/rules.hpp"
#include "tbrf/synth.hpp"

namespace fs = std::filesystem;
using namespace tbrf;

namespace {

struct Globals {
  std::string config_path;
  unsigned jobs = 1;
};

Config resolve_config(const Globals& g) {
  if (!g.config_path.empty()) return load_config(g.config_path);
  if (const char* env = std::getenv("TBRF_CONFIG"); env != nullptr && *env != '\0') return load_config(env);
  return {};
}

std::mutex g_stderr_mutex;

void print_warnings(const Warnings& warnings, const std::string& where) {
  std::lock_guard lock(g_stderr_mutex);
  for (const auto& w : warnings) std::cerr << "warning: " << (where.empty() ? "" : where + ": ") << w << "\n";
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") std::cout << content;
  else write_file(out_path, content);
}

Document load_document(const std::string& path, const Config& cfg, Warnings* warnings) {
  return assign_reading_order(parse_block_dump(read_file(path), warnings), cfg.reading_order);
}

// Runs `fn(index)` for every input; with several inputs `jobs` threads share
// the work. The first error (by input order) is rethrown.
template <typename Fn>
void for_each_input(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// With one input the output path names a file; with several it names a
// directory receiving <doc_id><suffix>.
std::string output_for(const std::string& out, std::size_t inputs, const std::string& doc_id,
                       const std::string& suffix) {
  if (inputs == 1) return out;
  if (out.empty()) throw ConfigError("-o must name a directory when several inputs are given");
  fs::create_directories(out);
  return (fs::path(out) / (doc_id + suffix)).string();
}

TrainedModel load_model(const std::string& path) { return parse_model(read_file(path)); }

LabelMap labels_for(const Document& doc, const TrainedModel& model, const EncodingContext& ctx) {
  return classify_document(encode_document(doc, ctx), model);
}

SvmHyperparams hyperparams_from(double c, double gamma, double tol, long max_iter, const std::string& scheme) {
  SvmHyperparams hp;
  hp.c = c;
  hp.gamma = gamma;
  hp.tol = tol;
  hp.max_iter = max_iter;
  hp.scheme = scheme == "ovr" ? MulticlassScheme::OneVsRest : MulticlassScheme::OneVsOne;
  return hp;
}

LabeledDataset load_dataset(const std::vector<std::string>& paths) {
  std::vector<FeatureRow> rows;
  for (const auto& p : paths) {
    auto r = read_feature_rows(read_file(p));
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return dataset_from_rows(rows);
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tbrf - text block classification and figure/table zone detection for article PDFs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config with regex/threshold overrides (fallback: $TBRF_CONFIG)");
  app.add_option("--jobs", g.jobs, "Documents processed in parallel")->check(CLI::PositiveNumber);

  std::vector<std::string> inputs;
  std::string out;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a block dump and add reading order");
  ingest->add_option("dump", inputs, "Block dump(s)")->required();
  ingest->add_option("-o,--output", out, "Output file (or directory for several inputs)");

  // encode
  auto* encode = app.add_subcommand("encode", "Encode every block into the 8-feature vector (JSONL)");
  encode->add_option("dump", inputs, "Block dump(s)")->required();
  encode->add_option("-o,--output", out, "features.jsonl (or directory for several inputs)");

  // annotate
  std::vector<std::string> label_files;
  auto* annotate = app.add_subcommand("annotate", "Emit a labeling template from feature rows");
  annotate->add_option("features", inputs, "Feature JSONL file(s)")->required();
  annotate->add_option("--labels", label_files, "Labels files used to fill the template (matched by doc_id)");
  annotate->add_option("-o,--output", out, "Template/dataset JSONL");

  // train
  double c = 100.0, gamma = 0.1, tol = 1e-3;
  long max_iter = 1'000'000;
  std::uint64_t seed = 0;
  std::string scheme = "ovo";
  auto add_svm_flags = [&](CLI::App* cmd) {
    cmd->add_option("--c", c, "Regularization C")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", gamma, "RBF gamma")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "SMO KKT tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "SMO pair-update cap")->check(CLI::PositiveNumber);
    cmd->add_option("--scheme", scheme, "Multiclass scheme")->check(CLI::IsMember({"ovo", "ovr"}));
    cmd->add_option("--seed", seed, "Seed");
  };
  auto* train_cmd = app.add_subcommand("train", "Train the RBF SVM on a labeled dataset");
  train_cmd->add_option("dataset", inputs, "Dataset JSONL file(s)")->required();
  train_cmd->add_option("-o,--output", out, "model.json")->required();
  add_svm_flags(train_cmd);

  // classify
  std::string model_path;
  auto* classify = app.add_subcommand("classify", "Label the blocks of a dump with a trained model");
  classify->add_option("dump", inputs, "Block dump(s)")->required();
  classify->add_option("--model", model_path, "model.json")->required();
  classify->add_option("-o,--output", out, "labels.json (or directory)");

  // detect
  bool include_appendix = false;
  std::string labels_out;
  auto* detect = app.add_subcommand("detect", "Detect figure/table zones");
  detect->add_option("dump", inputs, "Block dump(s)")->required();
  detect->add_option("--model", model_path, "model.json")->required();
  detect->add_option("-o,--output", out, "zones.json (or directory)");
  detect->add_option("--labels-out", labels_out, "Also write the block labels (file or directory)");
  detect->add_flag("--include-appendix", include_appendix, "Also detect zones in the appendix");

  // eval-cls
  std::string pred_path, gold_path;
  auto* eval_cls = app.add_subcommand("eval-cls", "Precision/recall/F1 of predicted labels against gold labels");
  eval_cls->add_option("pred", pred_path, "Predicted labels.json")->required();
  eval_cls->add_option("gold", gold_path, "Gold labels.json")->required();
  eval_cls->add_option("-o,--output", out, "Metrics JSON");

  // eval-det
  std::vector<std::string> pred_files, gold_files;
  std::optional<double> iou_threshold;
  auto* eval_det = app.add_subcommand("eval-det", "Figure/table detection accuracy at an IoU threshold");
  eval_det->add_option("--pred", pred_files, "Predicted zones files")->required();
  eval_det->add_option("--gold", gold_files, "Ground-truth zones files")->required();
  eval_det->add_option("--iou-threshold", iou_threshold, "Acceptance IoU (default 0.8)")->check(CLI::Range(0.0, 1.0));
  eval_det->add_option("-o,--output", out, "Metrics JSON");

  // eval-runs
  std::size_t runs = 100;
  double ratio = 0.9;
  auto* eval_runs = app.add_subcommand("eval-runs", "Repeated stratified split / train / validate runs");
  eval_runs->add_option("dataset", inputs, "Dataset JSONL file(s)")->required();
  eval_runs->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
  eval_runs->add_option("--ratio", ratio, "Training share")->check(CLI::Range(0.0, 1.0));
  eval_runs->add_option("-o,--output", out, "Summary JSON");
  add_svm_flags(eval_runs);

  // report
  std::string labels_path, zones_path;
  auto* report = app.add_subcommand("report", "Static HTML overlay of labels and zones");
  report->add_option("dump", inputs, "Block dump")->required();
  report->add_option("--labels", labels_path, "labels.json");
  report->add_option("--model", model_path, "Classify with this model when --labels is absent");
  report->add_option("--zones", zones_path, "zones.json");
  report->add_option("-o,--output", out, "report.html")->required();

  // synth
  std::size_t docs = 10;
  std::size_t continuous = 0;
  std::string prefix = "synth";
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus: dumps, gold labels, gold zones");
  synth_cmd->add_option("--docs", docs, "Number of documents")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", seed, "Seed of the first document");
  synth_cmd->add_option("--prefix", prefix, "doc_id prefix");
  synth_cmd->add_option("--continuous", continuous, "Documents carrying a stacked table pair");
  synth_cmd->add_option("-o,--output", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\n";
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    const Config cfg = resolve_config(g);

    if (*ingest) {
      for_each_input(inputs.size(), g.jobs, [&](std::size_t k) {
        Warnings w;
        const Document doc = load_document(inputs[k], cfg, &w);
        print_warnings(w, inputs[k]);
        emit(output_for(out, inputs.size(), doc.doc_id, ".json"), serialize_block_dump(doc));
      });
    } else if (*encode) {
      for_each_input(inputs.size(), g.jobs, [&](std::size_t k) {
        Warnings w;
        const Document doc = load_document(inputs[k], cfg, &w);
        const auto encoded = encode_document(doc, &w);
        print_warnings(w, inputs[k]);
        emit(output_for(out, inputs.size(), doc.doc_id, ".features.jsonl"),
             write_feature_rows(feature_rows(doc, encoded)));
      });
    } else if (*annotate) {
      std::map<std::string, LabelMap> gold;
      for (const auto& f : label_files) {
        auto d = parse_labels(read_file(f));
        gold[d.doc_id] = std::move(d.labels);
      }
      std::vector<FeatureRow> rows;
      for (const auto& p : inputs) {
        auto r = read_feature_rows(read_file(p));
        rows.insert(rows.end(), r.begin(), r.end());
      }
      for (auto& r : rows) {
        r.label.reset();
        auto doc = gold.find(r.doc_id);
        if (doc == gold.end()) continue;
        auto it = doc->second.find(r.block_id);
        if (it != doc->second.end()) r.label = it->second;
      }
      emit(out, write_feature_rows(rows));
    } else if (*train_cmd) {
      Warnings w;
      const auto model = train(load_dataset(inputs), hyperparams_from(c, gamma, tol, max_iter, scheme), seed, &w);
      print_warnings(w, "");
      emit(out, serialize_model(model));
    } else if (*classify) {
      const auto model = load_model(model_path);
      for_each_input(inputs.size(), g.jobs, [&](std::size_t k) {
        Warnings w;
        const Document doc = load_document(inputs[k], cfg, &w);
        const auto ctx = compute_context(doc, &w);
        print_warnings(w, inputs[k]);
        emit(output_for(out, inputs.size(), doc.doc_id, ".labels.json"),
             serialize_labels({doc.doc_id, labels_for(doc, model, ctx)}));
      });
    } else if (*detect) {
      const auto model = load_model(model_path);
      Config dcfg = cfg;
      if (include_appendix) dcfg.zones.include_appendix = true;
      const RuleSet rules(dcfg.rules);
      for_each_input(inputs.size(), g.jobs, [&](std::size_t k) {
        Warnings w;
        const Document doc = load_document(inputs[k], dcfg, &w);
        const auto ctx = compute_context(doc, &w);
        const auto labels = labels_for(doc, model, ctx);
        const auto run = detect_document(doc, ctx, labels, dcfg, rules, &w);
        print_warnings(w, inputs[k]);
        emit(output_for(out, inputs.size(), doc.doc_id, ".zones.json"), serialize_zones({doc.doc_id, run.zones}));
        if (!labels_out.empty())
          write_file(output_for(labels_out, inputs.size(), doc.doc_id, ".labels.json"),
                     serialize_labels({doc.doc_id, labels}));
      });
    } else if (*eval_cls) {
      const auto pred = parse_labels(read_file(pred_path));
      const auto gold = parse_labels(read_file(gold_path));
      const auto m = classification_report(pred.labels, gold.labels);
      std::cout << metrics_table(m);
      if (!out.empty()) write_file(out, metrics_json(m).dump(1) + "\n");
    } else if (*eval_det) {
      std::vector<DocumentZones> pred, gold;
      for (const auto& f : pred_files) pred.push_back(parse_zones(read_file(f)));
      for (const auto& f : gold_files) gold.push_back(parse_zones(read_file(f)));
      const auto d = detection_report(pred, gold, iou_threshold.value_or(cfg.eval.iou_threshold));
      std::cout << detection_table(d);
      if (!out.empty()) write_file(out, detection_metrics_json(d).dump(1) + "\n");
    } else if (*eval_runs) {
      const auto summary = repeated_eval(load_dataset(inputs), hyperparams_from(c, gamma, tol, max_iter, scheme),
                                         runs, seed, ratio, g.jobs);
      std::cout << eval_summary_table(summary);
      if (!out.empty()) write_file(out, eval_summary_json(summary).dump(1) + "\n");
    } else if (*report) {
      Warnings w;
      const Document doc = load_document(inputs.front(), cfg, &w);
      LabelMap labels;
      if (!labels_path.empty()) labels = parse_labels(read_file(labels_path)).labels;
      else if (!model_path.empty()) labels = labels_for(doc, load_model(model_path), compute_context(doc, &w));
      std::vector<ZoneDetection> zones;
      if (!zones_path.empty()) zones = parse_zones(read_file(zones_path)).zones;
      print_warnings(w, inputs.front());
      write_file(out, render_overlay_report(doc, labels, zones));
    } else if (*synth_cmd) {
      fs::create_directories(out);
      for (const auto& sd : synth::generate_corpus(docs, seed, prefix, continuous)) {
        const fs::path base = fs::path(out) / sd.doc.doc_id;
        write_file(base.string() + ".json", serialize_block_dump(sd.doc));
        write_file(base.string() + ".labels.json", serialize_labels({sd.doc.doc_id, sd.labels}));
        write_file(base.string() + ".gold.json", serialize_zones({sd.doc.doc_id, sd.gold_zones}));
      }
    }
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    print_error("IoError", e.what());
    return 1;
  }
  return 0;
}
