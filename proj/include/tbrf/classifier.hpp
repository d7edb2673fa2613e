#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tbrf/block_model.hpp"
#include "tbrf/encoder.hpp"
#include "tbrf/error.hpp"
#include "tbrf/evaluation.hpp"
#include "tbrf/rng.hpp"
#include "tbrf/svm.hpp"

namespace tbrf {

struct LabeledRow {
  std::string doc_id;
  int block_id = 0;
  FeatureArray features{};
  BlockLabel label = BlockLabel::BodyText;

  friend bool operator==(const LabeledRow&, const LabeledRow&) = default;
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;

  std::array<long, kLabelCount> class_counts() const {
    std::array<long, kLabelCount> counts{};
    for (const auto& r : rows) ++counts[label_index(r.label)];
    return counts;
  }
};

// Training rows from feature JSONL rows: image blocks and unlabeled rows are
// skipped.
inline LabeledDataset dataset_from_rows(const std::vector<FeatureRow>& rows) {
  LabeledDataset ds;
  for (const auto& r : rows)
    if (r.label && r.kind == BlockKind::Text) ds.rows.push_back({r.doc_id, r.block_id, r.features, *r.label});
  return ds;
}

enum class MulticlassScheme { OneVsOne, OneVsRest };

struct SvmHyperparams {
  double c = 100.0;
  double gamma = 0.1;
  double tol = 1e-3;
  long max_iter = 1'000'000;
  MulticlassScheme scheme = MulticlassScheme::OneVsOne;
};

// decision(x) = sum_k coefficients[k] * K(sv[k], x) + bias; positive votes class_a.
// class_b is empty for one-vs-rest machines.
struct BinaryMachine {
  BlockLabel class_a = BlockLabel::BodyText;
  std::optional<BlockLabel> class_b;
  std::vector<FeatureArray> support_vectors;
  std::vector<double> coefficients;
  double bias = 0.0;
  long iterations = 0;
  bool converged = true;

  double decision(std::span<const double> x, double gamma) const {
    double sum = bias;
    for (std::size_t k = 0; k < support_vectors.size(); ++k)
      sum += coefficients[k] * rbf_kernel(support_vectors[k], x, gamma);
    return sum;
  }
};

struct TrainedModel {
  int version = 1;
  std::vector<BlockLabel> classes;  // ascending label order
  SvmHyperparams hyperparams;
  std::vector<BinaryMachine> machines;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
};

namespace detail {

inline void validate_dataset(const LabeledDataset& data) {
  std::set<std::pair<std::string, int>> keys;
  for (const auto& r : data.rows) {
    for (double v : r.features)
      if (!std::isfinite(v))
        throw NonFiniteFeatureError("row (" + r.doc_id + ", " + std::to_string(r.block_id) + ") has a non-finite feature");
    if (!keys.insert({r.doc_id, r.block_id}).second)
      throw SchemaError("duplicate dataset row (" + r.doc_id + ", " + std::to_string(r.block_id) + ")");
  }
}

inline BinaryMachine train_machine(const LabeledDataset& data, BlockLabel positive,
                                   std::optional<BlockLabel> negative, const SvmHyperparams& hp) {
  std::vector<FeatureArray> points;
  std::vector<int> y;
  for (const auto& r : data.rows) {
    if (r.label == positive) {
      points.push_back(r.features);
      y.push_back(1);
    } else if (!negative || r.label == *negative) {
      points.push_back(r.features);
      y.push_back(-1);
    }
  }
  const KernelMatrix kernel(points, hp.gamma);
  const BinarySolution sol = solve_smo(kernel, y, {hp.c, hp.tol, hp.max_iter});
  BinaryMachine m;
  m.class_a = positive;
  m.class_b = negative;
  m.bias = sol.bias;
  m.iterations = sol.iterations;
  m.converged = sol.converged;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (sol.alpha[k] <= 0.0) continue;
    m.support_vectors.push_back(points[k]);
    m.coefficients.push_back(sol.alpha[k] * y[k]);
  }
  return m;
}

}  // namespace detail

// One binary machine per class pair (or per class for one-vs-rest). The
// solver is deterministic; the seed is recorded as model metadata.
inline TrainedModel train(const LabeledDataset& data, const SvmHyperparams& hp, std::uint64_t seed,
                          Warnings* warnings = nullptr) {
  if (!(hp.c > 0.0) || !(hp.gamma > 0.0)) throw ConfigError("SVM hyperparameters require c > 0 and gamma > 0");
  detail::validate_dataset(data);
  TrainedModel model;
  model.hyperparams = hp;
  model.seed = seed;
  model.rows = data.rows.size();
  const auto counts = data.class_counts();
  for (BlockLabel l : kAllLabels)
    if (counts[label_index(l)] > 0) model.classes.push_back(l);
  if (model.classes.size() < 2)
    throw SingleClassError("training data contains " + std::to_string(model.classes.size()) +
                           " class(es); at least two are required");

  if (hp.scheme == MulticlassScheme::OneVsOne) {
    for (std::size_t a = 0; a < model.classes.size(); ++a)
      for (std::size_t b = a + 1; b < model.classes.size(); ++b)
        model.machines.push_back(detail::train_machine(data, model.classes[a], model.classes[b], hp));
  } else {
    for (BlockLabel l : model.classes) model.machines.push_back(detail::train_machine(data, l, std::nullopt, hp));
  }
  for (const auto& m : model.machines)
    if (!m.converged)
      warn(warnings, "SMO iteration cap reached for machine " + std::string(to_string(m.class_a)) + " vs " +
                         (m.class_b ? std::string(to_string(*m.class_b)) : std::string("rest")));
  return model;
}

inline std::vector<double> decision_values(const TrainedModel& model, std::span<const double> x) {
  if (x.size() != kFeatureCount)
    throw DimensionMismatchError("expected " + std::to_string(kFeatureCount) + " features, got " +
                                 std::to_string(x.size()));
  std::vector<double> out;
  out.reserve(model.machines.size());
  for (const auto& m : model.machines) out.push_back(m.decision(x, model.hyperparams.gamma));
  return out;
}

// Resolve one-vs-one outputs: majority vote, then the larger summed signed
// decision value, then label order.
inline BlockLabel resolve_votes(const std::vector<BinaryMachine>& machines, std::span<const double> decisions) {
  std::array<int, kLabelCount> votes{};
  std::array<double, kLabelCount> margin{};
  std::array<bool, kLabelCount> present{};
  for (std::size_t k = 0; k < machines.size(); ++k) {
    const auto a = label_index(machines[k].class_a);
    const auto b = label_index(*machines[k].class_b);
    present[a] = present[b] = true;
    margin[a] += decisions[k];
    margin[b] -= decisions[k];
    ++votes[decisions[k] > 0.0 ? a : b];
  }
  std::size_t best = kLabelCount;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    if (!present[c]) continue;
    if (best == kLabelCount || votes[c] > votes[best] || (votes[c] == votes[best] && margin[c] > margin[best]))
      best = c;
  }
  return kAllLabels[best];
}

inline BlockLabel predict(const TrainedModel& model, std::span<const double> x) {
  const auto d = decision_values(model, x);
  if (model.hyperparams.scheme == MulticlassScheme::OneVsOne) return resolve_votes(model.machines, d);
  std::size_t best = 0;
  for (std::size_t k = 1; k < d.size(); ++k)
    if (d[k] > d[best]) best = k;
  return model.machines[best].class_a;
}

inline BlockLabel predict(const TrainedModel& model, const FeatureVector& fv) {
  const auto v = fv.values();
  return predict(model, std::span<const double>(v));
}

inline nlohmann::json model_json(const TrainedModel& model) {
  using nlohmann::json;
  json classes = json::array();
  for (BlockLabel l : model.classes) classes.push_back(to_string(l));
  json machines = json::array();
  for (const auto& m : model.machines) {
    machines.push_back({{"class_a", to_string(m.class_a)},
                        {"class_b", m.class_b ? std::string(to_string(*m.class_b)) : std::string("rest")},
                        {"support_vectors", m.support_vectors},
                        {"coefficients", m.coefficients},
                        {"bias", m.bias},
                        {"iterations", m.iterations},
                        {"converged", m.converged}});
  }
  const auto& hp = model.hyperparams;
  return {{"version", model.version},
          {"classes", classes},
          {"hyperparams",
           {{"c", hp.c},
            {"gamma", hp.gamma},
            {"kernel", "rbf"},
            {"tol", hp.tol},
            {"max_iter", hp.max_iter},
            {"scheme", hp.scheme == MulticlassScheme::OneVsOne ? "ovo" : "ovr"}}},
          {"machines", machines},
          {"metadata", {{"seed", model.seed}, {"rows", model.rows}}}};
}

inline std::string serialize_model(const TrainedModel& model) { return model_json(model).dump(1) + "\n"; }

inline TrainedModel model_from_json(const nlohmann::json& j) {
  auto label = [](const nlohmann::json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path + ": expected label string");
    auto l = parse_label(v.get<std::string>());
    if (!l) throw SchemaError(path + ": unknown label '" + v.get<std::string>() + "'");
    return *l;
  };
  try {
    TrainedModel model;
    model.version = j.at("version").get<int>();
    if (model.version != 1) throw SchemaError("$.version: unsupported model version " + std::to_string(model.version));
    for (std::size_t k = 0; k < j.at("classes").size(); ++k)
      model.classes.push_back(label(j["classes"][k], "$.classes[" + std::to_string(k) + "]"));
    const auto& hp = j.at("hyperparams");
    model.hyperparams.c = hp.at("c").get<double>();
    model.hyperparams.gamma = hp.at("gamma").get<double>();
    model.hyperparams.tol = hp.value("tol", 1e-3);
    model.hyperparams.max_iter = hp.value("max_iter", 1'000'000L);
    if (hp.value("kernel", std::string("rbf")) != "rbf") throw SchemaError("$.hyperparams.kernel: only rbf is supported");
    const std::string scheme = hp.value("scheme", std::string("ovo"));
    if (scheme == "ovo") model.hyperparams.scheme = MulticlassScheme::OneVsOne;
    else if (scheme == "ovr") model.hyperparams.scheme = MulticlassScheme::OneVsRest;
    else throw SchemaError("$.hyperparams.scheme: expected ovo or ovr");
    const auto& machines = j.at("machines");
    for (std::size_t k = 0; k < machines.size(); ++k) {
      const std::string path = "$.machines[" + std::to_string(k) + "]";
      const auto& mj = machines[k];
      BinaryMachine m;
      m.class_a = label(mj.at("class_a"), path + ".class_a");
      if (mj.at("class_b") != "rest") m.class_b = label(mj.at("class_b"), path + ".class_b");
      if (model.hyperparams.scheme == MulticlassScheme::OneVsOne && !m.class_b)
        throw SchemaError(path + ".class_b: one-vs-one machine needs a class");
      m.coefficients = mj.at("coefficients").get<std::vector<double>>();
      for (const auto& sv : mj.at("support_vectors")) {
        if (!sv.is_array() || sv.size() != kFeatureCount)
          throw DimensionMismatchError(path + ".support_vectors: expected rows of " + std::to_string(kFeatureCount));
        m.support_vectors.push_back(sv.get<FeatureArray>());
      }
      if (m.support_vectors.size() != m.coefficients.size())
        throw SchemaError(path + ": support_vectors and coefficients differ in length");
      m.bias = mj.at("bias").get<double>();
      m.iterations = mj.value("iterations", 0L);
      m.converged = mj.value("converged", true);
      model.machines.push_back(std::move(m));
    }
    if (model.machines.empty()) throw SchemaError("$.machines: empty");
    if (j.contains("metadata")) {
      model.seed = j["metadata"].value("seed", std::uint64_t{0});
      model.rows = j["metadata"].value("rows", std::size_t{0});
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("model file: ") + e.what());
  }
}

inline TrainedModel parse_model(const std::string& text) {
  try {
    return model_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("model file: invalid JSON: ") + e.what());
  }
}

// Per-class counts that sum to round(ratio * total): each class gets
// round(ratio * size), then classes with the largest rounding residue absorb
// the difference one row at a time.
inline std::array<long, kLabelCount> stratified_train_counts(const std::array<long, kLabelCount>& sizes, double ratio) {
  std::array<long, kLabelCount> train{};
  long total = 0;
  long assigned = 0;
  std::array<double, kLabelCount> residue{};
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    const double exact = ratio * static_cast<double>(sizes[c]);
    train[c] = std::lround(exact);
    residue[c] = exact - static_cast<double>(train[c]);
    total += sizes[c];
    assigned += train[c];
  }
  const long target = std::lround(ratio * static_cast<double>(total));
  while (assigned != target) {
    const bool up = assigned < target;
    std::size_t pick = kLabelCount;
    for (std::size_t c = 0; c < kLabelCount; ++c) {
      if (sizes[c] == 0) continue;
      if (up && train[c] >= sizes[c]) continue;
      if (!up && train[c] <= 0) continue;
      if (pick == kLabelCount || (up ? residue[c] > residue[pick] : residue[c] < residue[pick])) pick = c;
    }
    if (pick == kLabelCount) break;
    train[pick] += up ? 1 : -1;
    residue[pick] += up ? -1.0 : 1.0;
    assigned += up ? 1 : -1;
  }
  return train;
}

// Stratified split: rows of each class are shuffled with the seed and the
// first stratified_train_counts() rows go to training.
inline std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data, double ratio,
                                                               std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must lie in (0, 1)");
  std::array<std::vector<std::size_t>, kLabelCount> by_class;
  for (std::size_t k = 0; k < data.rows.size(); ++k) by_class[label_index(data.rows[k].label)].push_back(k);
  std::array<long, kLabelCount> sizes{};
  for (std::size_t c = 0; c < kLabelCount; ++c) sizes[c] = static_cast<long>(by_class[c].size());
  const auto train_counts = stratified_train_counts(sizes, ratio);

  Rng rng(seed);
  LabeledDataset train_set, validation;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    if (sizes[c] == 0) continue;
    if (train_counts[c] >= sizes[c] || train_counts[c] <= 0)
      throw ClassTooSmallError("class " + std::string(to_string(kAllLabels[c])) + " with " +
                               std::to_string(sizes[c]) + " rows cannot be split at ratio " + std::to_string(ratio));
    auto idx = by_class[c];
    rng.shuffle(idx);
    for (std::size_t k = 0; k < idx.size(); ++k)
      (static_cast<long>(k) < train_counts[c] ? train_set : validation).rows.push_back(data.rows[idx[k]]);
  }
  return {std::move(train_set), std::move(validation)};
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct EvalSummary {
  std::size_t runs = 0;
  std::vector<Metrics> per_run;
  std::array<std::array<MeanStd, 3>, kLabelCount> per_class{};  // [class][precision, recall, f1]
  std::array<MeanStd, 3> all_label{};
};

inline MeanStd mean_std(const std::vector<double>& v) {
  MeanStd out;
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(v.size()));
  return out;
}

inline Metrics evaluate_model(const TrainedModel& model, const LabeledDataset& validation) {
  std::map<std::pair<std::string, int>, BlockLabel> pred, gold;
  for (const auto& r : validation.rows) {
    gold[{r.doc_id, r.block_id}] = r.label;
    pred[{r.doc_id, r.block_id}] = predict(model, std::span<const double>(r.features));
  }
  return classification_report(pred, gold);
}

inline EvalSummary summarize_runs(std::vector<Metrics> runs) {
  EvalSummary s;
  s.runs = runs.size();
  auto collect = [&](auto field) {
    std::vector<double> v;
    for (const auto& m : runs) v.push_back(field(m));
    return mean_std(v);
  };
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    s.per_class[c][0] = collect([c](const Metrics& m) { return m.per_class[c].precision; });
    s.per_class[c][1] = collect([c](const Metrics& m) { return m.per_class[c].recall; });
    s.per_class[c][2] = collect([c](const Metrics& m) { return m.per_class[c].f1; });
  }
  s.all_label[0] = collect([](const Metrics& m) { return m.all_label.precision; });
  s.all_label[1] = collect([](const Metrics& m) { return m.all_label.recall; });
  s.all_label[2] = collect([](const Metrics& m) { return m.all_label.f1; });
  s.per_run = std::move(runs);
  return s;
}

// Run r splits with seed base_seed + r, trains on the training part and
// scores the validation part. Runs are independent, so `jobs` threads may
// execute them; results are stored by run index.
inline EvalSummary repeated_eval(const LabeledDataset& data, const SvmHyperparams& hp, std::size_t runs,
                                 std::uint64_t base_seed, double ratio = 0.9, unsigned jobs = 1) {
  if (runs == 0) throw ConfigError("runs must be >= 1");
  std::vector<Metrics> results(runs);
  std::vector<std::string> errors(runs);
  auto work = [&](std::size_t r) {
    try {
      const std::uint64_t seed = base_seed + r;
      auto [train_set, validation] = split_dataset(data, ratio, seed);
      const auto model = train(train_set, hp, seed);
      results[r] = evaluate_model(model, validation);
    } catch (const Error& e) {
      errors[r] = e.kind() + "|" + e.what();
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(runs)));
  if (jobs == 1) {
    for (std::size_t r = 0; r < runs; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < runs; r += jobs) work(r);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t r = 0; r < runs; ++r) {
    if (errors[r].empty()) continue;
    const auto bar = errors[r].find('|');
    throw Error(errors[r].substr(0, bar), "run " + std::to_string(r) + ": " + errors[r].substr(bar + 1));
  }
  return summarize_runs(std::move(results));
}

inline nlohmann::json eval_summary_json(const EvalSummary& s) {
  auto ms = [](const std::array<MeanStd, 3>& v) {
    return nlohmann::json{{"precision", {{"mean", v[0].mean}, {"std", v[0].std}}},
                          {"recall", {{"mean", v[1].mean}, {"std", v[1].std}}},
                          {"f1", {{"mean", v[2].mean}, {"std", v[2].std}}}};
  };
  nlohmann::json j{{"runs", s.runs}, {"all_label", ms(s.all_label)}};
  for (BlockLabel l : kAllLabels) j[std::string(to_string(l))] = ms(s.per_class[label_index(l)]);
  return j;
}

inline std::string eval_summary_table(const EvalSummary& s) {
  using detail::fmt3;
  using detail::pad;
  std::string out = "mean over " + std::to_string(s.runs) + " runs (std in parentheses)\n";
  out += pad("", 11) + pad("All label", 17) + pad("BodyText", 17) + pad("Supplement", 17) + "Accessory\n";
  const char* names[3] = {"Precision", "Recall", "F1-Score"};
  for (std::size_t m = 0; m < 3; ++m) {
    out += pad(names[m], 11);
    out += pad(fmt3(s.all_label[m].mean) + " (" + fmt3(s.all_label[m].std) + ")", 17);
    for (std::size_t c = 0; c < kLabelCount; ++c)
      out += pad(fmt3(s.per_class[c][m].mean) + " (" + fmt3(s.per_class[c][m].std) + ")", c + 1 < kLabelCount ? 17 : 0);
    out += "\n";
  }
  return out;
}

}  // namespace tbrf
