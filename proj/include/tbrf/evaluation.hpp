#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "tbrf/block_model.hpp"
#include "tbrf/error.hpp"

namespace tbrf {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;  // gold count
};

// Per-class rows indexed by label_index; `all_label` is the macro average.
struct Metrics {
  std::array<ClassMetrics, kLabelCount> per_class{};
  ClassMetrics all_label;
};

inline double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

// Precision/recall from confusion counts. A class absent from both gold and
// prediction scores 1.0; an empty denominator otherwise scores 0.
inline ClassMetrics class_metrics(long tp, long fp, long fn) {
  ClassMetrics m;
  m.support = tp + fn;
  if (tp + fp + fn == 0) {
    m.precision = m.recall = m.f1 = 1.0;
    return m;
  }
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

template <typename Key>
Metrics classification_report(const std::map<Key, BlockLabel>& pred, const std::map<Key, BlockLabel>& gold) {
  if (pred.size() != gold.size())
    throw KeyMismatchError("prediction has " + std::to_string(pred.size()) + " keys, gold has " +
                           std::to_string(gold.size()));
  std::array<long, kLabelCount> tp{}, fp{}, fn{};
  auto p = pred.begin();
  for (auto g = gold.begin(); g != gold.end(); ++g, ++p) {
    if (p->first != g->first) throw KeyMismatchError("prediction and gold key sets differ");
    const auto pi = label_index(p->second);
    const auto gi = label_index(g->second);
    if (pi == gi) {
      ++tp[gi];
    } else {
      ++fp[pi];
      ++fn[gi];
    }
  }
  Metrics out;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    out.per_class[c] = class_metrics(tp[c], fp[c], fn[c]);
    out.all_label.precision += out.per_class[c].precision / kLabelCount;
    out.all_label.recall += out.per_class[c].recall / kLabelCount;
    out.all_label.f1 += out.per_class[c].f1 / kLabelCount;
    out.all_label.support += out.per_class[c].support;
  }
  return out;
}

inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::max(0.0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
  const double iy = std::max(0.0, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

struct DocumentZones {
  std::string doc_id;
  std::vector<ZoneDetection> zones;
};

struct KindAccuracy {
  long gold = 0;
  long accepted = 0;
  // nullopt when there is no gold zone of this kind.
  std::optional<double> accuracy() const {
    if (gold == 0) return std::nullopt;
    return static_cast<double>(accepted) / static_cast<double>(gold);
  }
};

struct FalseAlarm {
  std::string doc_id;
  ZoneKind kind = ZoneKind::Figure;
  int number = 0;
  double best_iou = 0.0;
};

struct DetectionMetrics {
  KindAccuracy figures;
  KindAccuracy tables;
  std::vector<FalseAlarm> false_alarms;

  const KindAccuracy& of(ZoneKind k) const { return k == ZoneKind::Figure ? figures : tables; }
};

// A gold zone is accepted when a prediction of the same document, kind and
// number lies on the same page with IoU >= threshold. Predictions that accept
// no gold zone are false alarms.
inline DetectionMetrics detection_report(const std::vector<DocumentZones>& pred,
                                         const std::vector<DocumentZones>& gold, double iou_threshold = 0.8) {
  using Key = std::tuple<std::string, ZoneKind, int>;
  std::map<Key, std::vector<const ZoneDetection*>> gold_by_key;
  DetectionMetrics out;
  for (const auto& doc : gold) {
    for (const auto& z : doc.zones) {
      gold_by_key[{doc.doc_id, z.kind, z.number}].push_back(&z);
      (z.kind == ZoneKind::Figure ? out.figures : out.tables).gold += 1;
    }
  }
  std::map<const ZoneDetection*, bool> gold_taken;
  for (const auto& doc : pred) {
    for (const auto& z : doc.zones) {
      double best = 0.0;
      const ZoneDetection* hit = nullptr;
      auto it = gold_by_key.find({doc.doc_id, z.kind, z.number});
      if (it != gold_by_key.end()) {
        for (const ZoneDetection* g : it->second) {
          if (g->page_index != z.page_index || gold_taken[g]) continue;
          const double v = iou(g->zone, z.zone);
          best = std::max(best, v);
          if (v >= iou_threshold && hit == nullptr) hit = g;
        }
      }
      if (hit != nullptr) {
        gold_taken[hit] = true;
        (z.kind == ZoneKind::Figure ? out.figures : out.tables).accepted += 1;
      } else {
        out.false_alarms.push_back({doc.doc_id, z.kind, z.number, best});
      }
    }
  }
  return out;
}

inline nlohmann::json metrics_json(const Metrics& m) {
  auto row = [](const ClassMetrics& c) {
    return nlohmann::json{{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
  };
  nlohmann::json j;
  for (BlockLabel l : kAllLabels) j[std::string(to_string(l))] = row(m.per_class[label_index(l)]);
  j["all_label"] = row(m.all_label);
  return j;
}

inline nlohmann::json detection_metrics_json(const DetectionMetrics& d) {
  auto kind = [](const KindAccuracy& k) {
    nlohmann::json j{{"gold", k.gold}, {"accepted", k.accepted}};
    auto acc = k.accuracy();
    j["accuracy"] = acc ? nlohmann::json(*acc) : nlohmann::json(nullptr);
    return j;
  };
  nlohmann::json alarms = nlohmann::json::array();
  for (const auto& f : d.false_alarms)
    alarms.push_back({{"doc_id", f.doc_id}, {"kind", to_string(f.kind)}, {"number", f.number}, {"best_iou", f.best_iou}});
  return {{"figure", kind(d.figures)}, {"table", kind(d.tables)}, {"false_alarms", alarms}};
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace detail

// Text table laid out like a validation-result table: one column per label.
inline std::string metrics_table(const Metrics& m) {
  using detail::fmt3;
  using detail::pad;
  std::string out = pad("", 11) + pad("All label", 11) + pad("BodyText", 11) + pad("Supplement", 11) + "Accessory\n";
  auto line = [&](const char* name, auto field) {
    out += pad(name, 11) + pad(fmt3(field(m.all_label)), 11);
    for (std::size_t c = 0; c < kLabelCount; ++c)
      out += pad(fmt3(field(m.per_class[c])), c + 1 < kLabelCount ? 11 : 0);
    out += "\n";
  };
  line("Precision", [](const ClassMetrics& c) { return c.precision; });
  line("Recall", [](const ClassMetrics& c) { return c.recall; });
  line("F1-Score", [](const ClassMetrics& c) { return c.f1; });
  return out;
}

inline std::string detection_table(const DetectionMetrics& d) {
  auto cell = [](const KindAccuracy& k) {
    auto acc = k.accuracy();
    return std::to_string(k.accepted) + "/" + std::to_string(k.gold) + "  " + (acc ? detail::fmt3(*acc) : "n/a");
  };
  return "Accepted Figure  " + cell(d.figures) + "\nAccepted Table   " + cell(d.tables) +
         "\nFalse alarms     " + std::to_string(d.false_alarms.size()) + "\n";
}

}  // namespace tbrf
