#include <gtest/gtest.h>

#include "tbrf/error.hpp"
#include "tbrf/evaluation.hpp"
#include "tbrf/rng.hpp"

using namespace tbrf;

namespace {

ZoneDetection zone(ZoneKind kind, int number, BoundingBox bb, int page = 0) {
  ZoneDetection z;
  z.kind = kind;
  z.number = number;
  z.zone = bb;
  z.page_index = page;
  return z;
}

}  // namespace

TEST(ClassReport, IdenticalLabelsScoreOne) {
  std::map<int, BlockLabel> gold{{0, BlockLabel::BodyText}, {1, BlockLabel::Supplement}, {2, BlockLabel::Accessory}};
  const auto m = classification_report(gold, gold);
  for (const auto& c : m.per_class) {
    EXPECT_EQ(c.precision, 1.0);
    EXPECT_EQ(c.recall, 1.0);
    EXPECT_EQ(c.f1, 1.0);
  }
  EXPECT_EQ(m.all_label.f1, 1.0);
}

TEST(ClassReport, HandComputedCounts) {
  const auto c = class_metrics(9, 1, 3);
  EXPECT_DOUBLE_EQ(c.precision, 0.9);
  EXPECT_DOUBLE_EQ(c.recall, 0.75);
  EXPECT_NEAR(c.f1, 2 * 0.9 * 0.75 / 1.65, 1e-12);
  EXPECT_NEAR(c.f1, 0.818, 5e-4);
}

TEST(ClassReport, ConfusionFromLabelMaps) {
  // BodyText: 9 correct, 3 predicted as Supplement; Supplement: 1 predicted as BodyText
  std::map<int, BlockLabel> pred, gold;
  int id = 0;
  for (int k = 0; k < 9; ++k, ++id) pred[id] = gold[id] = BlockLabel::BodyText;
  for (int k = 0; k < 3; ++k, ++id) gold[id] = BlockLabel::BodyText, pred[id] = BlockLabel::Supplement;
  gold[id] = BlockLabel::Supplement, pred[id] = BlockLabel::BodyText;
  const auto m = classification_report(pred, gold);
  EXPECT_DOUBLE_EQ(m.per_class[0].precision, 0.9);
  EXPECT_DOUBLE_EQ(m.per_class[0].recall, 0.75);
  EXPECT_EQ(m.per_class[0].support, 12);
}

TEST(ClassReport, F1IsHarmonicMeanAndMacroAverages) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<int, BlockLabel> pred, gold;
    const int n = static_cast<int>(rng.range(1, 60));
    for (int i = 0; i < n; ++i) {
      gold[i] = kAllLabels[rng.below(3)];
      pred[i] = kAllLabels[rng.below(3)];
    }
    const auto m = classification_report(pred, gold);
    double sp = 0, sr = 0, sf = 0;
    for (const auto& c : m.per_class) {
      if (c.precision + c.recall > 0) {
        EXPECT_NEAR(c.f1, 2 * c.precision * c.recall / (c.precision + c.recall), 1e-12);
      }
      sp += c.precision, sr += c.recall, sf += c.f1;
    }
    EXPECT_NEAR(m.all_label.precision, sp / 3, 1e-12);
    EXPECT_NEAR(m.all_label.recall, sr / 3, 1e-12);
    EXPECT_NEAR(m.all_label.f1, sf / 3, 1e-12);
  }
}

TEST(ClassReport, KeyMismatchThrows) {
  std::map<int, BlockLabel> a{{0, BlockLabel::BodyText}}, b{{1, BlockLabel::BodyText}};
  EXPECT_THROW(classification_report(a, b), KeyMismatchError);
  std::map<int, BlockLabel> c{{0, BlockLabel::BodyText}, {1, BlockLabel::BodyText}};
  EXPECT_THROW(classification_report(a, c), KeyMismatchError);
}

TEST(Iou, Examples) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 15, 10}), 50.0 / 150.0);
}

TEST(Detection, ExactPredictionsScoreOne) {
  DocumentZones gold{"d", {zone(ZoneKind::Figure, 1, {10, 10, 100, 100}), zone(ZoneKind::Table, 1, {10, 200, 300, 300})}};
  const auto d = detection_report({gold}, {gold});
  EXPECT_EQ(d.figures.accuracy(), 1.0);
  EXPECT_EQ(d.tables.accuracy(), 1.0);
  EXPECT_TRUE(d.false_alarms.empty());
}

TEST(Detection, ThresholdAndFalseAlarms) {
  DocumentZones gold{"d", {zone(ZoneKind::Figure, 1, {0, 0, 10, 10})}};
  DocumentZones pred{"d", {zone(ZoneKind::Figure, 1, {5, 0, 15, 10})}};
  const auto d = detection_report({pred}, {gold}, 0.8);
  EXPECT_EQ(d.figures.accepted, 0);
  ASSERT_EQ(d.false_alarms.size(), 1u);
  EXPECT_NEAR(d.false_alarms[0].best_iou, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(detection_report({pred}, {gold}, 0.3).figures.accepted, 1);
  EXPECT_FALSE(d.tables.accuracy());
}

TEST(Detection, MatchesBruteForceAndIsOrderInvariant) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DocumentZones> gold, pred;
    for (int doc = 0; doc < 3; ++doc) {
      DocumentZones g{"d" + std::to_string(doc), {}}, p{g.doc_id, {}};
      for (ZoneKind kind : {ZoneKind::Figure, ZoneKind::Table})
        for (int num = 1; num <= 3; ++num) {
          const double x = rng.uniform(0, 300), y = rng.uniform(0, 500);
          const BoundingBox bb{x, y, x + rng.uniform(20, 200), y + rng.uniform(20, 200)};
          if (rng.chance(0.8)) g.zones.push_back(zone(kind, num, bb, 0));
          if (rng.chance(0.8)) {
            const double jx = rng.uniform(-15, 15), jy = rng.uniform(-15, 15);
            const int page = rng.chance(0.1) ? 1 : 0;
            p.zones.push_back(zone(kind, num, {bb.x0 + jx, bb.y0 + jy, bb.x1 + jx, bb.y1 + jy}, page));
          }
        }
      gold.push_back(g);
      pred.push_back(p);
    }
    // brute force over every gold zone
    long expect_fig = 0, expect_tab = 0;
    for (const auto& g : gold)
      for (const auto& gz : g.zones)
        for (const auto& p : pred)
          for (const auto& pz : p.zones)
            if (p.doc_id == g.doc_id && pz.kind == gz.kind && pz.number == gz.number &&
                pz.page_index == gz.page_index && iou(pz.zone, gz.zone) >= 0.8)
              (gz.kind == ZoneKind::Figure ? expect_fig : expect_tab) += 1;
    const auto d = detection_report(pred, gold, 0.8);
    EXPECT_EQ(d.figures.accepted, expect_fig);
    EXPECT_EQ(d.tables.accepted, expect_tab);

    auto shuffled = pred;
    rng.shuffle(shuffled);
    for (auto& p : shuffled) rng.shuffle(p.zones);
    const auto e = detection_report(shuffled, gold, 0.8);
    EXPECT_EQ(e.figures.accepted, d.figures.accepted);
    EXPECT_EQ(e.tables.accepted, d.tables.accepted);
    EXPECT_EQ(e.false_alarms.size(), d.false_alarms.size());
  }
}
