#include <gtest/gtest.h>

#include "tbrf/classifier.hpp"
#include "tbrf/error.hpp"
#include "tbrf/rng.hpp"

using namespace tbrf;

namespace {

LabeledDataset sized(std::array<long, kLabelCount> sizes) {
  LabeledDataset ds;
  int id = 0;
  for (std::size_t c = 0; c < kLabelCount; ++c)
    for (long k = 0; k < sizes[c]; ++k) {
      LabeledRow r;
      r.doc_id = "d";
      r.block_id = id++;
      r.features.fill(static_cast<double>(id) / 1000.0);
      r.label = kAllLabels[c];
      ds.rows.push_back(r);
    }
  return ds;
}

// Three well separated clusters in feature space.
LabeledDataset clusters(std::size_t per_class, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset ds;
  int id = 0;
  const double centers[3][2] = {{1.0, 1.0}, {0.3, 0.5}, {1.0, 0.1}};
  for (std::size_t c = 0; c < kLabelCount; ++c)
    for (std::size_t k = 0; k < per_class; ++k) {
      LabeledRow r;
      r.doc_id = "c";
      r.block_id = id++;
      r.features.fill(1.0);
      r.features[4] = centers[c][0] + 0.02 * rng.normal();
      r.features[5] = centers[c][1] + 0.02 * rng.normal();
      r.features[6] = c == 2 ? 0.0 : 1.0;
      r.label = kAllLabels[c];
      ds.rows.push_back(r);
    }
  return ds;
}

BinaryMachine pair_machine(BlockLabel a, BlockLabel b) {
  BinaryMachine m;
  m.class_a = a;
  m.class_b = b;
  return m;
}

}  // namespace

TEST(Split, StratifiedCountsFor1518Rows) {
  const auto ds = sized({515, 894, 109});
  auto [train_set, validation] = split_dataset(ds, 0.9, 1);
  EXPECT_NEAR(static_cast<double>(train_set.rows.size()), 1366.0, 1.0);
  EXPECT_EQ(train_set.rows.size() + validation.rows.size(), 1518u);
  const auto tc = train_set.class_counts();
  EXPECT_NEAR(tc[0], 0.9 * 515, 1.0);
  EXPECT_NEAR(tc[1], 0.9 * 894, 1.0);
  EXPECT_NEAR(tc[2], 0.9 * 109, 1.0);
}

TEST(Split, HalfOfTwoPerClass) {
  auto [train_set, validation] = split_dataset(sized({2, 2, 2}), 0.5, 9);
  EXPECT_EQ(train_set.class_counts(), (std::array<long, 3>{1, 1, 1}));
  EXPECT_EQ(validation.class_counts(), (std::array<long, 3>{1, 1, 1}));
}

TEST(Split, SameSeedSameSplit) {
  const auto ds = sized({50, 80, 10});
  auto a = split_dataset(ds, 0.9, 5);
  auto b = split_dataset(ds, 0.9, 5);
  EXPECT_EQ(a.first.rows, b.first.rows);
  EXPECT_EQ(a.second.rows, b.second.rows);
  auto c = split_dataset(ds, 0.9, 6);
  EXPECT_NE(a.first.rows, c.first.rows);
}

TEST(Split, SingletonClassCannotBeSplit) { EXPECT_THROW(split_dataset(sized({10, 10, 1}), 0.9, 1), ClassTooSmallError); }

TEST(Train, SingleClassIsRejected) {
  EXPECT_THROW(train(sized({5, 0, 0}), {}, 0), SingleClassError);
}

TEST(Train, NonFiniteFeatureIsRejected) {
  auto ds = sized({3, 3, 0});
  ds.rows[1].features[2] = std::nan("");
  EXPECT_THROW(train(ds, {}, 0), NonFiniteFeatureError);
}

TEST(Predict, SupportVectorsGetTheirTrainingLabel) {
  const auto ds = clusters(15, 2);
  const auto model = train(ds, {}, 0);
  for (const auto& m : model.machines) EXPECT_TRUE(m.converged);
  for (const auto& r : ds.rows) EXPECT_EQ(predict(model, std::span<const double>(r.features)), r.label);
}

TEST(Predict, WrongDimensionThrows) {
  const auto model = train(clusters(5, 2), {}, 0);
  const std::vector<double> x(7, 1.0);
  EXPECT_THROW(predict(model, x), DimensionMismatchError);
}

TEST(Votes, UnanimityIgnoresMagnitudes) {
  using L = BlockLabel;
  const std::vector<BinaryMachine> ms{pair_machine(L::BodyText, L::Supplement), pair_machine(L::BodyText, L::Accessory),
                                      pair_machine(L::Supplement, L::Accessory)};
  // BodyText wins both of its pairs; the third pair is irrelevant
  const std::vector<double> d{0.001, 0.002, 50.0};
  EXPECT_EQ(resolve_votes(ms, d), L::BodyText);
}

TEST(Votes, TieRuleMatchesExhaustiveEvaluation) {
  using L = BlockLabel;
  const std::vector<BinaryMachine> ms{pair_machine(L::BodyText, L::Supplement), pair_machine(L::BodyText, L::Accessory),
                                      pair_machine(L::Supplement, L::Accessory)};
  Rng rng(3);
  int cyclic = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> d(3);
    for (auto& v : d) v = rng.uniform(-2, 2);
    if (trial % 7 == 0) d[rng.below(3)] = 0.0;  // exercise the d == 0 edge
    // votes and summed signed decisions, written out per class
    const int votes[3] = {(d[0] > 0) + (d[1] > 0), (d[0] <= 0) + (d[2] > 0), (d[1] <= 0) + (d[2] <= 0)};
    const double sums[3] = {d[0] + d[1], -d[0] + d[2], -d[1] - d[2]};
    int best = 0;
    for (int c = 1; c < 3; ++c) {
      const bool more_votes = votes[c] > votes[best];
      const bool more_margin = votes[c] == votes[best] && sums[c] > sums[best];
      if (more_votes || more_margin) best = c;
    }
    if (votes[0] == 1 && votes[1] == 1 && votes[2] == 1) ++cyclic;
    EXPECT_EQ(resolve_votes(ms, d), kAllLabels[best]) << d[0] << " " << d[1] << " " << d[2];
  }
  EXPECT_GT(cyclic, 100);
}

TEST(Votes, FullTieFallsBackToLabelOrder) {
  using L = BlockLabel;
  const std::vector<BinaryMachine> ms{pair_machine(L::BodyText, L::Supplement), pair_machine(L::BodyText, L::Accessory),
                                      pair_machine(L::Supplement, L::Accessory)};
  const std::vector<double> d{1.0, -1.0, 1.0};  // 1-1-1 with equal sums
  EXPECT_EQ(resolve_votes(ms, d), L::BodyText);
}

TEST(Model, JsonRoundTripPreservesPredictions) {
  const auto ds = clusters(10, 4);
  const auto model = train(ds, {}, 17);
  const std::string text = serialize_model(model);
  const auto back = parse_model(text);
  EXPECT_EQ(serialize_model(back), text);
  EXPECT_EQ(back.seed, 17u);
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x(kFeatureCount);
    for (auto& v : x) v = rng.uniform(0, 1.5);
    EXPECT_EQ(decision_values(model, x), decision_values(back, x));
  }
}

TEST(Model, SupportVectorOrderDoesNotChangePredictions) {
  const auto ds = clusters(10, 5);
  auto model = train(ds, {}, 0);
  auto shuffled = model;
  Rng rng(1);
  for (auto& m : shuffled.machines) {
    std::vector<std::size_t> idx(m.support_vectors.size());
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    auto sv = m.support_vectors;
    auto co = m.coefficients;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      m.support_vectors[k] = sv[idx[k]];
      m.coefficients[k] = co[idx[k]];
    }
  }
  for (int k = 0; k < 300; ++k) {
    std::vector<double> x(kFeatureCount);
    for (auto& v : x) v = rng.uniform(0, 1.5);
    const auto a = decision_values(model, x);
    const auto b = decision_values(shuffled, x);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    EXPECT_EQ(predict(model, x), predict(shuffled, x));
  }
}

TEST(Model, MalformedFileIsSchemaError) {
  EXPECT_THROW(parse_model("{\"version\": 1}"), SchemaError);
  EXPECT_THROW(parse_model("not json"), SchemaError);
}

TEST(RepeatedEval, SingleRunHasZeroStd) {
  const auto ds = clusters(20, 6);
  const auto s = repeated_eval(ds, {}, 1, 10);
  EXPECT_EQ(s.runs, 1u);
  EXPECT_EQ(s.all_label[2].std, 0.0);
  EXPECT_EQ(s.all_label[2].mean, s.per_run[0].all_label.f1);
}

TEST(RepeatedEval, SeparableCorpusScoresPerfectly) {
  const auto s = repeated_eval(clusters(20, 7), {}, 10, 0);
  for (std::size_t c = 0; c < kLabelCount; ++c) EXPECT_DOUBLE_EQ(s.per_class[c][2].mean, 1.0);
  EXPECT_DOUBLE_EQ(s.all_label[2].mean, 1.0);
}

TEST(RepeatedEval, ThreadsDoNotChangeResults) {
  const auto ds = clusters(20, 8);
  const auto a = eval_summary_json(repeated_eval(ds, {}, 6, 3, 0.9, 1)).dump();
  const auto b = eval_summary_json(repeated_eval(ds, {}, 6, 3, 0.9, 3)).dump();
  EXPECT_EQ(a, b);
}

TEST(RepeatedEval, PopulationStd) {
  const auto ms = mean_std({1.0, 3.0});
  EXPECT_DOUBLE_EQ(ms.mean, 2.0);
  EXPECT_DOUBLE_EQ(ms.std, 1.0);
}

TEST(OneVsRest, SeparableClustersClassified) {
  SvmHyperparams hp;
  hp.scheme = MulticlassScheme::OneVsRest;
  const auto ds = clusters(12, 9);
  const auto model = train(ds, hp, 0);
  EXPECT_EQ(model.machines.size(), 3u);
  for (const auto& r : ds.rows) EXPECT_EQ(predict(model, std::span<const double>(r.features)), r.label);
  EXPECT_EQ(parse_model(serialize_model(model)).hyperparams.scheme, MulticlassScheme::OneVsRest);
}
