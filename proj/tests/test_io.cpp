#include <gtest/gtest.h>

#include "tbrf/config.hpp"
#include "tbrf/error.hpp"
#include "tbrf/io.hpp"

using namespace tbrf;

TEST(Labels, RoundTrip) {
  DocumentLabels d{"doc", {{0, BlockLabel::BodyText}, {4, BlockLabel::Accessory}, {9, BlockLabel::Supplement}}};
  const std::string text = serialize_labels(d);
  const auto back = parse_labels(text);
  EXPECT_EQ(back.doc_id, "doc");
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(serialize_labels(back), text);
}

TEST(Labels, BadInputIsSchemaError) {
  EXPECT_THROW(parse_labels(R"({"doc_id":"d","labels":[{"block_id":0,"label":"Caption"}]})"), SchemaError);
  EXPECT_THROW(parse_labels(R"({"doc_id":"d","labels":[{"block_id":0,"label":"BodyText"},{"block_id":0,"label":"BodyText"}]})"),
               SchemaError);
  EXPECT_THROW(parse_labels(R"({"labels":[]})"), SchemaError);
}

TEST(Zones, RoundTripAndMinimalGold) {
  ZoneDetection z;
  z.kind = ZoneKind::Table;
  z.number = 3;
  z.page_index = 2;
  z.zone = {1.5, 2, 300, 400.25};
  z.caption_block_id = 17;
  z.member_block_ids = {18, 19};
  const std::string text = serialize_zones({"doc", {z}});
  const auto back = parse_zones(text);
  ASSERT_EQ(back.zones.size(), 1u);
  EXPECT_EQ(back.zones[0].zone, z.zone);
  EXPECT_EQ(back.zones[0].member_block_ids, z.member_block_ids);
  EXPECT_EQ(serialize_zones(back), text);

  const auto gold = parse_zones(R"({"doc_id":"g","detections":[{"kind":"figure","number":1,"bbox":[0,0,10,10]}]})");
  EXPECT_EQ(gold.zones[0].kind, ZoneKind::Figure);
  EXPECT_EQ(gold.zones[0].page_index, 0);
  EXPECT_THROW(parse_zones(R"({"doc_id":"g","detections":[{"kind":"chart","number":1,"bbox":[0,0,1,1]}]})"), SchemaError);
}

TEST(Config, OverridesAndValidation) {
  const auto cfg = config_from_json(nlohmann::json::parse(
      R"j({"caption_table":"^TABLE\\s*(\\d+)", "iou_threshold":0.5, "zones":{"gap_factor":2.0}})j"));
  EXPECT_EQ(cfg.rules.caption_table, "^TABLE\\s*(\\d+)");
  EXPECT_EQ(cfg.eval.iou_threshold, 0.5);
  EXPECT_EQ(cfg.zones.gap_factor, 2.0);
  EXPECT_EQ(cfg.rules.caption_figure, RuleConfig{}.caption_figure);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"iou_threshold":"high"})")), ConfigError);
}

TEST(Files, MissingFileIsIoError) { EXPECT_THROW(read_file("/nonexistent/tbrf/file.json"), IoError); }
