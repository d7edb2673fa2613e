#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "tbrf/encoder.hpp"
#include "tbrf/error.hpp"
#include "tbrf/synth.hpp"

using namespace tbrf;

namespace {

TextBlock text_block(int id, BoundingBox bb, std::vector<SpanFontStats> spans) {
  TextBlock b;
  b.block_id = id;
  b.bbox = bb;
  b.text = "text";
  b.spans = std::move(spans);
  return b;
}

Document single_page(std::vector<TextBlock> blocks) {
  Document doc;
  doc.doc_id = "e";
  Page p;
  p.width = 612;
  p.height = 792;
  p.blocks = std::move(blocks);
  doc.pages.push_back(p);
  return assign_reading_order(doc);
}

// Independent recount of the char histograms straight from the dump JSON.
struct Recount {
  std::map<std::string, long> fonts;
  std::map<long, long> body_sizes;
  std::string body_font;
  double body_size = 0;
};

Recount recount(const nlohmann::json& dump) {
  Recount r;
  for (const auto& p : dump["pages"])
    for (const auto& b : p["blocks"])
      if (b["kind"] == "text")
        for (const auto& s : b["spans"]) r.fonts[s["font"].get<std::string>()] += s["chars"].get<long>();
  long best = -1;
  for (const auto& [f, n] : r.fonts)
    if (n > best) best = n, r.body_font = f;
  for (const auto& p : dump["pages"])
    for (const auto& b : p["blocks"])
      if (b["kind"] == "text")
        for (const auto& s : b["spans"])
          if (s["font"] == r.body_font)
            r.body_sizes[std::lround(s["size"].get<double>() * 10)] += s["chars"].get<long>();
  best = -1;
  for (const auto& [sz, n] : r.body_sizes)
    if (n > best) best = n, r.body_size = sz / 10.0;
  return r;
}

}  // namespace

TEST(Context, UniqueBodyFont) {
  const Document doc = single_page({text_block(0, {72, 72, 300, 100}, {{"NimbusRomNo9L", 10, 900}}),
                                    text_block(1, {72, 110, 300, 130}, {{"Helvetica", 8, 100}})});
  const auto ctx = compute_context(doc);
  EXPECT_EQ(ctx.body_font, "NimbusRomNo9L");
  EXPECT_EQ(ctx.body_font_size, 10.0);
}

TEST(Context, FontTieBrokenLexicographicallyWithWarning) {
  const Document doc = single_page({text_block(0, {72, 72, 300, 100}, {{"Zeta", 10, 50}}),
                                    text_block(1, {72, 110, 300, 130}, {{"Alpha", 9, 50}})});
  Warnings w;
  const auto ctx = compute_context(doc, &w);
  EXPECT_EQ(ctx.body_font, "Alpha");
  EXPECT_EQ(w.size(), 1u);
}

TEST(Context, EmptyDocumentThrows) {
  Document doc;
  EXPECT_THROW(compute_context(doc), EmptyDocumentError);
  EXPECT_TRUE(encode_document(doc).empty());
}

TEST(Context, FixtureBodyFontSizeMatchesRecount) {
  const std::string raw = read_file(test::fixture_path("synth_2col.json"));
  const auto expect = recount(nlohmann::json::parse(raw));
  const auto ctx = compute_context(test::load_fixture());
  EXPECT_EQ(ctx.body_font, expect.body_font);
  EXPECT_DOUBLE_EQ(ctx.body_font_size, expect.body_size);
  EXPECT_DOUBLE_EQ(ctx.body_font_size, 10.0);  // declared body size of the fixture
}

TEST(Encoder, HandComputedCodes) {
  // boundary_left = 72 from block 0; block 1 at x0 = 90 -> 90 / 72 = 1.25
  const Document doc = single_page({text_block(0, {72, 72, 540, 100}, {{"Body", 10, 500}}),
                                    text_block(1, {90, 110, 300, 130}, {{"Body", 12.5, 40}})});
  const auto ctx = compute_context(doc);
  const auto f0 = encode_block(doc.pages[0].blocks[0], ctx);
  const auto f1 = encode_block(doc.pages[0].blocks[1], ctx);
  EXPECT_DOUBLE_EQ(f0.code_left, 1.0);
  EXPECT_DOUBLE_EQ(f0.code_width, 1.0);  // widest block
  EXPECT_DOUBLE_EQ(f0.code_ft, 1.0);
  EXPECT_DOUBLE_EQ(f0.code_fs, 1.0);
  EXPECT_DOUBLE_EQ(f1.code_left, 1.25);
  EXPECT_DOUBLE_EQ(f1.code_right, 300.0 / 540.0);
  EXPECT_DOUBLE_EQ(f1.code_bottom, 1.0);
  EXPECT_DOUBLE_EQ(f1.code_height, 20.0 / 28.0);
  EXPECT_DOUBLE_EQ(f1.code_fs, 1.25);
}

TEST(Encoder, FontCodeUsesDominantFont) {
  const Document doc = single_page({text_block(0, {72, 72, 540, 100}, {{"Body", 10, 500}}),
                                    text_block(1, {72, 110, 300, 130}, {{"Body", 10, 5}, {"Math", 10, 30}})});
  const auto ctx = compute_context(doc);
  EXPECT_EQ(encode_block(doc.pages[0].blocks[1], ctx).code_ft, 0.0);
}

TEST(Encoder, FixtureInvariants) {
  const Document doc = test::load_fixture();
  const auto enc = encode_document(doc);
  ASSERT_EQ(enc.size(), 14u);
  double min_left = 1e9, max_right = 0;
  for (const auto& e : enc) {
    const auto& f = e.features;
    EXPECT_GT(f.code_width, 0.0);
    EXPECT_LE(f.code_width, 1.0);
    EXPECT_GT(f.code_height, 0.0);
    EXPECT_LE(f.code_height, 1.0);
    EXPECT_TRUE(f.code_ft == 0.0 || f.code_ft == 1.0);
    EXPECT_GT(f.code_fs, 0.0);
    min_left = std::min(min_left, f.code_left);
    max_right = std::max(max_right, f.code_right);
  }
  EXPECT_DOUBLE_EQ(min_left, 1.0);
  EXPECT_DOUBLE_EQ(max_right, 1.0);
}

TEST(Encoder, HistogramConservation) {
  for (const auto& sd : synth::generate_corpus(3, 900, "h", 0)) {
    const auto expect = recount(block_dump_json(sd.doc));
    const auto ctx = compute_context(sd.doc);
    EXPECT_EQ(ctx.font_char_histogram, expect.fonts);
    EXPECT_EQ(ctx.size_char_histogram, expect.body_sizes);
    EXPECT_EQ(ctx.body_font, sd.body_font);
    EXPECT_DOUBLE_EQ(ctx.body_font_size, sd.body_font_size);
  }
}

TEST(Encoder, Deterministic) {
  const Document doc = test::load_fixture();
  EXPECT_EQ(encode_document(doc), encode_document(doc));
}

TEST(Encoder, ZeroLeftBoundaryFallsBackToPageWidth) {
  const Document doc = single_page({text_block(0, {0, 72, 306, 100}, {{"Body", 10, 500}})});
  const auto f = encode_block(doc.pages[0].blocks[0], compute_context(doc));
  EXPECT_DOUBLE_EQ(f.code_left, 0.0);
}

TEST(FeatureRows, JsonlRoundTrip) {
  const Document doc = test::load_fixture();
  auto rows = feature_rows(doc, encode_document(doc));
  rows[3].label = BlockLabel::BodyText;
  const std::string text = write_feature_rows(rows);
  const auto back = read_feature_rows(text);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(write_feature_rows(back), text);
  EXPECT_EQ(back[3].label, BlockLabel::BodyText);
  EXPECT_FALSE(back[0].label);
}

TEST(FeatureRows, WrongWidthIsDimensionMismatch) {
  EXPECT_THROW(read_feature_rows(std::string(R"({"block_id":0,"features":[1,2,3],"label":null})") + "\n"),
               DimensionMismatchError);
}
