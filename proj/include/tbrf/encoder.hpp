#pragma once

#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbrf/block_model.hpp"
#include "tbrf/error.hpp"

namespace tbrf {

inline constexpr std::size_t kFeatureCount = 8;
inline constexpr double kBoundaryEpsilon = 1e-6;

using FeatureArray = std::array<double, kFeatureCount>;

// Font sizes are histogrammed in 0.1 pt buckets.
inline long size_bucket(double size_pt) { return std::lround(size_pt * 10.0); }
inline double bucket_size(long bucket) { return static_cast<double>(bucket) / 10.0; }

struct PageBoundary {
  double left = 0.0;
  double right = 0.0;
  double top = 0.0;
  double bottom = 0.0;
  double page_width = 0.0;
  double page_height = 0.0;
};

struct EncodingContext {
  std::map<int, PageBoundary> boundaries;  // keyed by page_index
  double max_width = 0.0;
  double max_height = 0.0;
  std::string body_font;
  double body_font_size = 0.0;
  std::map<std::string, long> font_char_histogram;
  // Keys are 0.1 pt buckets; only spans in the body font are counted.
  std::map<long, long> size_char_histogram;
};

struct FeatureVector {
  double code_left = 0.0;
  double code_right = 0.0;
  double code_top = 0.0;
  double code_bottom = 0.0;
  double code_width = 0.0;
  double code_height = 0.0;
  double code_ft = 0.0;
  double code_fs = 0.0;

  FeatureArray values() const {
    return {code_left, code_right, code_top, code_bottom, code_width, code_height, code_ft, code_fs};
  }

  static FeatureVector from_values(const FeatureArray& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

namespace detail {

// Argmax of a histogram; std::map iteration order makes the smallest key win ties.
template <typename Key>
std::pair<Key, bool> modal_key(const std::map<Key, long>& hist) {
  Key best{};
  long best_count = -1;
  bool tied = false;
  for (const auto& [key, count] : hist) {
    if (count > best_count) {
      best = key;
      best_count = count;
      tied = false;
    } else if (count == best_count) {
      tied = true;
    }
  }
  return {best, tied};
}

}  // namespace detail

// Char-weighted modal font of a block, or nullopt for blocks without spans.
inline std::optional<std::string> dominant_font(const TextBlock& block) {
  if (block.spans.empty()) return std::nullopt;
  std::map<std::string, long> hist;
  for (const auto& s : block.spans) hist[s.font_name] += s.char_count;
  return detail::modal_key(hist).first;
}

// Char-weighted modal font size of a block (bucketed), or nullopt without spans.
inline std::optional<double> dominant_font_size(const TextBlock& block) {
  if (block.spans.empty()) return std::nullopt;
  std::map<long, long> hist;
  for (const auto& s : block.spans) hist[size_bucket(s.font_size)] += s.char_count;
  return bucket_size(detail::modal_key(hist).first);
}

inline EncodingContext compute_context(const Document& doc, Warnings* warnings = nullptr) {
  EncodingContext ctx;
  bool any_text = false;
  for (const auto& page : doc.pages) {
    if (page.blocks.empty()) continue;
    PageBoundary pb;
    pb.page_width = page.width;
    pb.page_height = page.height;
    pb.left = pb.top = std::numeric_limits<double>::infinity();
    pb.right = pb.bottom = -std::numeric_limits<double>::infinity();
    for (const auto& b : page.blocks) {
      pb.left = std::min(pb.left, b.bbox.x0);
      pb.right = std::max(pb.right, b.bbox.x1);
      pb.top = std::min(pb.top, b.bbox.y0);
      pb.bottom = std::max(pb.bottom, b.bbox.y1);
      ctx.max_width = std::max(ctx.max_width, b.bbox.width());
      ctx.max_height = std::max(ctx.max_height, b.bbox.height());
      if (b.is_image()) continue;
      for (const auto& s : b.spans) {
        ctx.font_char_histogram[s.font_name] += s.char_count;
        any_text = true;
      }
    }
    ctx.boundaries[page.page_index] = pb;
  }
  if (!any_text) throw EmptyDocumentError("document '" + doc.doc_id + "' has no text block with spans");

  auto [font, font_tied] = detail::modal_key(ctx.font_char_histogram);
  if (font_tied)
    warn(warnings, "body font tie broken in favor of '" + font + "'");
  ctx.body_font = font;

  for (const auto& page : doc.pages)
    for (const auto& b : page.blocks)
      if (!b.is_image())
        for (const auto& s : b.spans)
          if (s.font_name == ctx.body_font) ctx.size_char_histogram[size_bucket(s.font_size)] += s.char_count;
  ctx.body_font_size = bucket_size(detail::modal_key(ctx.size_char_histogram).first);
  return ctx;
}

namespace detail {

inline double normalizer(double boundary, double page_extent, const char* axis, const TextBlock& block) {
  if (boundary >= kBoundaryEpsilon) return boundary;
  if (page_extent >= kBoundaryEpsilon) return page_extent;
  throw DegenerateBoundaryError("block " + std::to_string(block.block_id) + ": " + axis +
                                " boundary and page extent are both degenerate");
}

}  // namespace detail

// Boundaries closer to 0 than kBoundaryEpsilon are replaced by the page
// extent on that axis.
inline FeatureVector encode_block(const TextBlock& block, const EncodingContext& ctx) {
  auto it = ctx.boundaries.find(block.page_index);
  if (it == ctx.boundaries.end())
    throw DegenerateBoundaryError("block " + std::to_string(block.block_id) + ": no boundary for page " +
                                  std::to_string(block.page_index));
  const PageBoundary& pb = it->second;
  FeatureVector fv;
  fv.code_left = block.bbox.x0 / detail::normalizer(pb.left, pb.page_width, "left", block);
  fv.code_right = block.bbox.x1 / detail::normalizer(pb.right, pb.page_width, "right", block);
  fv.code_top = block.bbox.y0 / detail::normalizer(pb.top, pb.page_height, "top", block);
  fv.code_bottom = block.bbox.y1 / detail::normalizer(pb.bottom, pb.page_height, "bottom", block);
  fv.code_width = block.bbox.width() / detail::normalizer(ctx.max_width, pb.page_width, "max width", block);
  fv.code_height = block.bbox.height() / detail::normalizer(ctx.max_height, pb.page_height, "max height", block);
  if (block.is_image() || block.spans.empty()) {
    fv.code_ft = 0.0;
    fv.code_fs = 1.0;
    return fv;
  }
  fv.code_ft = (*dominant_font(block) == ctx.body_font) ? 1.0 : 0.0;
  fv.code_fs = *dominant_font_size(block) / ctx.body_font_size;
  return fv;
}

struct EncodedBlock {
  int block_id = 0;
  BlockKind kind = BlockKind::Text;
  FeatureVector features;

  friend bool operator==(const EncodedBlock&, const EncodedBlock&) = default;
};

inline std::vector<EncodedBlock> encode_document(const Document& doc, const EncodingContext& ctx) {
  std::vector<EncodedBlock> out;
  for (const TextBlock* b : reading_sequence(doc)) out.push_back({b->block_id, b->kind, encode_block(*b, ctx)});
  return out;
}

// Empty documents (no blocks at all) encode to an empty list.
inline std::vector<EncodedBlock> encode_document(const Document& doc, Warnings* warnings = nullptr) {
  if (doc.block_count() == 0) return {};
  return encode_document(doc, compute_context(doc, warnings));
}

// One JSONL row of the feature matrix / training dataset.
struct FeatureRow {
  std::string doc_id;
  int block_id = 0;
  BlockKind kind = BlockKind::Text;
  FeatureArray features{};
  std::optional<BlockLabel> label;

  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

inline nlohmann::json feature_row_json(const FeatureRow& row) {
  nlohmann::json j;
  j["doc_id"] = row.doc_id;
  j["block_id"] = row.block_id;
  j["kind"] = row.kind == BlockKind::Image ? "image" : "text";
  j["features"] = row.features;
  j["label"] = row.label ? nlohmann::json(std::string(to_string(*row.label))) : nlohmann::json(nullptr);
  return j;
}

inline std::string write_feature_rows(const std::vector<FeatureRow>& rows) {
  std::string out;
  for (const auto& r : rows) out += feature_row_json(r).dump() + "\n";
  return out;
}

inline std::vector<FeatureRow> feature_rows(const Document& doc, const std::vector<EncodedBlock>& encoded) {
  std::vector<FeatureRow> rows;
  rows.reserve(encoded.size());
  for (const auto& e : encoded) rows.push_back({doc.doc_id, e.block_id, e.kind, e.features.values(), std::nullopt});
  return rows;
}

// `doc_id` and `kind` are optional on read (defaults "" and text).
inline std::vector<FeatureRow> read_feature_rows(std::istream& in) {
  std::vector<FeatureRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(where + ": invalid JSON: " + e.what());
    }
    FeatureRow row;
    if (!j.is_object() || !j.contains("block_id") || !j["block_id"].is_number_integer())
      throw SchemaError(where + ": $.block_id: missing or not an integer");
    row.block_id = j["block_id"].get<int>();
    if (j.contains("doc_id")) {
      if (!j["doc_id"].is_string()) throw SchemaError(where + ": $.doc_id: expected string");
      row.doc_id = j["doc_id"].get<std::string>();
    }
    if (j.contains("kind")) {
      if (j["kind"] == "image") row.kind = BlockKind::Image;
      else if (j["kind"] != "text") throw SchemaError(where + ": $.kind: expected \"text\" or \"image\"");
    }
    if (!j.contains("features") || !j["features"].is_array())
      throw SchemaError(where + ": $.features: missing or not an array");
    if (j["features"].size() != kFeatureCount)
      throw DimensionMismatchError(where + ": expected " + std::to_string(kFeatureCount) + " features, got " +
                                   std::to_string(j["features"].size()));
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      if (!j["features"][k].is_number())
        throw SchemaError(where + ": $.features[" + std::to_string(k) + "]: expected number");
      row.features[k] = j["features"][k].get<double>();
    }
    if (j.contains("label") && !j["label"].is_null()) {
      if (!j["label"].is_string()) throw SchemaError(where + ": $.label: expected string or null");
      auto label = parse_label(j["label"].get<std::string>());
      if (!label) throw SchemaError(where + ": $.label: unknown label '" + j["label"].get<std::string>() + "'");
      row.label = *label;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<FeatureRow> read_feature_rows(const std::string& text) {
  std::istringstream in(text);
  return read_feature_rows(in);
}

}  // namespace tbrf
