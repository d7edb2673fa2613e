#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

#include <json.hpp>

#include "tbrf/block_model.hpp"
#include "tbrf/config.hpp"
#include "tbrf/error.hpp"

namespace tbrf {

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key + ": missing field");
  return *it;
}

inline double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected number");
  return v.get<double>();
}

inline long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path + ": expected integer");
  return v.get<long long>();
}

inline const std::string& as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path + ": expected string");
  return v.get_ref<const std::string&>();
}

inline const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path + ": expected array");
  return v;
}

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace detail

// Parse and validate a block dump. Text blocks without text or spans are
// dropped (reported through `warnings`); blocks without a `reading_order`
// receive their position in the page's block list.
inline Document parse_block_dump(std::string_view bytes, Warnings* warnings = nullptr) {
  using detail::json;
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: invalid JSON: ") + e.what());
  }

  Document doc;
  doc.doc_id = detail::as_string(detail::require(root, "doc_id", "$"), "$.doc_id");
  const json& pages = detail::as_array(detail::require(root, "pages", "$"), "$.pages");

  std::set<int> seen_ids;
  std::set<int> seen_pages;
  for (std::size_t pi = 0; pi < pages.size(); ++pi) {
    const std::string ppath = "$.pages[" + std::to_string(pi) + "]";
    const json& pj = pages[pi];
    Page page;
    page.page_index = static_cast<int>(
        detail::as_integer(detail::require(pj, "page_index", ppath), ppath + ".page_index"));
    if (page.page_index < 0) throw SchemaError(ppath + ".page_index: must be >= 0");
    if (!seen_pages.insert(page.page_index).second)
      throw SchemaError(ppath + ".page_index: duplicate page " + std::to_string(page.page_index));
    page.width = detail::as_number(detail::require(pj, "width", ppath), ppath + ".width");
    page.height = detail::as_number(detail::require(pj, "height", ppath), ppath + ".height");
    if (!(page.width > 0.0) || !(page.height > 0.0) || !std::isfinite(page.width) ||
        !std::isfinite(page.height))
      throw GeometryError(ppath + ": page size must be positive and finite");

    const json& blocks = detail::as_array(detail::require(pj, "blocks", ppath), ppath + ".blocks");
    std::size_t with_order = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const std::string bpath = ppath + ".blocks[" + std::to_string(bi) + "]";
      const json& bj = blocks[bi];
      TextBlock block;
      block.page_index = page.page_index;
      block.block_id = static_cast<int>(
          detail::as_integer(detail::require(bj, "block_id", bpath), bpath + ".block_id"));
      const std::string& kind = detail::as_string(detail::require(bj, "kind", bpath), bpath + ".kind");
      if (kind == "text") {
        block.kind = BlockKind::Text;
      } else if (kind == "image") {
        block.kind = BlockKind::Image;
      } else {
        throw SchemaError(bpath + ".kind: expected \"text\" or \"image\", got \"" + kind + "\"");
      }

      const json& bbox = detail::as_array(detail::require(bj, "bbox", bpath), bpath + ".bbox");
      if (bbox.size() != 4) throw SchemaError(bpath + ".bbox: expected 4 numbers");
      double c[4];
      for (std::size_t k = 0; k < 4; ++k)
        c[k] = detail::as_number(bbox[k], bpath + ".bbox[" + std::to_string(k) + "]");
      block.bbox = {c[0], c[1], c[2], c[3]};
      const std::string id = std::to_string(block.block_id);
      if (!block.bbox.valid())
        throw GeometryError("block " + id + " (" + bpath + "): malformed bbox, need finite x0<=x1, y0<=y1");
      if (block.bbox.x0 < 0.0 || block.bbox.y0 < 0.0) {
        warn(warnings, "block " + id + ": negative coordinates clamped to 0");
        block.bbox.x0 = std::max(0.0, block.bbox.x0);
        block.bbox.y0 = std::max(0.0, block.bbox.y0);
        block.bbox.x1 = std::max(0.0, block.bbox.x1);
        block.bbox.y1 = std::max(0.0, block.bbox.y1);
      }
      if (!(block.bbox.area() > 0.0))
        throw GeometryError("block " + id + " (" + bpath + "): zero-area bbox");

      if (bj.contains("text")) block.text = detail::as_string(bj.at("text"), bpath + ".text");
      else if (block.kind == BlockKind::Text) throw SchemaError(bpath + ".text: missing field");

      if (bj.contains("spans")) {
        const json& spans = detail::as_array(bj.at("spans"), bpath + ".spans");
        for (std::size_t si = 0; si < spans.size(); ++si) {
          const std::string spath = bpath + ".spans[" + std::to_string(si) + "]";
          SpanFontStats span;
          span.font_name = detail::as_string(detail::require(spans[si], "font", spath), spath + ".font");
          span.font_size = detail::as_number(detail::require(spans[si], "size", spath), spath + ".size");
          span.char_count = static_cast<long>(
              detail::as_integer(detail::require(spans[si], "chars", spath), spath + ".chars"));
          if (!(span.font_size > 0.0) || !std::isfinite(span.font_size))
            throw SchemaError(spath + ".size: must be positive");
          if (span.char_count < 0) throw SchemaError(spath + ".chars: must be >= 0");
          if (span.char_count == 0) continue;
          block.spans.push_back(std::move(span));
        }
      } else if (block.kind == BlockKind::Text) {
        throw SchemaError(bpath + ".spans: missing field");
      }

      if (bj.contains("reading_order")) {
        block.reading_order = static_cast<int>(
            detail::as_integer(bj.at("reading_order"), bpath + ".reading_order"));
        ++with_order;
      } else {
        block.reading_order = static_cast<int>(page.blocks.size());
      }

      if (!seen_ids.insert(block.block_id).second)
        throw SchemaError(bpath + ".block_id: duplicate block id " + id);

      if (block.kind == BlockKind::Image && !block.spans.empty()) {
        warn(warnings, "block " + id + ": spans on image block ignored");
        block.spans.clear();
      }
      if (block.kind == BlockKind::Text && (block.spans.empty() || detail::is_blank(block.text))) {
        warn(warnings, "block " + id + ": text block without text or spans dropped");
        if (bj.contains("reading_order")) --with_order;
        continue;
      }
      page.blocks.push_back(std::move(block));
    }

    if (with_order != 0) {
      if (with_order != page.blocks.size())
        throw SchemaError(ppath + ": reading_order must be present on all blocks or none");
      // Renumber densely; the relative order given in the dump is kept.
      std::vector<TextBlock*> seq;
      for (auto& b : page.blocks) seq.push_back(&b);
      std::stable_sort(seq.begin(), seq.end(), [](const TextBlock* a, const TextBlock* b) {
        return a->reading_order < b->reading_order;
      });
      for (std::size_t k = 1; k < seq.size(); ++k)
        if (seq[k]->reading_order == seq[k - 1]->reading_order)
          throw SchemaError(ppath + ": duplicate reading_order " + std::to_string(seq[k]->reading_order));
      for (std::size_t k = 0; k < seq.size(); ++k) seq[k]->reading_order = static_cast<int>(k);
    } else {
      for (std::size_t k = 0; k < page.blocks.size(); ++k)
        page.blocks[k].reading_order = static_cast<int>(k);
    }
    doc.pages.push_back(std::move(page));
  }
  return doc;
}

inline nlohmann::json block_dump_json(const Document& doc) {
  using nlohmann::json;
  json pages = json::array();
  for (const auto& page : doc.pages) {
    json blocks = json::array();
    for (const auto& b : page.blocks) {
      json spans = json::array();
      for (const auto& s : b.spans)
        spans.push_back({{"font", s.font_name}, {"size", s.font_size}, {"chars", s.char_count}});
      blocks.push_back({{"block_id", b.block_id},
                        {"kind", b.is_image() ? "image" : "text"},
                        {"bbox", {b.bbox.x0, b.bbox.y0, b.bbox.x1, b.bbox.y1}},
                        {"text", b.text},
                        {"spans", std::move(spans)},
                        {"reading_order", b.reading_order}});
    }
    pages.push_back({{"page_index", page.page_index},
                     {"width", page.width},
                     {"height", page.height},
                     {"blocks", std::move(blocks)}});
  }
  return {{"doc_id", doc.doc_id}, {"pages", std::move(pages)}};
}

inline std::string serialize_block_dump(const Document& doc) {
  return block_dump_json(doc).dump(1) + "\n";
}

inline bool is_single_column(const Page& page, const ReadingOrderConfig& cfg = {}) {
  double total = 0.0;
  double wide = 0.0;
  for (const auto& b : page.blocks) {
    if (b.is_image()) continue;
    total += b.bbox.width();
    if (b.bbox.width() > cfg.wide_fraction * page.width) wide += b.bbox.width();
  }
  if (total <= 0.0) return true;
  return wide > cfg.wide_share * total;
}

// 0 for the left (or only) column, 1 for the right column.
inline int column_of(const Page& page, const TextBlock& block, bool single_column) {
  if (single_column) return 0;
  return block.bbox.x_center() < page.width / 2.0 ? 0 : 1;
}

// Column-major order on two-column pages, top-to-bottom on single-column
// pages; y0 then x0 within a column.
inline Document assign_reading_order(Document doc, const ReadingOrderConfig& cfg = {}) {
  for (auto& page : doc.pages) {
    const bool single = is_single_column(page, cfg);
    std::vector<TextBlock*> seq;
    for (auto& b : page.blocks) seq.push_back(&b);
    auto key = [&](const TextBlock* b) {
      return std::make_tuple(column_of(page, *b, single), b->bbox.y0, b->bbox.x0, b->block_id);
    };
    std::sort(seq.begin(), seq.end(),
              [&](const TextBlock* a, const TextBlock* b) { return key(a) < key(b); });
    for (std::size_t k = 0; k < seq.size(); ++k) seq[k]->reading_order = static_cast<int>(k);
  }
  return doc;
}

}  // namespace tbrf
