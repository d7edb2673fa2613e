#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tbrf {

using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

// Page coordinates in points, origin top-left, y grows downward.
struct BoundingBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double x_center() const { return 0.5 * (x0 + x1); }
  double y_center() const { return 0.5 * (y0 + y1); }

  bool valid() const {
    return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
           std::isfinite(y1) && x0 <= x1 && y0 <= y1;
  }

  bool contains(const BoundingBox& other) const {
    return x0 <= other.x0 && y0 <= other.y0 && x1 >= other.x1 && y1 >= other.y1;
  }

  // Smallest box covering both.
  BoundingBox united(const BoundingBox& other) const {
    return {std::min(x0, other.x0), std::min(y0, other.y0),
            std::max(x1, other.x1), std::max(y1, other.y1)};
  }

  double horizontal_overlap(const BoundingBox& other) const {
    return std::max(0.0, std::min(x1, other.x1) - std::max(x0, other.x0));
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct SpanFontStats {
  std::string font_name;
  double font_size = 0.0;
  long char_count = 0;

  friend bool operator==(const SpanFontStats&, const SpanFontStats&) = default;
};

enum class BlockKind { Text, Image };

struct TextBlock {
  int block_id = 0;
  int page_index = 0;
  BoundingBox bbox;
  BlockKind kind = BlockKind::Text;
  std::string text;
  std::vector<SpanFontStats> spans;
  int reading_order = 0;

  bool is_image() const { return kind == BlockKind::Image; }

  friend bool operator==(const TextBlock&, const TextBlock&) = default;
};

struct Page {
  int page_index = 0;
  double width = 0.0;
  double height = 0.0;
  std::vector<TextBlock> blocks;

  friend bool operator==(const Page&, const Page&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<Page> pages;

  std::size_t block_count() const {
    std::size_t n = 0;
    for (const auto& p : pages) n += p.blocks.size();
    return n;
  }

  const TextBlock* find_block(int block_id) const {
    for (const auto& p : pages)
      for (const auto& b : p.blocks)
        if (b.block_id == block_id) return &b;
    return nullptr;
  }

  const Page* find_page(int page_index) const {
    for (const auto& p : pages)
      if (p.page_index == page_index) return &p;
    return nullptr;
  }

  friend bool operator==(const Document&, const Document&) = default;
};

// Blocks of one page sorted by their assigned reading order.
inline std::vector<const TextBlock*> reading_sequence(const Page& page) {
  std::vector<const TextBlock*> seq;
  seq.reserve(page.blocks.size());
  for (const auto& b : page.blocks) seq.push_back(&b);
  std::stable_sort(seq.begin(), seq.end(), [](const TextBlock* a, const TextBlock* b) {
    if (a->reading_order != b->reading_order) return a->reading_order < b->reading_order;
    return a->block_id < b->block_id;
  });
  return seq;
}

// Whole-document sequence: pages in order, then per-page reading order.
inline std::vector<const TextBlock*> reading_sequence(const Document& doc) {
  std::vector<const Page*> pages;
  for (const auto& p : doc.pages) pages.push_back(&p);
  std::stable_sort(pages.begin(), pages.end(),
                   [](const Page* a, const Page* b) { return a->page_index < b->page_index; });
  std::vector<const TextBlock*> seq;
  for (const Page* p : pages) {
    auto page_seq = reading_sequence(*p);
    seq.insert(seq.end(), page_seq.begin(), page_seq.end());
  }
  return seq;
}

enum class BlockLabel { BodyText = 0, Supplement = 1, Accessory = 2 };

inline constexpr std::size_t kLabelCount = 3;
inline constexpr BlockLabel kAllLabels[kLabelCount] = {BlockLabel::BodyText, BlockLabel::Supplement,
                                                       BlockLabel::Accessory};

inline std::string_view to_string(BlockLabel label) {
  switch (label) {
    case BlockLabel::BodyText: return "BodyText";
    case BlockLabel::Supplement: return "Supplement";
    case BlockLabel::Accessory: return "Accessory";
  }
  return "?";
}

inline std::optional<BlockLabel> parse_label(std::string_view s) {
  for (BlockLabel l : kAllLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

inline std::size_t label_index(BlockLabel label) { return static_cast<std::size_t>(label); }

// Labels keyed by block id.
using LabelMap = std::map<int, BlockLabel>;

enum class ZoneKind { Figure, Table };

inline std::string_view to_string(ZoneKind kind) {
  return kind == ZoneKind::Figure ? "figure" : "table";
}

inline std::optional<ZoneKind> parse_zone_kind(std::string_view s) {
  if (s == "figure") return ZoneKind::Figure;
  if (s == "table") return ZoneKind::Table;
  return std::nullopt;
}

struct ZoneDetection {
  ZoneKind kind = ZoneKind::Figure;
  int number = 0;
  int page_index = 0;
  int caption_block_id = -1;
  BoundingBox zone;
  std::vector<int> member_block_ids;
  // Set when no supplement run could be attached to the caption.
  bool flagged = false;

  friend bool operator==(const ZoneDetection&, const ZoneDetection&) = default;
};

}  // namespace tbrf
