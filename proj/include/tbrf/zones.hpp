#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tbrf/block_model.hpp"
#include "tbrf/config.hpp"
#include "tbrf/error.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/rules.hpp"

namespace tbrf {

struct SupplementRun {
  std::vector<int> block_ids;
  BoundingBox frame;
  int column = 0;
  std::size_t first_position = 0;  // positions in the page reading sequence
  std::size_t last_position = 0;
};

inline bool counts_as_supplement(const TextBlock& block, const LabelMap& labels) {
  if (block.is_image()) return true;
  auto it = labels.find(block.block_id);
  return it != labels.end() && it->second == BlockLabel::Supplement;
}

// factor x median vertical gap between reading-order neighbours that are
// both body text in the same column; `fallback` when the page has no such pair.
inline double gap_threshold(const Page& page, const LabelMap& labels, const ZoneConfig& cfg = {},
                            const ReadingOrderConfig& order_cfg = {}) {
  const bool single = is_single_column(page, order_cfg);
  const auto seq = reading_sequence(page);
  auto is_body = [&](const TextBlock* b) {
    auto it = labels.find(b->block_id);
    return !b->is_image() && it != labels.end() && it->second == BlockLabel::BodyText;
  };
  std::vector<double> gaps;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (!is_body(seq[k - 1]) || !is_body(seq[k])) continue;
    if (column_of(page, *seq[k - 1], single) != column_of(page, *seq[k], single)) continue;
    gaps.push_back(std::max(0.0, seq[k]->bbox.y0 - seq[k - 1]->bbox.y1));
  }
  if (gaps.empty()) return cfg.gap_fallback;
  std::sort(gaps.begin(), gaps.end());
  const std::size_t m = gaps.size() / 2;
  const double median = gaps.size() % 2 == 1 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
  return cfg.gap_factor * median;
}

// Maximal runs of reading-order-consecutive supplement blocks (image blocks
// included) in one column. A run breaks at any other block, at a separator
// block (captions, section titles), at a column change, or when the next
// block starts more than `max_gap` below the run's frame.
inline std::vector<SupplementRun> supplement_runs(const Page& page, const LabelMap& labels, double max_gap,
                                                  const std::set<int>& separators = {},
                                                  const ReadingOrderConfig& order_cfg = {}) {
  const bool single = is_single_column(page, order_cfg);
  const auto seq = reading_sequence(page);
  std::vector<SupplementRun> runs;
  std::optional<SupplementRun> current;
  auto flush = [&] {
    if (current) runs.push_back(std::move(*current));
    current.reset();
  };
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const TextBlock& b = *seq[k];
    if (separators.count(b.block_id) != 0 || !counts_as_supplement(b, labels)) {
      flush();
      continue;
    }
    const int col = column_of(page, b, single);
    if (current && (current->column != col || b.bbox.y0 - current->frame.y1 > max_gap)) flush();
    if (!current) {
      current.emplace();
      current->column = col;
      current->frame = b.bbox;
      current->first_position = k;
    }
    current->block_ids.push_back(b.block_id);
    current->frame = current->frame.united(b.bbox);
    current->last_position = k;
  }
  flush();
  return runs;
}

// Prior: the run ending immediately before the caption in reading order;
// Behind: the run starting immediately after it. A run only qualifies when it
// overlaps the caption horizontally.
struct CaptionCandidates {
  std::optional<std::size_t> prior;
  std::optional<std::size_t> behind;
};

inline const TextBlock& caption_block_on_page(const CaptionMatch& caption, const Page& page) {
  for (const auto& b : page.blocks)
    if (b.block_id == caption.block_id) return b;
  throw CaptionNotOnPageError("caption block " + std::to_string(caption.block_id) + " is not on page " +
                              std::to_string(page.page_index));
}

inline CaptionCandidates caption_candidates(const CaptionMatch& caption, const std::vector<SupplementRun>& runs,
                                            const Page& page) {
  const TextBlock& cap = caption_block_on_page(caption, page);
  const auto seq = reading_sequence(page);
  std::size_t pos = 0;
  while (seq[pos]->block_id != cap.block_id) ++pos;
  CaptionCandidates out;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].frame.horizontal_overlap(cap.bbox) <= 0.0) continue;
    if (pos > 0 && runs[r].last_position == pos - 1) out.prior = r;
    if (runs[r].first_position == pos + 1) out.behind = r;
  }
  return out;
}

// Larger horizontal overlap with the caption wins, then larger area, then Prior.
inline std::optional<std::size_t> select_candidate(const TextBlock& caption, const std::vector<SupplementRun>& runs,
                                                   std::optional<std::size_t> prior,
                                                   std::optional<std::size_t> behind) {
  if (!prior) return behind;
  if (!behind) return prior;
  const BoundingBox& p = runs[*prior].frame;
  const BoundingBox& b = runs[*behind].frame;
  const double op = p.horizontal_overlap(caption.bbox);
  const double ob = b.horizontal_overlap(caption.bbox);
  if (op != ob) return op > ob ? prior : behind;
  if (p.area() != b.area()) return p.area() > b.area() ? prior : behind;
  return prior;
}

// Zone frame from member blocks. When the caption block is at least as wide
// as the frame, the frame's x-extent grows to cover the caption's.
inline BoundingBox frame_zone(const std::vector<const TextBlock*>& members, const TextBlock& caption) {
  BoundingBox zone = members.front()->bbox;
  for (const TextBlock* m : members) zone = zone.united(m->bbox);
  if (zone.width() <= caption.bbox.width()) {
    zone.x0 = std::min(zone.x0, caption.bbox.x0);
    zone.x1 = std::max(zone.x1, caption.bbox.x1);
  }
  return zone;
}

namespace detail {

inline ZoneDetection zone_from_run(const CaptionMatch& caption, const TextBlock& cap, const Page& page,
                                   const std::vector<int>& member_ids, Warnings* warnings) {
  ZoneDetection z;
  z.kind = caption.kind;
  z.number = caption.number;
  z.page_index = page.page_index;
  z.caption_block_id = caption.block_id;
  if (member_ids.empty()) {
    z.zone = cap.bbox;
    z.flagged = true;
    warn(warnings, "caption block " + std::to_string(caption.block_id) + " (" + std::string(to_string(caption.kind)) +
                       " " + std::to_string(caption.number) + "): no supplement run found");
    return z;
  }
  std::vector<const TextBlock*> members;
  for (int id : member_ids)
    for (const auto& b : page.blocks)
      if (b.block_id == id) members.push_back(&b);
  z.member_block_ids = member_ids;
  z.zone = frame_zone(members, cap);
  return z;
}

}  // namespace detail

inline ZoneDetection merge_zone_for_caption(const CaptionMatch& caption, const std::vector<SupplementRun>& runs,
                                            const Page& page, Warnings* warnings = nullptr) {
  const TextBlock& cap = caption_block_on_page(caption, page);
  const auto cand = caption_candidates(caption, runs, page);
  const auto pick = select_candidate(cap, runs, cand.prior, cand.behind);
  return detail::zone_from_run(caption, cap, page, pick ? runs[*pick].block_ids : std::vector<int>{}, warnings);
}

struct ZoneOptions {
  ZoneConfig zones;
  ReadingOrderConfig reading_order;
};

// One detection per caption, in the order given. Per page, runs are split
// at every caption block and every block id in `extra_separators`. A run that
// is the only candidate of some caption is taken by it, and captions with two
// candidates then prefer the one not taken that way. Blocks that still end up
// in two zones go to the vertically nearer caption and zones are re-framed.
inline std::vector<ZoneDetection> detect_zones(const Document& doc, const LabelMap& labels,
                                               const std::vector<CaptionMatch>& captions,
                                               const ZoneOptions& opt = {},
                                               const std::set<int>& extra_separators = {},
                                               Warnings* warnings = nullptr) {
  std::vector<ZoneDetection> out(captions.size());
  std::set<int> separators = extra_separators;
  for (const auto& c : captions) separators.insert(c.block_id);

  std::map<int, std::vector<std::size_t>> by_page;
  for (std::size_t k = 0; k < captions.size(); ++k) by_page[captions[k].page_index].push_back(k);

  for (const auto& [page_index, caption_ids] : by_page) {
    const Page* page = doc.find_page(page_index);
    if (page == nullptr)
      throw CaptionNotOnPageError("caption block " + std::to_string(captions[caption_ids.front()].block_id) +
                                  ": page " + std::to_string(page_index) + " not in document");
    const double max_gap = gap_threshold(*page, labels, opt.zones, opt.reading_order);
    const auto runs = supplement_runs(*page, labels, max_gap, separators, opt.reading_order);

    std::vector<CaptionCandidates> cands;
    std::vector<const TextBlock*> caps;
    for (std::size_t k : caption_ids) {
      caps.push_back(&caption_block_on_page(captions[k], *page));
      cands.push_back(caption_candidates(captions[k], runs, *page));
    }
    std::set<std::size_t> sole;
    for (const auto& c : cands) {
      if (c.prior && !c.behind) sole.insert(*c.prior);
      if (c.behind && !c.prior) sole.insert(*c.behind);
    }
    std::vector<std::optional<std::size_t>> chosen(caption_ids.size());
    for (std::size_t k = 0; k < caption_ids.size(); ++k) {
      auto prior = cands[k].prior;
      auto behind = cands[k].behind;
      if (prior && behind) {
        const bool prior_taken = sole.count(*prior) != 0;
        const bool behind_taken = sole.count(*behind) != 0;
        if (prior_taken && !behind_taken) prior.reset();
        else if (behind_taken && !prior_taken) behind.reset();
      }
      chosen[k] = select_candidate(*caps[k], runs, prior, behind);
    }

    // Nearest-caption assignment for blocks claimed more than once.
    auto distance = [](const BoundingBox& block, const BoundingBox& cap) {
      return std::max({0.0, cap.y0 - block.y1, block.y0 - cap.y1});
    };
    std::map<int, std::size_t> owner;
    for (std::size_t k = 0; k < caption_ids.size(); ++k) {
      if (!chosen[k]) continue;
      for (int id : runs[*chosen[k]].block_ids) {
        auto it = owner.find(id);
        if (it == owner.end()) {
          owner[id] = k;
          continue;
        }
        const BoundingBox& bb = doc.find_block(id)->bbox;
        if (distance(bb, caps[k]->bbox) < distance(bb, caps[it->second]->bbox)) it->second = k;
      }
    }
    for (std::size_t k = 0; k < caption_ids.size(); ++k) {
      std::vector<int> members;
      if (chosen[k])
        for (int id : runs[*chosen[k]].block_ids)
          if (owner[id] == k) members.push_back(id);
      out[caption_ids[k]] = detail::zone_from_run(captions[caption_ids[k]], *caps[k], *page, members, warnings);
    }
  }
  return out;
}

}  // namespace tbrf
