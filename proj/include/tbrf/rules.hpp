#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tbrf/block_model.hpp"
#include "tbrf/config.hpp"
#include "tbrf/encoder.hpp"
#include "tbrf/error.hpp"

namespace tbrf {

enum class SectionLevel { Main, Sub };

struct SectionTitle {
  int block_id = 0;
  SectionLevel level = SectionLevel::Main;
  std::string number;
  std::string title_text;
};

struct CaptionMatch {
  int block_id = 0;
  int page_index = 0;
  ZoneKind kind = ZoneKind::Figure;
  int number = 0;
  std::string caption_text;

  friend bool operator==(const CaptionMatch&, const CaptionMatch&) = default;
};

// Block ids per domain, each in reading order.
struct DomainSegmentation {
  std::vector<int> basic_info;
  std::vector<int> body;
  std::vector<int> references;
  std::optional<std::vector<int>> appendix;

  bool in_appendix(int block_id) const {
    return appendix && std::find(appendix->begin(), appendix->end(), block_id) != appendix->end();
  }
};

// Compiled form of RuleConfig. Construction throws ConfigError on a bad pattern.
class RuleSet {
 public:
  explicit RuleSet(const RuleConfig& cfg = {})
      : caption_figure_(compile(cfg.caption_figure, "caption_figure", false)),
        caption_table_(compile(cfg.caption_table, "caption_table", false)),
        section_main_(compile(cfg.section_main, "section_main", false)),
        section_sub_(compile(cfg.section_sub, "section_sub", false)),
        abstract_(compile(cfg.marker_abstract, "domain_markers.abstract", true)),
        references_(compile(cfg.marker_references, "domain_markers.references", true)),
        appendix_(compile(cfg.marker_appendix, "domain_markers.appendix", true)) {}

  std::optional<CaptionMatch> match_caption(const TextBlock& block) const {
    if (block.is_image()) return std::nullopt;
    const std::string text = trim_leading(block.text);
    std::smatch m;
    ZoneKind kind;
    if (std::regex_search(text, m, caption_figure_, std::regex_constants::match_continuous)) {
      kind = ZoneKind::Figure;
    } else if (std::regex_search(text, m, caption_table_, std::regex_constants::match_continuous)) {
      kind = ZoneKind::Table;
    } else {
      return std::nullopt;
    }
    auto number = last_number_group(m);
    if (!number || *number <= 0) return std::nullopt;
    return CaptionMatch{block.block_id, block.page_index, kind, *number, text};
  }

  // Numbered heading in a font other than the body font.
  std::optional<SectionTitle> match_section_title(const TextBlock& block, const EncodingContext& ctx) const {
    if (block.is_image()) return std::nullopt;
    auto font = dominant_font(block);
    if (!font || *font == ctx.body_font) return std::nullopt;
    const std::string text = trim_leading(block.text);
    std::smatch m;
    SectionLevel level;
    if (std::regex_search(text, m, section_sub_, std::regex_constants::match_continuous)) {
      level = SectionLevel::Sub;
    } else if (std::regex_search(text, m, section_main_, std::regex_constants::match_continuous)) {
      level = SectionLevel::Main;
    } else {
      return std::nullopt;
    }
    std::string number = m[1].str();
    std::string rest = text.substr(static_cast<std::size_t>(m.position(1) + m.length(1)));
    rest = trim_leading(rest);
    if (auto nl = rest.find('\n'); nl != std::string::npos) rest.resize(nl);
    return SectionTitle{block.block_id, level, std::move(number), std::move(rest)};
  }

  bool is_abstract(const TextBlock& b) const { return marker(b, abstract_); }
  bool is_references(const TextBlock& b) const { return marker(b, references_); }
  bool is_appendix(const TextBlock& b) const { return marker(b, appendix_); }

 private:
  static std::regex compile(const std::string& pattern, const char* key, bool icase) {
    try {
      auto flags = std::regex::ECMAScript;
      if (icase) flags |= std::regex::icase;
      return std::regex(pattern, flags);
    } catch (const std::regex_error& e) {
      throw ConfigError(std::string("regex '") + key + "': " + e.what());
    }
  }

  static std::string trim_leading(const std::string& s) {
    std::size_t k = 0;
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    return s.substr(k);
  }

  // The caption number is the last non-empty all-digit capture group.
  static std::optional<int> last_number_group(const std::smatch& m) {
    for (std::size_t g = m.size(); g-- > 1;) {
      if (!m[g].matched) continue;
      const std::string s = m[g].str();
      if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        return s.size() > 9 ? std::nullopt : std::optional<int>(std::stoi(s));
    }
    return std::nullopt;
  }

  bool marker(const TextBlock& b, const std::regex& re) const {
    if (b.is_image()) return false;
    const std::string text = trim_leading(b.text);
    return std::regex_search(text, re, std::regex_constants::match_continuous);
  }

  std::regex caption_figure_;
  std::regex caption_table_;
  std::regex section_main_;
  std::regex section_sub_;
  std::regex abstract_;
  std::regex references_;
  std::regex appendix_;
};

inline std::optional<CaptionMatch> match_caption(const TextBlock& block, const RuleSet& rules = RuleSet{}) {
  return rules.match_caption(block);
}

inline std::optional<SectionTitle> match_section_title(const TextBlock& block, const EncodingContext& ctx,
                                                       const RuleSet& rules = RuleSet{}) {
  return rules.match_section_title(block, ctx);
}

// Basic info runs up to the first numbered main-section title (searched from
// the Abstract marker when present), body up to the References marker,
// references up to the Appendix marker. Requires reading order.
inline DomainSegmentation segment_domains(const Document& doc, const EncodingContext& ctx,
                                          const RuleSet& rules = RuleSet{}) {
  const auto seq = reading_sequence(doc);
  const std::size_t n = seq.size();

  std::size_t search_from = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (rules.is_abstract(*seq[k])) {
      search_from = k + 1;
      break;
    }
  }
  std::size_t body_start = search_from;
  for (std::size_t k = search_from; k < n; ++k) {
    auto title = rules.match_section_title(*seq[k], ctx);
    if (title && title->level == SectionLevel::Main) {
      body_start = k;
      break;
    }
  }

  std::optional<std::size_t> refs_start;
  for (std::size_t k = body_start; k < n; ++k) {
    if (rules.is_references(*seq[k])) {
      refs_start = k;
      break;
    }
  }
  if (!refs_start) throw DetectError("document '" + doc.doc_id + "': References marker not found");

  std::optional<std::size_t> appendix_start;
  for (std::size_t k = *refs_start + 1; k < n; ++k) {
    if (rules.is_appendix(*seq[k])) {
      appendix_start = k;
      break;
    }
  }

  DomainSegmentation seg;
  const std::size_t refs_end = appendix_start.value_or(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int id = seq[k]->block_id;
    if (k < body_start) seg.basic_info.push_back(id);
    else if (k < *refs_start) seg.body.push_back(id);
    else if (k < refs_end) seg.references.push_back(id);
    else {
      if (!seg.appendix) seg.appendix.emplace();
      seg.appendix->push_back(id);
    }
  }
  return seg;
}

inline std::vector<SectionTitle> find_section_titles(const Document& doc, const EncodingContext& ctx,
                                                     const RuleSet& rules = RuleSet{}) {
  std::vector<SectionTitle> out;
  for (const TextBlock* b : reading_sequence(doc))
    if (auto t = rules.match_section_title(*b, ctx)) out.push_back(std::move(*t));
  return out;
}

// Main numbers must be non-decreasing and sub numbers prefixed by the current
// main number; violations are returned as warnings.
inline Warnings check_section_continuity(const std::vector<SectionTitle>& titles) {
  Warnings out;
  long current_main = -1;
  for (const auto& t : titles) {
    const long main_part = std::stol(t.number.substr(0, t.number.find('.')));
    if (t.level == SectionLevel::Main) {
      if (main_part < current_main)
        out.push_back("block " + std::to_string(t.block_id) + ": main section " + t.number + " follows " +
                      std::to_string(current_main));
      current_main = std::max(current_main, main_part);
    } else if (main_part != current_main) {
      out.push_back("block " + std::to_string(t.block_id) + ": sub-section " + t.number +
                    " outside main section " + std::to_string(current_main));
    }
  }
  return out;
}

struct CaptionScan {
  std::vector<CaptionMatch> captions;    // first occurrence per (kind, number)
  std::vector<CaptionMatch> duplicates;  // later occurrences, flagged
};

// Captions in reading order. Duplicated (kind, number) pairs keep the first
// occurrence.
inline CaptionScan find_captions(const Document& doc, const RuleSet& rules = RuleSet{},
                                 Warnings* warnings = nullptr) {
  CaptionScan scan;
  std::set<std::pair<ZoneKind, int>> seen;
  for (const TextBlock* b : reading_sequence(doc)) {
    auto m = rules.match_caption(*b);
    if (!m) continue;
    if (seen.insert({m->kind, m->number}).second) {
      scan.captions.push_back(std::move(*m));
    } else {
      warn(warnings, "block " + std::to_string(m->block_id) + ": duplicate caption " +
                         std::string(to_string(m->kind)) + " " + std::to_string(m->number) + " ignored");
      scan.duplicates.push_back(std::move(*m));
    }
  }
  return scan;
}

}  // namespace tbrf
