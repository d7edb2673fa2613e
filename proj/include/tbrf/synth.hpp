#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tbrf/block_model.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/rng.hpp"

// Synthetic two-column article generator with ground-truth labels and zones.
//
// Layout follows a proceedings-style page: 612 x 792 pt, two justified
// columns, section headings in a bold face, figures as an image block plus
// small sans-serif labels, tables as rows of cell blocks, captions below
// (sometimes above) their float, page numbers centered in the footer.
// Ground-truth zones are the frame of a float's member blocks, widened to
// the caption's x-extent when the caption block is the wider one. Floats in
// the appendix carry no ground-truth zone.

namespace tbrf::synth {

struct Options {
  int min_sections = 6;
  int max_sections = 8;
  int min_figures = 2;
  int max_figures = 3;
  int min_tables = 2;
  int max_tables = 3;
  double appendix_probability = 0.5;
  // Number of stacked table pairs (table, caption, table, caption) placed in
  // one column.
  int continuous_table_pairs = 0;
};

struct SynthDocument {
  Document doc;
  LabelMap labels;
  std::vector<ZoneDetection> gold_zones;
  std::vector<int> continuous_table_pages;
  std::string body_font;
  double body_font_size = 0.0;
};

inline constexpr const char* kBodyFont = "NimbusRomNo9L-Regu";
inline constexpr const char* kBoldFont = "NimbusRomNo9L-Medi";
inline constexpr const char* kItalicFont = "NimbusRomNo9L-ReguItal";
inline constexpr const char* kMathFont = "CMMI10";
inline constexpr const char* kSansFont = "Helvetica";
inline constexpr double kBodySize = 10.0;

namespace detail {

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "model",    "layout",    "block",   "text",      "feature",   "training", "results", "we",
      "propose",  "method",    "data",    "corpus",    "accuracy",  "the",      "of",      "and",
      "in",       "for",       "with",    "baseline",  "approach",  "shows",    "improves", "task",
      "document", "structure", "analysis", "learning", "classifier", "evaluate", "language", "using",
      "table",    "figure",    "section", "performance", "dataset", "annotation", "encoder", "vector",
      "each",     "article",   "page",    "column",    "font",      "size",     "position", "boundary",
      "margin",   "kernel",    "support", "precision", "recall",    "score",    "experiment", "setting"};
  return words;
}

inline std::string words(Rng& rng, std::size_t chars, bool capitalize = true) {
  const auto& vocab = vocabulary();
  std::string out;
  while (out.size() < chars) {
    if (!out.empty()) out += ' ';
    out += vocab[rng.below(vocab.size())];
  }
  if (capitalize && !out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

class Builder {
 public:
  Builder(std::string doc_id, std::uint64_t seed, const Options& opt) : rng_(seed), opt_(opt) {
    doc_.doc_id = std::move(doc_id);
    margin_left_ = rng_.uniform(60.0, 80.0);
    col_width_ = rng_.uniform(215.0, 225.0);
    col_gap_ = 612.0 - 2.0 * margin_left_ - 2.0 * col_width_;
    if (col_gap_ < 14.0) {
      col_gap_ = 14.0;
      margin_left_ = (612.0 - col_gap_ - 2.0 * col_width_) / 2.0;
    }
    top_ = rng_.uniform(66.0, 76.0);
    para_gap_ = rng_.uniform(6.0, 9.0);
  }

  SynthDocument build() {
    new_page();
    front_matter();
    const int sections = static_cast<int>(rng_.range(opt_.min_sections, opt_.max_sections));
    const int figures = static_cast<int>(rng_.range(opt_.min_figures, opt_.max_figures));
    const int tables = static_cast<int>(rng_.range(opt_.min_tables, opt_.max_tables));

    // Floats are attached to random sections (never the first).
    std::vector<int> float_section;
    for (int f = 0; f < figures + tables + opt_.continuous_table_pairs; ++f)
      float_section.push_back(static_cast<int>(rng_.range(std::min(2, sections), sections)));
    std::vector<int> kinds;  // 0 figure, 1 table, 2 continuous pair
    for (int f = 0; f < figures; ++f) kinds.push_back(0);
    for (int t = 0; t < tables; ++t) kinds.push_back(1);
    for (int c = 0; c < opt_.continuous_table_pairs; ++c) kinds.push_back(2);
    rng_.shuffle(kinds);

    for (int s = 1; s <= sections; ++s) {
      section_title(std::to_string(s) + " " + words(rng_, static_cast<std::size_t>(rng_.range(6, 22))), 12.0);
      const int paras = static_cast<int>(rng_.range(2, 4));
      for (int p = 0; p < paras; ++p) paragraph();
      for (std::size_t f = 0; f < kinds.size(); ++f) {
        if (float_section[f] != s) continue;
        emit_float(kinds[f], true);
        paragraph();
      }
      if (rng_.chance(0.25)) equation();
      if (rng_.chance(0.6)) {
        const int subs = static_cast<int>(rng_.range(1, 2));
        for (int k = 1; k <= subs; ++k) {
          section_title(std::to_string(s) + "." + std::to_string(k) + " " +
                            words(rng_, static_cast<std::size_t>(rng_.range(6, 20))),
                        11.0);
          const int sub_paras = static_cast<int>(rng_.range(1, 3));
          for (int p = 0; p < sub_paras; ++p) paragraph();
        }
      }
    }
    references();
    if (rng_.chance(opt_.appendix_probability)) appendix();
    finish_page();
    SynthDocument out;
    out.doc = assign_reading_order(std::move(doc_));
    out.labels = std::move(labels_);
    out.gold_zones = std::move(gold_);
    out.continuous_table_pages = std::move(continuous_pages_);
    out.body_font = kBodyFont;
    out.body_font_size = kBodySize;
    return out;
  }

 private:
  static constexpr double kPageWidth = 612.0;
  static constexpr double kPageHeight = 792.0;
  static constexpr double kColumnBottom = 720.0;

  double col_x0() const { return margin_left_ + column_ * (col_width_ + col_gap_); }
  double col_x1() const { return col_x0() + col_width_; }
  double remaining() const { return bottom_ - cursor_; }

  Page& page() { return doc_.pages.back(); }

  void new_page() {
    if (!doc_.pages.empty()) finish_page();
    Page p;
    p.page_index = static_cast<int>(doc_.pages.size());
    p.width = kPageWidth;
    p.height = kPageHeight;
    doc_.pages.push_back(std::move(p));
    column_ = 0;
    cursor_ = top_;
    column_top_ = top_;
    footnote_pending_ = rng_.chance(0.6) ? static_cast<int>(rng_.range(0, 1)) : -1;
    bottom_ = footnote_pending_ == 0 ? kColumnBottom - 28.0 : kColumnBottom;
  }

  void finish_page() {
    // Footer: page number, centered.
    const std::string num = std::to_string(page().page_index + 1);
    const double w = 5.0 * static_cast<double>(num.size());
    const double y0 = rng_.uniform(746.0, 750.0);
    add_text({kPageWidth / 2 - w / 2, y0, kPageWidth / 2 + w / 2, y0 + 10.0}, num, {{kBodyFont, kBodySize, static_cast<long>(num.size())}},
             BlockLabel::Accessory);
  }

  void next_column() {
    maybe_footnote();
    if (column_ == 0) {
      column_ = 1;
      cursor_ = column_top_;
      bottom_ = footnote_pending_ == 1 ? kColumnBottom - 28.0 : kColumnBottom;
    } else {
      new_page();
    }
  }

  void maybe_footnote() {
    if (footnote_pending_ != column_) return;
    const double h = rng_.uniform(9.0, 19.0);
    const double y0 = kColumnBottom - h - rng_.uniform(0.0, 3.0);
    const long chars = static_cast<long>(h / 9.0 * 60.0);
    const double size = rng_.chance(0.7) ? 8.0 : 9.0;
    add_text({col_x0(), y0, col_x1() - rng_.uniform(0.0, 60.0), y0 + h}, "1 " + words(rng_, static_cast<std::size_t>(chars)),
             {{kBodyFont, size, chars}, {kBodyFont, 6.0, 1}}, BlockLabel::Accessory);
    footnote_pending_ = -1;
  }

  // Moves to a fresh column unless `height` fits.
  void ensure(double height) {
    if (remaining() < height) next_column();
  }

  int add_text(BoundingBox bb, std::string text, std::vector<SpanFontStats> spans, BlockLabel label) {
    TextBlock b;
    b.block_id = next_id_++;
    b.page_index = page().page_index;
    b.bbox = bb;
    b.kind = BlockKind::Text;
    b.text = std::move(text);
    b.spans = std::move(spans);
    page().blocks.push_back(std::move(b));
    labels_[next_id_ - 1] = label;
    return next_id_ - 1;
  }

  int add_image(BoundingBox bb) {
    TextBlock b;
    b.block_id = next_id_++;
    b.page_index = page().page_index;
    b.bbox = bb;
    b.kind = BlockKind::Image;
    page().blocks.push_back(std::move(b));
    labels_[next_id_ - 1] = BlockLabel::Supplement;
    return next_id_ - 1;
  }

  std::vector<SpanFontStats> body_spans(long chars) {
    std::vector<SpanFontStats> spans{{kBodyFont, kBodySize + rng_.uniform(-0.02, 0.02), chars}};
    if (rng_.chance(0.3)) spans.push_back({kItalicFont, kBodySize, static_cast<long>(rng_.range(5, 25))});
    if (rng_.chance(0.2)) spans.push_back({kMathFont, kBodySize, static_cast<long>(rng_.range(2, 10))});
    return spans;
  }

  void front_matter() {
    const double title_w = rng_.uniform(260.0, 440.0);
    const double title_h = rng_.chance(0.5) ? 18.0 : 36.0;
    const double cx = kPageWidth / 2.0 + rng_.uniform(-2.0, 2.0);
    const long title_chars = static_cast<long>(title_w / 7.5 * (title_h / 18.0));
    add_text({cx - title_w / 2, top_, cx + title_w / 2, top_ + title_h},
             words(rng_, static_cast<std::size_t>(title_chars)), {{kBoldFont, 15.0, title_chars}},
             BlockLabel::Accessory);
    const double author_w = rng_.uniform(200.0, 380.0);
    const double author_y = top_ + title_h + rng_.uniform(14.0, 22.0);
    const double author_h = rng_.uniform(30.0, 48.0);
    const long author_chars = static_cast<long>(author_w / 6.0 * 3);
    add_text({cx - author_w / 2, author_y, cx + author_w / 2, author_y + author_h},
             words(rng_, static_cast<std::size_t>(author_chars)),
             {{kBodyFont, 12.0, author_chars / 3}, {kBodyFont, 11.0, author_chars * 2 / 3}}, BlockLabel::Accessory);
    const double meta_w = rng_.uniform(330.0, 400.0);
    const double meta_y = rng_.uniform(728.0, 734.0);
    const long meta_chars = static_cast<long>(meta_w / 4.6);
    add_text({kPageWidth / 2 - meta_w / 2, meta_y, kPageWidth / 2 + meta_w / 2, meta_y + 9.0},
             "Proceedings of the " + words(rng_, static_cast<std::size_t>(meta_chars - 20), false),
             {{kBodyFont, 9.0, meta_chars}}, BlockLabel::Accessory);

    column_top_ = author_y + author_h + rng_.uniform(24.0, 34.0);
    cursor_ = column_top_;
    bottom_ = std::min(bottom_, 722.0);

    // Abstract heading, centered over the left column, then the abstract.
    const double aw = 45.0;
    const double acx = (col_x0() + col_x1()) / 2.0;
    add_text({acx - aw / 2, cursor_, acx + aw / 2, cursor_ + 14.0}, "Abstract", {{kBoldFont, 12.0, 8}},
             BlockLabel::Supplement);
    cursor_ += 14.0 + 8.0;
    const int lines = static_cast<int>(rng_.range(10, 16));
    const double h = lines * 12.0 - 2.0;
    const long chars = lines * 46;
    add_text({col_x0() + 14.0, cursor_, col_x1() - 14.0, cursor_ + h}, words(rng_, static_cast<std::size_t>(chars)),
             body_spans(chars), BlockLabel::BodyText);
    cursor_ += h + para_gap_ + 8.0;
  }

  void section_title(const std::string& text, double size) {
    const double h = size + 2.0;
    ensure(h + 4 * 12.0);
    if (cursor_ > column_top_ + 1.0) cursor_ += rng_.uniform(4.0, 8.0);
    const double w = std::min(col_width_, static_cast<double>(text.size()) * size * 0.5);
    add_text({col_x0(), cursor_, col_x0() + w, cursor_ + h}, text,
             {{kBoldFont, size, static_cast<long>(text.size())}}, BlockLabel::Supplement);
    cursor_ += h + rng_.uniform(5.0, 7.0);
  }

  void paragraph(BlockLabel label = BlockLabel::BodyText, int min_lines = 2, int max_lines = 10) {
    int lines = static_cast<int>(rng_.range(min_lines, max_lines));
    while (lines > 0) {
      const int fit = static_cast<int>((remaining() + 2.0) / 12.0);
      if (fit < 1) {
        next_column();
        continue;
      }
      const int take = std::min(lines, fit);
      const double h = take * 12.0 - 2.0;
      const long chars = take * 50;
      const double x1 = col_x1() - rng_.uniform(0.0, 0.4);
      add_text({col_x0() + rng_.uniform(0.0, 0.3), cursor_, x1, cursor_ + h},
               words(rng_, static_cast<std::size_t>(chars)), body_spans(chars), label);
      cursor_ += h + para_gap_ + rng_.uniform(-0.5, 0.5);
      lines -= take;
    }
  }

  void equation() {
    const double w = rng_.uniform(80.0, 170.0);
    const double h = rng_.uniform(14.0, 26.0);
    ensure(h + 10.0);
    const double cx = (col_x0() + col_x1()) / 2.0;
    const long chars = static_cast<long>(w / 6.0);
    cursor_ += 2.0;
    add_text({cx - w / 2, cursor_, cx + w / 2, cursor_ + h}, "f ( x ) = sum w x + b (" + std::to_string(++equations_) + ")",
             {{kMathFont, kBodySize, chars}, {"CMR10", kBodySize, chars / 2}, {"CMSY10", kBodySize, chars / 4}},
             BlockLabel::Supplement);
    cursor_ += h + para_gap_ + 2.0;
  }

  // Caption text block spanning `width` centered in the column (or full
  // column width for multi-line captions).
  int caption(ZoneKind kind, int number) {
    const bool long_caption = rng_.chance(0.6);
    const int lines = long_caption ? static_cast<int>(rng_.range(2, 3)) : 1;
    const double h = lines * 11.0 - 2.0;
    const double w = long_caption ? col_width_ - rng_.uniform(0.0, 0.4) : rng_.uniform(110.0, col_width_ - 20.0);
    const double cx = (col_x0() + col_x1()) / 2.0;
    const long chars = static_cast<long>(w / 4.4) * lines;
    std::string text = std::string(kind == ZoneKind::Figure ? "Figure " : "Table ") + std::to_string(number) + ": " +
                       words(rng_, static_cast<std::size_t>(std::max(10L, chars - 10)));
    const BoundingBox bb = long_caption ? BoundingBox{col_x0(), cursor_, col_x0() + w, cursor_ + h}
                                        : BoundingBox{cx - w / 2, cursor_, cx + w / 2, cursor_ + h};
    const int id = add_text(bb, std::move(text), {{kBodyFont, 9.0, chars}}, BlockLabel::Supplement);
    cursor_ += h;
    return id;
  }

  struct FloatBody {
    std::vector<int> members;
  };

  FloatBody figure_body(double w, double h) {
    FloatBody fb;
    const double x0 = (col_x0() + col_x1()) / 2.0 - w / 2.0;
    const double image_h = h - (rng_.chance(0.6) ? 12.0 : 0.0);
    fb.members.push_back(add_image({x0, cursor_, x0 + w, cursor_ + image_h}));
    const int labels = static_cast<int>(rng_.range(3, 7));
    for (int k = 0; k < labels; ++k) {
      // Some figures carry labels typeset like body text.
      const bool body_like = rng_.chance(0.06);
      const double size = body_like ? kBodySize : rng_.uniform(6.0, 9.0);
      const double lw = rng_.uniform(14.0, std::min(70.0, w - 4.0));
      const double lh = size + 2.0;
      const double lx = rng_.uniform(x0 + 1.0, x0 + w - lw - 1.0);
      const double ly = rng_.uniform(cursor_ + 1.0, cursor_ + image_h - lh - 1.0);
      const long chars = std::max(1L, static_cast<long>(lw / (size * 0.5)));
      fb.members.push_back(add_text({lx, ly, lx + lw, ly + lh}, words(rng_, static_cast<std::size_t>(chars), false),
                                    {{body_like ? kBodyFont : kSansFont, size, chars}}, BlockLabel::Supplement));
    }
    if (image_h < h) {
      // Axis title under the image.
      const double lw = rng_.uniform(30.0, std::min(110.0, w - 4.0));
      const double lx = x0 + (w - lw) / 2.0;
      const long chars = static_cast<long>(lw / 4.0);
      fb.members.push_back(add_text({lx, cursor_ + image_h + 1.0, lx + lw, cursor_ + h},
                                    words(rng_, static_cast<std::size_t>(chars), false), {{kSansFont, 8.0, chars}},
                                    BlockLabel::Supplement));
    }
    cursor_ += h;
    return fb;
  }

  FloatBody table_body(double w, int rows, int cols) {
    FloatBody fb;
    const double x0 = (col_x0() + col_x1()) / 2.0 - w / 2.0;
    const double row_h = 9.0;
    const double cell_w = w / cols;
    for (int r = 0; r < rows; ++r) {
      const bool header = r == 0;
      const char* font = header ? kBoldFont : kBodyFont;
      if (rng_.chance(0.35)) {
        const long chars = static_cast<long>(w / 5.0);
        fb.members.push_back(add_text({x0 + 1.0, cursor_, x0 + w - 1.0, cursor_ + row_h},
                                      words(rng_, static_cast<std::size_t>(chars)), {{font, 9.0, chars}},
                                      BlockLabel::Supplement));
      } else {
        for (int c = 0; c < cols; ++c) {
          const double cw = rng_.uniform(0.35, 0.85) * cell_w;
          const double cx0 = x0 + c * cell_w + (c == 0 ? 1.0 : (cell_w - cw) / 2.0);
          const long chars = std::max(1L, static_cast<long>(cw / 4.6));
          const std::string text = c == 0 || header ? words(rng_, static_cast<std::size_t>(chars))
                                                    : std::to_string(rng_.range(10, 99)) + "." +
                                                          std::to_string(rng_.range(0, 9));
          fb.members.push_back(add_text({cx0, cursor_, cx0 + cw, cursor_ + row_h}, text,
                                        {{font, 9.0, static_cast<long>(text.size())}}, BlockLabel::Supplement));
        }
      }
      cursor_ += row_h + (header ? 4.0 : rng_.uniform(1.5, 3.0));
    }
    return fb;
  }

  void record_gold(ZoneKind kind, int number, const FloatBody& body, int caption_id, bool in_appendix,
                   bool continuous) {
    if (in_appendix) return;
    BoundingBox frame;
    bool first = true;
    const TextBlock* cap = nullptr;
    for (const auto& b : page().blocks) {
      if (b.block_id == caption_id) cap = &b;
      if (std::find(body.members.begin(), body.members.end(), b.block_id) == body.members.end()) continue;
      frame = first ? b.bbox : frame.united(b.bbox);
      first = false;
    }
    if (cap != nullptr && frame.width() <= cap->bbox.width()) {
      frame.x0 = std::min(frame.x0, cap->bbox.x0);
      frame.x1 = std::max(frame.x1, cap->bbox.x1);
    }
    ZoneDetection z;
    z.kind = kind;
    z.number = number;
    z.page_index = page().page_index;
    z.caption_block_id = caption_id;
    z.zone = frame;
    z.member_block_ids = body.members;
    gold_.push_back(z);
    if (continuous && (continuous_pages_.empty() || continuous_pages_.back() != z.page_index))
      continuous_pages_.push_back(z.page_index);
  }

  void float_gap_before() {
    if (cursor_ > column_top_ + 1.0) cursor_ += rng_.uniform(8.0, 12.0);
  }
  void float_gap_after() { cursor_ += rng_.uniform(18.0, 24.0); }

  void emit_float(int kind, bool gold) {
    if (kind == 0) {
      const double w = rng_.uniform(0.55, 1.0) * col_width_;
      const double h = rng_.uniform(80.0, 170.0);
      ensure(h + 60.0);
      float_gap_before();
      const int number = ++figures_;
      const FloatBody body = figure_body(w, h);
      cursor_ += rng_.uniform(6.0, 10.0);
      const int cap = caption(ZoneKind::Figure, number);
      record_gold(ZoneKind::Figure, number, body, cap, !gold, false);
      float_gap_after();
    } else if (kind == 1) {
      const int rows = static_cast<int>(rng_.range(4, 9));
      const int cols = static_cast<int>(rng_.range(3, 5));
      const double w = rng_.uniform(0.7, 1.0) * col_width_;
      ensure(rows * 12.0 + 60.0);
      float_gap_before();
      const int number = ++tables_;
      if (rng_.chance(0.3)) {
        const int cap = caption(ZoneKind::Table, number);
        cursor_ += rng_.uniform(6.0, 9.0);
        const FloatBody body = table_body(w, rows, cols);
        record_gold(ZoneKind::Table, number, body, cap, !gold, false);
      } else {
        const FloatBody body = table_body(w, rows, cols);
        cursor_ += rng_.uniform(5.0, 8.0);
        const int cap = caption(ZoneKind::Table, number);
        record_gold(ZoneKind::Table, number, body, cap, !gold, false);
      }
      float_gap_after();
    } else {
      // Two tables stacked in one column, each with its caption below.
      const int rows_a = static_cast<int>(rng_.range(4, 7));
      const int rows_b = static_cast<int>(rng_.range(4, 7));
      const int cols = static_cast<int>(rng_.range(3, 5));
      ensure((rows_a + rows_b) * 12.0 + 110.0);
      float_gap_before();
      for (int rows : {rows_a, rows_b}) {
        const double w = rng_.uniform(0.75, 1.0) * col_width_;
        const int number = ++tables_;
        const FloatBody body = table_body(w, rows, cols);
        cursor_ += rng_.uniform(5.0, 7.0);
        const int cap = caption(ZoneKind::Table, number);
        record_gold(ZoneKind::Table, number, body, cap, !gold, true);
        cursor_ += rng_.uniform(6.0, 9.0);
      }
      float_gap_after();
    }
  }

  void references() {
    ensure(60.0);
    cursor_ += 8.0;
    add_text({col_x0(), cursor_, col_x0() + 56.0, cursor_ + 14.0}, "References", {{kBoldFont, 12.0, 10}},
             BlockLabel::Supplement);
    cursor_ += 14.0 + 6.0;
    const int entries = static_cast<int>(rng_.range(7, 12));
    for (int e = 0; e < entries; ++e) {
      const int lines = static_cast<int>(rng_.range(2, 4));
      const double h = lines * 11.0 - 2.0;
      ensure(h);
      const long chars = lines * 48;
      add_text({col_x0(), cursor_, col_x1() - rng_.uniform(0.0, 0.4), cursor_ + h},
               words(rng_, 12) + ". 20" + std::to_string(rng_.range(10, 23)) + ". " +
                   words(rng_, static_cast<std::size_t>(chars - 20)),
               {{kBodyFont, kBodySize, chars}, {kItalicFont, kBodySize, 20}}, BlockLabel::BodyText);
      cursor_ += h + rng_.uniform(3.0, 5.0);
    }
  }

  void appendix() {
    section_title("A Appendix " + words(rng_, 12), 12.0);
    const int paras = static_cast<int>(rng_.range(1, 3));
    for (int p = 0; p < paras; ++p) paragraph();
    if (rng_.chance(0.5)) emit_float(1, false);
  }

  Rng rng_;
  Options opt_;
  Document doc_;
  LabelMap labels_;
  std::vector<ZoneDetection> gold_;
  std::vector<int> continuous_pages_;
  int next_id_ = 0;
  int column_ = 0;
  int figures_ = 0;
  int tables_ = 0;
  int equations_ = 0;
  int footnote_pending_ = -1;
  double margin_left_ = 72.0;
  double col_width_ = 222.0;
  double col_gap_ = 24.0;
  double top_ = 72.0;
  double column_top_ = 72.0;
  double cursor_ = 72.0;
  double bottom_ = kColumnBottom;
  double para_gap_ = 8.0;
};

}  // namespace detail

inline SynthDocument generate_document(std::string doc_id, std::uint64_t seed, const Options& opt = {}) {
  return detail::Builder(std::move(doc_id), seed, opt).build();
}

// Documents "<prefix>00", "<prefix>01", ... with seeds seed, seed+1, ...
// The first `continuous_docs` documents each carry one stacked table pair.
inline std::vector<SynthDocument> generate_corpus(std::size_t count, std::uint64_t seed, const std::string& prefix,
                                                  std::size_t continuous_docs = 0, Options opt = {}) {
  std::vector<SynthDocument> out;
  for (std::size_t k = 0; k < count; ++k) {
    Options o = opt;
    if (k < continuous_docs) o.continuous_table_pairs = std::max(1, opt.continuous_table_pairs);
    std::string id = prefix + (k < 10 ? "0" : "") + std::to_string(k);
    out.push_back(generate_document(std::move(id), seed + k, o));
  }
  return out;
}

}  // namespace tbrf::synth
