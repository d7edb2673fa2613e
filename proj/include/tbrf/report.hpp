#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "tbrf/block_model.hpp"

namespace tbrf {

namespace detail {

inline std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string label_class(const TextBlock& b, const LabelMap& labels) {
  auto it = labels.find(b.block_id);
  if (it == labels.end()) return "unlabeled";
  switch (it->second) {
    case BlockLabel::BodyText: return "body";
    case BlockLabel::Supplement: return "supplement";
    case BlockLabel::Accessory: return "accessory";
  }
  return "unlabeled";
}

inline std::string rect(const BoundingBox& bb, const std::string& cls, const std::string& extra) {
  return "<rect class=\"" + cls + "\" x=\"" + num(bb.x0) + "\" y=\"" + num(bb.y0) + "\" width=\"" + num(bb.width()) +
         "\" height=\"" + num(bb.height()) + "\"" + extra + ">";
}

}  // namespace detail

// Static HTML page with one SVG canvas per page: block rectangles colored by
// label (gray when unlabeled) and zone frames tagged with their caption.
inline std::string render_overlay_report(const Document& doc, const LabelMap& labels,
                                         const std::vector<ZoneDetection>& zones) {
  using detail::html_escape;
  using detail::num;
  std::vector<std::string> warnings;
  std::string pages;
  for (const auto& page : doc.pages) {
    pages += "<section class=\"page\"><h2>Page " + std::to_string(page.page_index + 1) + "</h2>\n";
    pages += "<svg viewBox=\"0 0 " + num(page.width) + " " + num(page.height) + "\" width=\"" + num(page.width) +
             "\" height=\"" + num(page.height) + "\" data-page=\"" + std::to_string(page.page_index) + "\">\n";
    pages += "<rect class=\"canvas\" x=\"0\" y=\"0\" width=\"" + num(page.width) + "\" height=\"" + num(page.height) +
             "\"></rect>\n";
    for (const TextBlock* b : reading_sequence(page)) {
      const std::string cls = detail::label_class(*b, labels);
      if (cls == "unlabeled") warnings.push_back("block " + std::to_string(b->block_id) + " has no label");
      const std::string title = b->is_image() ? std::string("[image]") : b->text.substr(0, 160);
      pages += detail::rect(b->bbox, "block " + cls + (b->is_image() ? " image" : ""),
                            " data-block-id=\"" + std::to_string(b->block_id) + "\"") +
               "<title>#" + std::to_string(b->block_id) + " " + html_escape(title) + "</title></rect>\n";
    }
    for (const auto& z : zones) {
      if (z.page_index != page.page_index) continue;
      const std::string name = std::string(z.kind == ZoneKind::Figure ? "Figure " : "Table ") + std::to_string(z.number);
      pages += detail::rect(z.zone, std::string("zone ") + std::string(to_string(z.kind)) + (z.flagged ? " flagged" : ""),
                            " data-caption-block-id=\"" + std::to_string(z.caption_block_id) + "\"") +
               "<title>" + name + "</title></rect>\n";
      pages += "<text class=\"zone-label\" x=\"" + num(z.zone.x0 + 2) + "\" y=\"" + num(z.zone.y0 + 9) + "\">" + name +
               "</text>\n";
    }
    pages += "</svg></section>\n";
  }

  std::string html;
  html += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  html += "<title>" + html_escape(doc.doc_id) + " layout</title>\n";
  html += R"(<style>
body { font-family: sans-serif; margin: 1em; background: #eee; }
.page { display: inline-block; vertical-align: top; margin: 0 1em 1em 0; overflow: auto; max-width: 95vw; }
svg { background: #fff; box-shadow: 0 0 4px #999; }
rect.canvas { fill: #fff; }
rect.block { fill-opacity: 0.35; stroke-width: 0.6; }
rect.body { fill: #2b8cbe; stroke: #045a8d; }
rect.supplement { fill: #fd8d3c; stroke: #d94701; }
rect.accessory { fill: #74c476; stroke: #238b45; }
rect.unlabeled { fill: #999; stroke: #555; }
rect.image { stroke-dasharray: 3 2; }
rect.zone { fill: none; stroke: #e31a1c; stroke-width: 1.6; }
rect.zone.flagged { stroke-dasharray: 5 3; }
text.zone-label { font-size: 8px; fill: #e31a1c; }
.legend span { display: inline-block; padding: 0 0.5em; margin-right: 0.5em; }
.warnings { background: #fff3cd; padding: 0.5em 1em; }
</style>
</head>
<body>
)";
  html += "<h1>" + html_escape(doc.doc_id) + "</h1>\n";
  html += "<div class=\"legend\"><span style=\"background:#2b8cbe66\">BodyText</span>"
          "<span style=\"background:#fd8d3c66\">Supplement</span><span style=\"background:#74c47666\">Accessory</span>"
          "<span style=\"background:#9996\">unlabeled</span><span style=\"border:2px solid #e31a1c\">zone</span>"
          " &nbsp;<label>zoom <input id=\"zoom\" type=\"range\" min=\"0.5\" max=\"3\" step=\"0.1\" value=\"1\"></label></div>\n";
  if (!warnings.empty()) {
    html += "<div id=\"warnings\" class=\"warnings\"><h2>Warnings</h2><ul>\n";
    for (const auto& w : warnings) html += "<li>" + html_escape(w) + "</li>\n";
    html += "</ul></div>\n";
  }
  html += pages;
  html += R"(<script>
document.getElementById('zoom').addEventListener('input', function (e) {
  var s = parseFloat(e.target.value);
  document.querySelectorAll('svg').forEach(function (svg) {
    var vb = svg.viewBox.baseVal;
    svg.setAttribute('width', vb.width * s);
    svg.setAttribute('height', vb.height * s);
  });
});
</script>
</body>
</html>
)";
  return html;
}

}  // namespace tbrf
