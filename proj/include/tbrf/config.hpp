#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tbrf/error.hpp"

namespace tbrf {

struct ReadingOrderConfig {
  // A page is single-column when more than `wide_share` of its text-block
  // width belongs to blocks wider than `wide_fraction` of the page width.
  double wide_share = 0.8;
  double wide_fraction = 0.6;
};

struct RuleConfig {
  std::string caption_figure = R"(^(Figure|Fig\.?)\s*(\d+)\s*[:.])";
  std::string caption_table = R"(^Table\s*(\d+)\s*[:.])";
  std::string section_main = R"(^(\d+)\s+\S)";
  std::string section_sub = R"(^(\d+\.\d+(\.\d+)?)\s+\S)";
  std::string marker_abstract = R"(^Abstract\b)";
  std::string marker_references = R"(^References\b)";
  std::string marker_appendix = R"(^(Appendix|A\s))";
};

struct ZoneConfig {
  double gap_factor = 1.5;
  double gap_fallback = 18.0;
  bool include_appendix = false;
};

struct EvalConfig {
  double iou_threshold = 0.8;
};

struct Config {
  ReadingOrderConfig reading_order;
  RuleConfig rules;
  ZoneConfig zones;
  EvalConfig eval;
};

namespace detail {

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace detail

// Unknown keys are ignored; every key is optional.
inline Config config_from_json(const nlohmann::json& j) {
  Config cfg;
  if (!j.is_object()) throw ConfigError("config root must be an object");
  detail::read_opt(j, "caption_figure", cfg.rules.caption_figure);
  detail::read_opt(j, "caption_table", cfg.rules.caption_table);
  detail::read_opt(j, "section_main", cfg.rules.section_main);
  detail::read_opt(j, "section_sub", cfg.rules.section_sub);
  if (j.contains("domain_markers")) {
    const auto& m = j.at("domain_markers");
    if (!m.is_object()) throw ConfigError("config key 'domain_markers' must be an object");
    detail::read_opt(m, "abstract", cfg.rules.marker_abstract);
    detail::read_opt(m, "references", cfg.rules.marker_references);
    detail::read_opt(m, "appendix", cfg.rules.marker_appendix);
  }
  if (j.contains("reading_order")) {
    const auto& r = j.at("reading_order");
    detail::read_opt(r, "wide_share", cfg.reading_order.wide_share);
    detail::read_opt(r, "wide_fraction", cfg.reading_order.wide_fraction);
  }
  if (j.contains("zones")) {
    const auto& z = j.at("zones");
    detail::read_opt(z, "gap_factor", cfg.zones.gap_factor);
    detail::read_opt(z, "gap_fallback", cfg.zones.gap_fallback);
    detail::read_opt(z, "include_appendix", cfg.zones.include_appendix);
  }
  detail::read_opt(j, "iou_threshold", cfg.eval.iou_threshold);
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace tbrf
