#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbrf/block_model.hpp"
#include "tbrf/error.hpp"
#include "tbrf/evaluation.hpp"

namespace tbrf {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(what + ": invalid JSON: " + e.what());
  }
}

struct DocumentLabels {
  std::string doc_id;
  LabelMap labels;
};

inline std::string serialize_labels(const DocumentLabels& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [id, label] : d.labels) rows.push_back({{"block_id", id}, {"label", to_string(label)}});
  return nlohmann::json{{"doc_id", d.doc_id}, {"labels", rows}}.dump(1) + "\n";
}

inline DocumentLabels parse_labels(const std::string& text) {
  const auto j = parse_json(text, "labels file");
  DocumentLabels d;
  try {
    d.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& row : j.at("labels")) {
      const auto name = row.at("label").get<std::string>();
      auto label = parse_label(name);
      if (!label) throw SchemaError("labels file: unknown label '" + name + "'");
      const int id = row.at("block_id").get<int>();
      if (!d.labels.emplace(id, *label).second)
        throw SchemaError("labels file: duplicate block_id " + std::to_string(id));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("labels file: ") + e.what());
  }
  return d;
}

inline nlohmann::json zone_json(const ZoneDetection& z) {
  return {{"kind", to_string(z.kind)},
          {"number", z.number},
          {"page_index", z.page_index},
          {"bbox", {z.zone.x0, z.zone.y0, z.zone.x1, z.zone.y1}},
          {"caption_block_id", z.caption_block_id},
          {"member_block_ids", z.member_block_ids},
          {"flagged", z.flagged}};
}

inline std::string serialize_zones(const DocumentZones& d) {
  nlohmann::json dets = nlohmann::json::array();
  for (const auto& z : d.zones) dets.push_back(zone_json(z));
  return nlohmann::json{{"doc_id", d.doc_id}, {"detections", dets}}.dump(1) + "\n";
}

// Also reads ground-truth files, where only kind, number, page_index and
// bbox are required.
inline DocumentZones parse_zones(const std::string& text) {
  const auto j = parse_json(text, "zones file");
  DocumentZones d;
  try {
    d.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& zj : j.at("detections")) {
      ZoneDetection z;
      auto kind = parse_zone_kind(zj.at("kind").get<std::string>());
      if (!kind) throw SchemaError("zones file: kind must be figure or table");
      z.kind = *kind;
      z.number = zj.at("number").get<int>();
      z.page_index = zj.value("page_index", 0);
      const auto bb = zj.at("bbox").get<std::vector<double>>();
      if (bb.size() != 4) throw SchemaError("zones file: bbox needs 4 numbers");
      z.zone = {bb[0], bb[1], bb[2], bb[3]};
      z.caption_block_id = zj.value("caption_block_id", -1);
      z.member_block_ids = zj.value("member_block_ids", std::vector<int>{});
      z.flagged = zj.value("flagged", false);
      d.zones.push_back(std::move(z));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("zones file: ") + e.what());
  }
  return d;
}

}  // namespace tbrf
