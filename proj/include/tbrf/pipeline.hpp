#pragma once

#include <set>
#include <span>
#include <vector>

#include "tbrf/block_model.hpp"
#include "tbrf/classifier.hpp"
#include "tbrf/config.hpp"
#include "tbrf/encoder.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/rules.hpp"
#include "tbrf/zones.hpp"

namespace tbrf {

// Image blocks are labeled Supplement without consulting the model.
inline LabelMap classify_document(const std::vector<EncodedBlock>& encoded, const TrainedModel& model) {
  LabelMap labels;
  for (const auto& e : encoded) {
    if (e.kind == BlockKind::Image) {
      labels[e.block_id] = BlockLabel::Supplement;
      continue;
    }
    labels[e.block_id] = predict(model, e.features);
  }
  return labels;
}

struct DetectionRun {
  DomainSegmentation domains;
  CaptionScan captions;
  std::vector<SectionTitle> section_titles;
  std::vector<ZoneDetection> zones;
};

// Rules + zone merging for an already ordered and labeled document.
inline DetectionRun detect_document(const Document& doc, const EncodingContext& ctx, const LabelMap& labels,
                                    const Config& cfg, const RuleSet& rules, Warnings* warnings = nullptr) {
  DetectionRun run;
  run.domains = segment_domains(doc, ctx, rules);
  run.section_titles = find_section_titles(doc, ctx, rules);
  for (auto& w : check_section_continuity(run.section_titles)) warn(warnings, std::move(w));
  run.captions = find_captions(doc, rules, warnings);

  std::vector<CaptionMatch> active;
  for (const auto& c : run.captions.captions)
    if (cfg.zones.include_appendix || !run.domains.in_appendix(c.block_id)) active.push_back(c);

  std::set<int> separators;
  for (const auto& t : run.section_titles) separators.insert(t.block_id);
  for (const auto& c : run.captions.captions) separators.insert(c.block_id);
  for (const auto& c : run.captions.duplicates) separators.insert(c.block_id);
  run.zones = detect_zones(doc, labels, active, {cfg.zones, cfg.reading_order}, separators, warnings);
  return run;
}

}  // namespace tbrf
