// Classify the blocks of one dump and print its figure/table zones.
//
//   classify_dump fixtures/synth_2col.json fixtures/model.json

#include <iostream>

#include "tbrf/encoder.hpp"
#include "tbrf/ingest.hpp"
#include "tbrf/io.hpp"
#include "tbrf/pipeline.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: classify_dump <dump.json> <model.json>\n";
    return 2;
  }
  try {
    const tbrf::Config cfg;
    const auto doc = tbrf::assign_reading_order(tbrf::parse_block_dump(tbrf::read_file(argv[1])));
    const auto model = tbrf::parse_model(tbrf::read_file(argv[2]));

    tbrf::Warnings warnings;
    const auto ctx = tbrf::compute_context(doc, &warnings);
    const auto labels = tbrf::classify_document(tbrf::encode_document(doc, ctx), model);
    const auto run = tbrf::detect_document(doc, ctx, labels, cfg, tbrf::RuleSet(cfg.rules), &warnings);

    for (const tbrf::TextBlock* b : tbrf::reading_sequence(doc))
      std::cout << b->block_id << "\t" << tbrf::to_string(labels.at(b->block_id)) << "\t"
                << (b->is_image() ? "[image]" : b->text.substr(0, 60)) << "\n";
    for (const auto& z : run.zones)
      std::cout << tbrf::to_string(z.kind) << " " << z.number << " on page " << z.page_index << ": [" << z.zone.x0
                << ", " << z.zone.y0 << ", " << z.zone.x1 << ", " << z.zone.y1 << "]\n";
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } catch (const tbrf::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 1;
  }
}
