#pragma once

#include <string>

#include "wpage/core.hpp"
#include "wpage/predictions.hpp"

namespace wpage {

// Trace / prediction files: one page id per line.
RequestSequence read_trace(const std::string& path, int universe_hint = -1);
void write_trace(const std::string& path, const RequestSequence& seq);

// Weights files: lines "page_id<space>weight" with decimal weights.
WeightTable read_weights(const std::string& path, int min_universe = 0);
void write_weights(const std::string& path, const WeightTable& weights);

// Annotation files: lines "t next_time".
void write_prp_annotation(const std::string& path, const PrpAnnotation& prp);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wpage
