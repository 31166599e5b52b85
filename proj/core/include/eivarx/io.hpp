#pragma once

#include "eivarx/baselines.hpp"
#include "eivarx/mc_harness.hpp"
#include "eivarx/pipeline.hpp"
#include "eivarx/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace eivarx {

/// CSV with header k,u,y[,u_star,y_star], 12 significant digits, LF endings.
void write_series_csv(std::ostream& os, const TimeSeriesPair& series, bool include_star = true);
void write_series_csv(const std::string& path, const TimeSeriesPair& series,
                      bool include_star = true);

/// Reads a CSV with at least the columns u and y (in any order).
TimeSeriesPair read_series_csv(std::istream& is);
TimeSeriesPair read_series_csv(const std::string& path);

std::string report_to_json(const IdentificationReport& report, int indent = 2);
std::string baseline_to_json(const BaselineResult& result, int indent = 2);

void write_mc_csv(std::ostream& os, const McSummary& summary);
std::string mc_summary_to_json(const McSummary& summary, int indent = 2);

/// Write `content` to `path`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace eivarx
