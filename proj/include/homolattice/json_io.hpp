#pragma once

#include <string>

#include "homolattice/complex.hpp"
#include "homolattice/ftgate.hpp"
#include "homolattice/hprod.hpp"

namespace homolattice {

// JSON schemas with stable field ordering.
// CssCode: {n, k, x_stabilizers: [bitstrings], z_stabilizers: [bitstrings]}

std::string css_code_to_json(const CssCode& code);
CssCode css_code_from_json(const std::string& text);

std::string product_report_to_json(const ProductParams& params);

struct RunRecord {
  std::string schedule_id;
  double p = 0.0;
  uint64_t trials = 0;
  uint64_t seed = 0;
  std::string correct_at;
  RunStatistics stats;
};

std::string run_record_to_json(const RunRecord& record);

std::string sweep_report_to_json(const std::string& schedule_id,
                                 const SweepResult& sweep,
                                 const std::string& correct_at,
                                 bool propagation_approximate);

}  // namespace homolattice
