#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dialectkit/judge.hpp"
#include "dialectkit/metrics.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit {

struct AlignmentReportRow {
  std::string label;
  AlignmentStats stats;
};

struct EvalReportRow {
  std::string label;
  metrics::MetricReport metrics;
  std::optional<judge::JudgeAggregate> judge;
};

// Alignment-quality comparison table: one row per dataset, columns
// U-src / U-tgt / X.
std::string alignment_report_markdown(const std::vector<AlignmentReportRow>& rows);
std::string alignment_report_csv(const std::vector<AlignmentReportRow>& rows);

// Evaluation table: one row per system, columns BLEU / chrF++ / TER /
// Fluency / Adequacy / Dialect.
std::string eval_report_markdown(const std::vector<EvalReportRow>& rows);
std::string eval_report_csv(const std::vector<EvalReportRow>& rows);

}  // namespace dialectkit
