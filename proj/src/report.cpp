#include "dialectkit/report.hpp"

#include <iomanip>
#include <sstream>

#include "dialectkit/lexicon.hpp"

namespace dialectkit {

namespace {

std::string fixed(double v, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

}  // namespace

std::string alignment_report_markdown(const std::vector<AlignmentReportRow>& rows) {
  std::string out = "| Dataset | U-src | U-tgt | X |\n|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += "| " + r.label + " | " + fixed(r.stats.u_src, 3) + " | " +
           fixed(r.stats.u_tgt, 3) + " | " + fixed(r.stats.x, 3) + " |\n";
  }
  return out;
}

std::string alignment_report_csv(const std::vector<AlignmentReportRow>& rows) {
  std::string out = "dataset,u_src,u_tgt,x\n";
  for (const auto& r : rows) {
    out += csv_escape(r.label) + "," + fixed(r.stats.u_src, 6) + "," +
           fixed(r.stats.u_tgt, 6) + "," + fixed(r.stats.x, 6) + "\n";
  }
  return out;
}

std::string eval_report_markdown(const std::vector<EvalReportRow>& rows) {
  std::string out =
      "| System | BLEU | chrF++ | TER | Fluency | Adequacy | Dialect |\n"
      "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += "| " + r.label + " | " + fixed(r.metrics.bleu, 2) + " | " +
           fixed(r.metrics.chrfpp, 2) + " | " + fixed(r.metrics.ter, 2) + " | ";
    if (r.judge) {
      out += fixed(r.judge->mean_fluency, 2) + " | " + fixed(r.judge->mean_adequacy, 2) +
             " | " + fixed(r.judge->mean_dialect, 2) + " |\n";
    } else {
      out += "- | - | - |\n";
    }
  }
  return out;
}

std::string eval_report_csv(const std::vector<EvalReportRow>& rows) {
  std::string out = "system,bleu,chrfpp,ter,fluency,adequacy,dialect\n";
  for (const auto& r : rows) {
    out += csv_escape(r.label) + "," + fixed(r.metrics.bleu, 4) + "," +
           fixed(r.metrics.chrfpp, 4) + "," + fixed(r.metrics.ter, 4) + ",";
    if (r.judge) {
      out += fixed(r.judge->mean_fluency, 4) + "," + fixed(r.judge->mean_adequacy, 4) + "," +
             fixed(r.judge->mean_dialect, 4) + "\n";
    } else {
      out += ",,\n";
    }
  }
  return out;
}

}  // namespace dialectkit
