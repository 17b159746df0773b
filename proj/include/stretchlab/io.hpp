#pragma once

// Input documents, sweep/compare drivers and the three output formats.
// All numeric output goes through std::to_chars, so emitted bytes are
// locale-independent and identical across runs.

#include <string>
#include <vector>

#include "stretchlab/stretch.hpp"

namespace stretchlab {

struct Document {
  std::vector<RaySpec> rays;
  std::vector<TransverseCurveData> curves;
};

// Throws ParseError (malformed JSON / wrong field types, with location)
// or InvariantError (naming the violated domain invariant).
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

std::string print_document(const Document& doc);

enum class OutputFormat { table, csv, svg };

struct SweepConfig {
  double t_min = 0.0;
  double t_max = 0.0;
  int steps = 1;
  std::size_t cut = 0;
  OutputFormat format = OutputFormat::table;

  void validate() const;
  std::vector<double> grid() const;
};

struct SweepRow {
  std::string core_id;
  double t;
  double log_w_t;
  double h_prime;
  double h;
  double h_star;
  double log_asymptote;
  double ratio_h_over_asym;
};

// One row per grid point per cylinder, cylinder index major, t minor.
std::vector<SweepRow> run_sweep(const RaySpec& ray, const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_table(const std::vector<SweepRow>& rows);
std::string sweep_svg(const std::vector<SweepRow>& rows);

struct CompareRow {
  double t;
  double bound_g_to_h;
  double bound_h_to_g;
  double bound_g_to_h_reparam;  // NaN when no witness exists
  double bound_h_to_g_reparam;
};

struct CompareResult {
  DivergenceReport report;
  std::vector<CompareRow> rows;
};

CompareResult run_compare(const RaySpec& g, const RaySpec& h, const SweepConfig& cfg);

std::string compare_csv(const CompareResult& res);
std::string compare_report(const CompareResult& res);

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

void write_output(const std::string& path, const std::string& data);

}  // namespace stretchlab
