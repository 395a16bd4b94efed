#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "termcut/corpus.hpp"
#include "termcut/cutoff.hpp"
#include "termcut/weighting.hpp"

namespace termcut {

/// Population standard deviation over mean. Throws InvalidArgument on empty
/// input or a non-positive mean.
double coefficient_of_variation(std::span<const double> weights);

struct CurvePoint {
  double fraction = 0.0;    // i / n
  double similarity = 0.0;  // sim_prefix(L, i)
};

struct ConcentrationCurve {
  std::string doc_id;
  std::vector<CurvePoint> points;  // i = 1..n, ends at exactly (1, 1)
};

ConcentrationCurve concentration_curve(const RankedTermList& ranking);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double fraction = 0.0;
};

/// Bins of `bin_width` starting at 0 over the per-document CV of positive
/// weights. Documents with an empty ranking are skipped.
std::vector<HistogramBin> cv_histogram(const std::vector<RankedTermList>& rankings,
                                       double bin_width);
std::vector<HistogramBin> cv_histogram(const SourceCollection& collection, Measure measure,
                                       double bin_width);

struct CutoffSizeRow {
  std::string doc_id;
  std::size_t n = 0;
  std::vector<std::size_t> cutoffs;  // one per threshold
};

struct CutoffSizeTable {
  std::vector<double> thresholds;
  std::vector<CutoffSizeRow> rows;
  std::vector<double> mean;    // of l per threshold
  std::vector<double> stddev;  // population
};

/// SC cutoff per document at each threshold, with per-threshold mean and
/// standard deviation. Empty rankings are skipped.
CutoffSizeTable cutoff_vs_size_table(const std::vector<RankedTermList>& rankings,
                                      const std::vector<double>& sc_thresholds);
CutoffSizeTable cutoff_vs_size_table(const SourceCollection& collection, Measure measure,
                                      const std::vector<double>& sc_thresholds);

// CSV exports consumed by external plotting.
void write_curves_csv(std::ostream& out, const std::vector<ConcentrationCurve>& curves);
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);
void write_cutoff_table_csv(std::ostream& out, const CutoffSizeTable& table);

}  // namespace termcut
