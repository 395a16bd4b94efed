#include "termcut/concentration.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "termcut/error.hpp"

namespace termcut {

double coefficient_of_variation(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "CV of an empty vector");
  const double n = static_cast<double>(weights.size());
  const double mean = std::accumulate(weights.begin(), weights.end(), 0.0) / n;
  if (!(mean > 0.0)) throw Error(ErrorCode::InvalidArgument, "CV needs a positive mean");
  double ss = 0.0;
  for (const double w : weights) ss += (w - mean) * (w - mean);
  return std::sqrt(ss / n) / mean;
}

ConcentrationCurve concentration_curve(const RankedTermList& ranking) {
  const auto weights = ranking.weights();
  const PrefixSimilarity sim(weights);
  ConcentrationCurve curve;
  curve.doc_id = ranking.doc_id;
  const std::size_t n = weights.size();
  curve.points.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    curve.points.push_back({static_cast<double>(i) / static_cast<double>(n), sim.at(i)});
  return curve;
}

std::vector<HistogramBin> cv_histogram(const std::vector<RankedTermList>& rankings,
                                       double bin_width) {
  if (!(bin_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (const auto& r : rankings) {
    if (r.empty()) continue;
    const auto weights = r.weights();
    const auto bin = static_cast<std::size_t>(std::floor(coefficient_of_variation(weights) / bin_width));
    if (bin >= counts.size()) counts.resize(bin + 1, 0);
    ++counts[bin];
    ++total;
  }
  std::vector<HistogramBin> bins;
  bins.reserve(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    bins.push_back({static_cast<double>(b) * bin_width, static_cast<double>(b + 1) * bin_width,
                    static_cast<double>(counts[b]) / static_cast<double>(total)});
  }
  return bins;
}

std::vector<HistogramBin> cv_histogram(const SourceCollection& collection, Measure measure,
                                       double bin_width) {
  return cv_histogram(rank_collection(collection, measure), bin_width);
}

CutoffSizeTable cutoff_vs_size_table(const std::vector<RankedTermList>& rankings,
                                      const std::vector<double>& sc_thresholds) {
  for (const double t : sc_thresholds) CutoffSpec{CutoffKind::SC, t}.validate();
  CutoffSizeTable table;
  table.thresholds = sc_thresholds;
  const std::size_t k = sc_thresholds.size();
  for (const auto& r : rankings) {
    if (r.empty()) continue;
    const auto weights = r.weights();
    const PrefixSimilarity sim(weights);
    CutoffSizeRow row{r.doc_id, weights.size(), {}};
    row.cutoffs.reserve(k);
    for (const double t : sc_thresholds) row.cutoffs.push_back(sim.cutoff(t));
    table.rows.push_back(std::move(row));
  }
  table.mean.assign(k, 0.0);
  table.stddev.assign(k, 0.0);
  if (table.rows.empty()) return table;
  const double n = static_cast<double>(table.rows.size());
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (const auto& row : table.rows) s += static_cast<double>(row.cutoffs[j]);
    const double mean = s / n;
    double ss = 0.0;
    for (const auto& row : table.rows) {
      const double d = static_cast<double>(row.cutoffs[j]) - mean;
      ss += d * d;
    }
    table.mean[j] = mean;
    table.stddev[j] = std::sqrt(ss / n);
  }
  return table;
}

CutoffSizeTable cutoff_vs_size_table(const SourceCollection& collection, Measure measure,
                                      const std::vector<double>& sc_thresholds) {
  return cutoff_vs_size_table(rank_collection(collection, measure), sc_thresholds);
}

namespace {

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void write_curves_csv(std::ostream& out, const std::vector<ConcentrationCurve>& curves) {
  out << "doc_id,fraction,similarity\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      out << c.doc_id << ',' << fmt(p.fraction) << ',' << fmt(p.similarity) << '\n';
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_lo,bin_hi,fraction\n";
  for (const auto& b : bins) out << fmt(b.lo) << ',' << fmt(b.hi) << ',' << fmt(b.fraction) << '\n';
}

void write_cutoff_table_csv(std::ostream& out, const CutoffSizeTable& table) {
  out << "doc_id,n";
  for (const double t : table.thresholds) out << ",l_" << fmt(t, "%g");
  for (const double t : table.thresholds) out << ",frac_" << fmt(t, "%g");
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.doc_id << ',' << row.n;
    for (const auto l : row.cutoffs) out << ',' << l;
    for (const auto l : row.cutoffs)
      out << ',' << fmt(static_cast<double>(l) / static_cast<double>(row.n));
    out << '\n';
  }
  // Summary rows; the n column carries the document count.
  for (const auto* label : {"mean", "stddev"}) {
    const auto& values = std::string(label) == "mean" ? table.mean : table.stddev;
    out << label << ',' << table.rows.size();
    for (const double v : values) out << ',' << fmt(v);
    for (std::size_t j = 0; j < values.size(); ++j) out << ',';
    out << '\n';
  }
}

}  // namespace termcut
