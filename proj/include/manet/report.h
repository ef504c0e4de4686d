#ifndef MANET_REPORT_H
#define MANET_REPORT_H

#include "manet/metrics.h"
#include "manet/scenario.h"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace manet {

struct Summary
{
  double mean = 0.0;
  double stddev = 0.0; // sample standard deviation, 0 for n < 2
  std::size_t n = 0;
};

Summary Summarize (const std::vector<double> &values);

/// All runs of one protocol at one sweep point.
struct ComparisonCell
{
  ProtocolId protocol = ProtocolId::Dsr;
  std::uint32_t nodes = 0;
  std::vector<RunMetrics> runs;
  /// Set when the cell could not run (for example no RPSC row).
  std::optional<std::string> error;
};

struct ComparisonTable
{
  std::vector<ProtocolId> protocols;
  std::vector<std::uint32_t> nodeCounts;
  std::vector<std::uint64_t> seeds;
  /// Protocol-major, then sweep point.
  std::vector<ComparisonCell> cells;

  const ComparisonCell *Find (ProtocolId p, std::uint32_t nodes) const;
  std::optional<Summary> Get (const std::string &metric, ProtocolId p, std::uint32_t nodes) const;
  std::size_t RunCount () const;
};

class EmptyTable : public SimError
{
public:
  EmptyTable ();
};

using ProgressFn = std::function<void (const RunMetrics &)>;

/**
 * Run every (protocol, sweep point, seed) combination. Each sweep point is
 * a full config whose protocol and seed are overridden. Runs are spread
 * over `threads` workers; results do not depend on the thread count.
 */
ComparisonTable Compare (const std::vector<ScenarioConfig> &points, const std::vector<ProtocolId> &protocols,
                         const std::vector<std::uint64_t> &seeds, unsigned threads = 1,
                         const ProgressFn &progress = {});

struct Figure
{
  const char *file;
  const char *metric;
  const char *title;
};

/// The four energy bar charts: idle, tx, rx and remaining energy.
const std::vector<Figure> &Figures ();

/// Per-metric CSV: protocol,node_count,mean,stddev,n.
void WriteMetricCsv (std::ostream &os, const ComparisonTable &table, const std::string &metric);
/// Grouped bar chart (groups: node counts, bars: protocols) with stddev whiskers.
void WriteBarChart (std::ostream &os, const ComparisonTable &table, const Figure &fig);

/// Rebuild a table from the runs.csv written by Render.
ComparisonTable LoadRuns (std::istream &runsCsv);

/// Writes <metric>.csv for every metric, runs.csv, errors.csv and the
/// figure files into dir. Throws EmptyTable when no cell has runs.
void Render (const ComparisonTable &table, const std::string &dir);

} // namespace manet

#endif
