#ifndef MANET_METRICS_H
#define MANET_METRICS_H

#include "manet/network.h"

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace manet {

/// Network-level summary of one run. Energies are per-node means in mJ.
struct RunMetrics
{
  ProtocolId protocol = ProtocolId::Dsr;
  std::uint32_t nodes = 0;
  std::uint64_t seed = 0;
  double duration = 0.0;

  double energyIdle = 0.0;
  double energyTx = 0.0;
  double energyRx = 0.0;
  double energySleep = 0.0;
  double remaining = 0.0;

  double pdr = 0.0;
  double throughput = 0.0; // delivered payload bit/s
  double meanDelay = 0.0;  // s, delivered packets only
  /// Control frames transmitted per delivered data packet.
  double routingOverhead = 0.0;

  std::uint64_t originated = 0;
  std::uint64_t delivered = 0;
  std::array<std::uint64_t, kDropCauseCount> drops{};
  std::uint64_t bufferedAtEnd = 0;
  std::uint64_t controlFrames = 0;
  std::uint64_t dataFrames = 0;
  std::uint64_t mobilityDigest = 0;
  std::uint64_t trafficDigest = 0;

  std::uint64_t Dropped () const;
};

RunMetrics Aggregate (const RunResult &run);

/// Names usable with MetricValue, in report order.
const std::vector<std::string> &MetricNames ();
/// Throws SimError on an unknown name.
double MetricValue (const RunMetrics &m, const std::string &name);

/// Header plus one row.
void WriteMetricsCsv (std::ostream &os, const std::vector<RunMetrics> &runs);
/// Per-node energy, time partition and frame counts.
void WriteNodesCsv (std::ostream &os, const RunResult &run);
/// Delivered packets with their paths (space separated node ids).
void WritePathsCsv (std::ostream &os, const RunResult &run);

} // namespace manet

#endif
