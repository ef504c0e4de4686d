#include "manet/metrics.h"

#include <cstdio>

namespace manet {

namespace {

std::string
Num (double v)
{
  char buf[40];
  std::snprintf (buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Round-trips through strtod; runs.csv is reloaded by the report.
std::string
Exact (double v)
{
  char buf[40];
  std::snprintf (buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::uint64_t
RunMetrics::Dropped () const
{
  std::uint64_t n = 0;
  for (auto d : drops)
    {
      n += d;
    }
  return n;
}

RunMetrics
Aggregate (const RunResult &run)
{
  RunMetrics m;
  m.protocol = run.config.protocol;
  m.nodes = run.config.nodes;
  m.seed = run.config.seed;
  m.duration = run.config.duration;

  const double n = static_cast<double> (run.nodes.size ());
  for (const auto &node : run.nodes)
    {
      m.energyIdle += node.idleEnergy;
      m.energyTx += node.txEnergy;
      m.energyRx += node.rxEnergy;
      m.energySleep += node.sleepEnergy;
      m.remaining += node.remaining;
    }
  if (n > 0)
    {
      m.energyIdle /= n;
      m.energyTx /= n;
      m.energyRx /= n;
      m.energySleep /= n;
      m.remaining /= n;
    }

  m.originated = run.originated;
  m.delivered = run.delivered.size ();
  m.drops = run.drops;
  m.bufferedAtEnd = run.bufferedAtEnd;
  m.controlFrames = run.controlFrames;
  m.dataFrames = run.dataFrames;
  m.mobilityDigest = run.mobilityDigest;
  m.trafficDigest = run.trafficDigest;

  m.pdr = m.originated > 0 ? static_cast<double> (m.delivered) / m.originated : 0.0;
  double bits = 0.0;
  double delay = 0.0;
  for (const auto &p : run.delivered)
    {
      bits += 8.0 * p.payloadBytes;
      delay += p.deliveredAt - p.createdAt;
    }
  m.throughput = bits / run.config.duration;
  m.meanDelay = m.delivered > 0 ? delay / m.delivered : 0.0;
  m.routingOverhead = static_cast<double> (m.controlFrames) / std::max<std::uint64_t> (1, m.delivered);
  return m;
}

const std::vector<std::string> &
MetricNames ()
{
  static const std::vector<std::string> names = {
      "energy_idle", "energy_tx",  "energy_rx",        "energy_sleep",   "remaining",
      "pdr",         "throughput", "mean_delay",       "routing_overhead", "control_frames",
  };
  return names;
}

double
MetricValue (const RunMetrics &m, const std::string &name)
{
  if (name == "energy_idle")
    return m.energyIdle;
  if (name == "energy_tx")
    return m.energyTx;
  if (name == "energy_rx")
    return m.energyRx;
  if (name == "energy_sleep")
    return m.energySleep;
  if (name == "remaining")
    return m.remaining;
  if (name == "pdr")
    return m.pdr;
  if (name == "throughput")
    return m.throughput;
  if (name == "mean_delay")
    return m.meanDelay;
  if (name == "routing_overhead")
    return m.routingOverhead;
  if (name == "control_frames")
    return static_cast<double> (m.controlFrames);
  throw SimError ("unknown metric: " + name);
}

void
WriteMetricsCsv (std::ostream &os, const std::vector<RunMetrics> &runs)
{
  os << "protocol,nodes,seed,duration_s,energy_idle_mJ,energy_tx_mJ,energy_rx_mJ,energy_sleep_mJ,remaining_mJ,"
        "pdr,throughput_bps,mean_delay_s,routing_overhead,originated,delivered";
  for (std::size_t c = 0; c < kDropCauseCount; ++c)
    {
      os << ",drop_" << ToString (static_cast<DropCause> (c));
    }
  os << ",buffered_at_end,control_frames,data_frames,mobility_digest,traffic_digest\n";
  for (const auto &m : runs)
    {
      os << ToString (m.protocol) << ',' << m.nodes << ',' << m.seed << ',' << Exact (m.duration) << ','
         << Exact (m.energyIdle) << ',' << Exact (m.energyTx) << ',' << Exact (m.energyRx) << ',' << Exact (m.energySleep)
         << ',' << Exact (m.remaining) << ',' << Exact (m.pdr) << ',' << Exact (m.throughput) << ',' << Exact (m.meanDelay)
         << ',' << Exact (m.routingOverhead) << ',' << m.originated << ',' << m.delivered;
      for (auto d : m.drops)
        {
          os << ',' << d;
        }
      char digests[64];
      std::snprintf (digests, sizeof digests, "%016llx,%016llx", static_cast<unsigned long long> (m.mobilityDigest),
                     static_cast<unsigned long long> (m.trafficDigest));
      os << ',' << m.bufferedAtEnd << ',' << m.controlFrames << ',' << m.dataFrames << ',' << digests << '\n';
    }
}

void
WriteNodesCsv (std::ostream &os, const RunResult &run)
{
  os << "node,idle_mJ,sleep_mJ,tx_mJ,rx_mJ,remaining_mJ,idle_s,sleep_s,tx_s,rx_s,dead_s,mode_idle_s,mode_tx_s,"
        "mode_rx_s,control_frames,data_frames,periodic_updates,died_at\n";
  for (std::size_t i = 0; i < run.nodes.size (); ++i)
    {
      const NodeReport &n = run.nodes[i];
      os << i << ',' << Num (n.idleEnergy) << ',' << Num (n.sleepEnergy) << ',' << Num (n.txEnergy) << ','
         << Num (n.rxEnergy) << ',' << Num (n.remaining) << ',' << Num (n.idleTime) << ',' << Num (n.sleepTime)
         << ',' << Num (n.txTime) << ',' << Num (n.rxTime) << ',' << Num (n.deadTime) << ',' << Num (n.modeTime[0])
         << ',' << Num (n.modeTime[1]) << ',' << Num (n.modeTime[2]) << ',' << n.controlFramesSent << ','
         << n.dataFramesSent << ',' << n.periodicUpdates << ',' << (n.alive ? std::string () : Num (n.diedAt))
         << '\n';
    }
}

void
WritePathsCsv (std::ostream &os, const RunResult &run)
{
  os << "uid,flow,seq,src,dst,created,delivered,path\n";
  for (const auto &p : run.delivered)
    {
      os << p.uid << ',' << p.flow << ',' << p.seq << ',' << p.src << ',' << p.dst << ',' << FormatTime (p.createdAt)
         << ',' << FormatTime (p.deliveredAt) << ',';
      for (std::size_t i = 0; i < p.path.size (); ++i)
        {
          os << (i ? " " : "") << p.path[i];
        }
      os << '\n';
    }
}

} // namespace manet
