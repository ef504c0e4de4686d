#include "manet/report.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace manet {

namespace {

std::string
Num (double v)
{
  char buf[40];
  std::snprintf (buf, sizeof buf, "%.10g", v);
  return buf;
}

const char *const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"};

} // namespace

Summary
Summarize (const std::vector<double> &values)
{
  Summary s;
  s.n = values.size ();
  if (s.n == 0)
    {
      return s;
    }
  double sum = 0.0;
  for (double v : values)
    {
      sum += v;
    }
  s.mean = sum / s.n;
  if (s.n > 1)
    {
      double sq = 0.0;
      for (double v : values)
        {
          sq += (v - s.mean) * (v - s.mean);
        }
      s.stddev = std::sqrt (sq / (s.n - 1));
    }
  return s;
}

const ComparisonCell *
ComparisonTable::Find (ProtocolId p, std::uint32_t nodes) const
{
  for (const auto &c : cells)
    {
      if (c.protocol == p && c.nodes == nodes)
        {
          return &c;
        }
    }
  return nullptr;
}

std::optional<Summary>
ComparisonTable::Get (const std::string &metric, ProtocolId p, std::uint32_t nodes) const
{
  const ComparisonCell *c = Find (p, nodes);
  if (c == nullptr || c->runs.empty ())
    {
      return std::nullopt;
    }
  std::vector<double> values;
  for (const auto &r : c->runs)
    {
      values.push_back (MetricValue (r, metric));
    }
  return Summarize (values);
}

std::size_t
ComparisonTable::RunCount () const
{
  std::size_t n = 0;
  for (const auto &c : cells)
    {
      n += c.runs.size ();
    }
  return n;
}

EmptyTable::EmptyTable ()
  : SimError ("comparison table has no completed runs")
{
}

ComparisonTable
Compare (const std::vector<ScenarioConfig> &points, const std::vector<ProtocolId> &protocols,
         const std::vector<std::uint64_t> &seeds, unsigned threads, const ProgressFn &progress)
{
  if (points.empty () || protocols.empty () || seeds.empty ())
    {
      throw SimError ("compare needs at least one sweep point, protocol and seed");
    }
  ComparisonTable table;
  table.protocols = protocols;
  table.seeds = seeds;
  for (const auto &p : points)
    {
      table.nodeCounts.push_back (p.nodes);
    }

  struct Job
  {
    std::size_t cell;
    ScenarioConfig config;
  };
  std::vector<Job> jobs;
  for (ProtocolId proto : protocols)
    {
      for (const auto &point : points)
        {
          ComparisonCell cell;
          cell.protocol = proto;
          cell.nodes = point.nodes;
          cell.runs.resize (seeds.size ());
          table.cells.push_back (std::move (cell));
          for (std::uint64_t seed : seeds)
            {
              ScenarioConfig c = point;
              c.protocol = proto;
              c.seed = seed;
              jobs.push_back (Job{table.cells.size () - 1, std::move (c)});
            }
        }
    }

  std::vector<std::optional<RunMetrics>> results (jobs.size ());
  std::vector<std::string> errors (jobs.size ());
  std::atomic<std::size_t> next{0};
  std::mutex progressLock;
  auto worker = [&] () {
    for (std::size_t i = next++; i < jobs.size (); i = next++)
      {
        try
          {
            results[i] = Aggregate (RunScenario (jobs[i].config));
            if (progress)
              {
                std::lock_guard<std::mutex> lock (progressLock);
                progress (*results[i]);
              }
          }
        catch (const SimError &e)
          {
            errors[i] = e.what ();
          }
      }
  };
  const unsigned n = std::max (1u, std::min<unsigned> (threads, static_cast<unsigned> (jobs.size ())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t)
    {
      pool.emplace_back (worker);
    }
  worker ();
  for (auto &t : pool)
    {
      t.join ();
    }

  // reduce in job order so the table is independent of scheduling
  for (auto &cell : table.cells)
    {
      cell.runs.clear ();
    }
  for (std::size_t i = 0; i < jobs.size (); ++i)
    {
      ComparisonCell &cell = table.cells[jobs[i].cell];
      if (results[i])
        {
          cell.runs.push_back (*results[i]);
        }
      else if (!cell.error)
        {
          cell.error = errors[i];
        }
    }
  for (auto &cell : table.cells)
    {
      if (cell.error)
        {
          cell.runs.clear ();
        }
    }
  return table;
}

const std::vector<Figure> &
Figures ()
{
  static const std::vector<Figure> figs = {
      {"fig_idle_energy.svg", "energy_idle", "Average energy consumed in idle mode (mJ)"},
      {"fig_tx_energy.svg", "energy_tx", "Average energy consumed in Tx mode (mJ)"},
      {"fig_rx_energy.svg", "energy_rx", "Average energy consumed in Rx mode (mJ)"},
      {"fig_remaining_energy.svg", "remaining", "Average remaining energy (mJ)"},
  };
  return figs;
}

void
WriteMetricCsv (std::ostream &os, const ComparisonTable &table, const std::string &metric)
{
  os << "protocol,node_count,mean,stddev,n\n";
  for (ProtocolId p : table.protocols)
    {
      for (std::uint32_t nodes : table.nodeCounts)
        {
          if (auto s = table.Get (metric, p, nodes))
            {
              os << ToString (p) << ',' << nodes << ',' << Num (s->mean) << ',' << Num (s->stddev) << ',' << s->n
                 << '\n';
            }
        }
    }
}

void
WriteBarChart (std::ostream &os, const ComparisonTable &table, const Figure &fig)
{
  const double width = 720.0;
  const double height = 420.0;
  const double left = 80.0;
  const double right = 150.0;
  const double top = 40.0;
  const double bottom = 50.0;
  const double plotW = width - left - right;
  const double plotH = height - top - bottom;

  double ymax = 0.0;
  for (ProtocolId p : table.protocols)
    {
      for (std::uint32_t nodes : table.nodeCounts)
        {
          if (auto s = table.Get (fig.metric, p, nodes))
            {
              ymax = std::max (ymax, s->mean + s->stddev);
            }
        }
    }
  if (!(ymax > 0.0))
    {
      ymax = 1.0;
    }
  ymax *= 1.05;

  const std::size_t groups = table.nodeCounts.size ();
  const std::size_t bars = table.protocols.size ();
  const double groupW = plotW / groups;
  const double barW = groupW * 0.8 / bars;

  char buf[512];
  std::snprintf (buf, sizeof buf,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                 "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                 width, height, width, height);
  os << buf;
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf (buf, sizeof buf, "<text x=\"%.1f\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
                 left + plotW / 2, fig.title);
  os << buf;

  for (int tick = 0; tick <= 5; ++tick)
    {
      const double v = ymax * tick / 5.0;
      const double y = top + plotH - plotH * tick / 5.0;
      std::snprintf (buf, sizeof buf,
                     "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#dddddd\"/>\n"
                     "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n",
                     left, y, left + plotW, y, left - 6, y + 4, v);
      os << buf;
    }

  for (std::size_t g = 0; g < groups; ++g)
    {
      const std::uint32_t nodes = table.nodeCounts[g];
      const double gx = left + g * groupW + groupW * 0.1;
      for (std::size_t b = 0; b < bars; ++b)
        {
          auto s = table.Get (fig.metric, table.protocols[b], nodes);
          if (!s)
            {
              continue;
            }
          const double h = plotH * s->mean / ymax;
          const double x = gx + b * barW;
          const double y = top + plotH - h;
          std::snprintf (buf, sizeof buf,
                         "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\">"
                         "<title>%s, %u nodes: %.6g</title></rect>\n",
                         x, y, barW * 0.92, h, kPalette[b % 6], ToString (table.protocols[b]).c_str (), nodes,
                         s->mean);
          os << buf;
          if (s->stddev > 0.0)
            {
              const double cx = x + barW * 0.46;
              const double y0 = top + plotH - plotH * (s->mean - s->stddev) / ymax;
              const double y1 = top + plotH - plotH * (s->mean + s->stddev) / ymax;
              std::snprintf (buf, sizeof buf,
                             "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", cx,
                             std::min (y0, top + plotH), cx, y1);
              os << buf;
            }
        }
      std::snprintf (buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%u</text>\n",
                     left + g * groupW + groupW / 2, top + plotH + 18, nodes);
      os << buf;
    }

  std::snprintf (buf, sizeof buf,
                 "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                 "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                 "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">Number of nodes</text>\n",
                 left, top, left, top + plotH, left, top + plotH, left + plotW, top + plotH, left + plotW / 2,
                 height - 12);
  os << buf;

  for (std::size_t b = 0; b < bars; ++b)
    {
      const double y = top + 10 + b * 20;
      std::snprintf (buf, sizeof buf,
                     "<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"14\" fill=\"%s\"/>\n"
                     "<text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                     left + plotW + 20, y, kPalette[b % 6], left + plotW + 40, y + 12,
                     ToString (table.protocols[b]).c_str ());
      os << buf;
    }
  os << "</svg>\n";
}

ComparisonTable
LoadRuns (std::istream &in)
{
  std::string line;
  if (!std::getline (in, line))
    {
      throw EmptyTable ();
    }
  auto split = [] (const std::string &l) {
    std::vector<std::string> out;
    std::istringstream ss (l);
    for (std::string f; std::getline (ss, f, ',');)
      {
        out.push_back (f);
      }
    return out;
  };
  const auto header = split (line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size (); ++i)
    {
      col[header[i]] = i;
    }
  for (const char *need : {"protocol", "nodes", "seed", "energy_idle_mJ", "remaining_mJ"})
    {
      if (!col.count (need))
        {
          throw SimError (std::string ("runs.csv lacks column ") + need);
        }
    }
  auto num = [&] (const std::vector<std::string> &f, const char *name) {
    auto it = col.find (name);
    return it == col.end () || it->second >= f.size () ? 0.0 : std::stod (f[it->second]);
  };
  auto count = [&] (const std::vector<std::string> &f, const std::string &name) -> std::uint64_t {
    auto it = col.find (name);
    return it == col.end () || it->second >= f.size () ? 0 : std::stoull (f[it->second]);
  };
  auto hex = [&] (const std::vector<std::string> &f, const char *name) -> std::uint64_t {
    auto it = col.find (name);
    return it == col.end () || it->second >= f.size () ? 0 : std::stoull (f[it->second], nullptr, 16);
  };

  ComparisonTable table;
  while (std::getline (in, line))
    {
      if (line.empty ())
        {
          continue;
        }
      const auto f = split (line);
      RunMetrics m;
      m.protocol = ParseProtocol (f.at (col["protocol"]));
      m.nodes = static_cast<std::uint32_t> (count (f, "nodes"));
      m.seed = count (f, "seed");
      m.duration = num (f, "duration_s");
      m.energyIdle = num (f, "energy_idle_mJ");
      m.energyTx = num (f, "energy_tx_mJ");
      m.energyRx = num (f, "energy_rx_mJ");
      m.energySleep = num (f, "energy_sleep_mJ");
      m.remaining = num (f, "remaining_mJ");
      m.pdr = num (f, "pdr");
      m.throughput = num (f, "throughput_bps");
      m.meanDelay = num (f, "mean_delay_s");
      m.routingOverhead = num (f, "routing_overhead");
      m.originated = count (f, "originated");
      m.delivered = count (f, "delivered");
      for (std::size_t c = 0; c < kDropCauseCount; ++c)
        {
          m.drops[c] = count (f, std::string ("drop_") + ToString (static_cast<DropCause> (c)));
        }
      m.bufferedAtEnd = count (f, "buffered_at_end");
      m.controlFrames = count (f, "control_frames");
      m.dataFrames = count (f, "data_frames");
      m.mobilityDigest = hex (f, "mobility_digest");
      m.trafficDigest = hex (f, "traffic_digest");

      if (std::find (table.protocols.begin (), table.protocols.end (), m.protocol) == table.protocols.end ())
        {
          table.protocols.push_back (m.protocol);
        }
      if (std::find (table.nodeCounts.begin (), table.nodeCounts.end (), m.nodes) == table.nodeCounts.end ())
        {
          table.nodeCounts.push_back (m.nodes);
        }
      if (std::find (table.seeds.begin (), table.seeds.end (), m.seed) == table.seeds.end ())
        {
          table.seeds.push_back (m.seed);
        }
      auto cell = std::find_if (table.cells.begin (), table.cells.end (), [&] (const ComparisonCell &c) {
        return c.protocol == m.protocol && c.nodes == m.nodes;
      });
      if (cell == table.cells.end ())
        {
          table.cells.push_back (ComparisonCell{m.protocol, m.nodes, {}, std::nullopt});
          cell = table.cells.end () - 1;
        }
      cell->runs.push_back (m);
    }
  std::sort (table.nodeCounts.begin (), table.nodeCounts.end ());
  if (table.RunCount () == 0)
    {
      throw EmptyTable ();
    }
  return table;
}

void
Render (const ComparisonTable &table, const std::string &dir)
{
  namespace fs = std::filesystem;
  fs::create_directories (dir);
  auto open = [&] (const std::string &name) {
    std::ofstream os (fs::path (dir) / name, std::ios::binary);
    if (!os)
      {
        throw SimError ("cannot write " + (fs::path (dir) / name).string ());
      }
    return os;
  };
  // failed cells are recorded even when nothing else ran
  {
    auto os = open ("errors.csv");
    os << "protocol,node_count,error\n";
    for (const auto &c : table.cells)
      {
        if (c.error)
          {
            os << ToString (c.protocol) << ',' << c.nodes << ",\"" << *c.error << "\"\n";
          }
      }
  }
  if (table.RunCount () == 0)
    {
      throw EmptyTable ();
    }
  for (const auto &metric : MetricNames ())
    {
      auto os = open (metric + ".csv");
      WriteMetricCsv (os, table, metric);
    }
  {
    std::vector<RunMetrics> runs;
    for (const auto &c : table.cells)
      {
        runs.insert (runs.end (), c.runs.begin (), c.runs.end ());
      }
    auto os = open ("runs.csv");
    WriteMetricsCsv (os, runs);
  }
  for (const auto &fig : Figures ())
    {
      auto os = open (fig.file);
      WriteBarChart (os, table, fig);
    }
}

} // namespace manet
