#include "manet/deerp.h"
#include "manet/metrics.h"
#include "manet/network.h"
#include "manet/report.h"
#include "manet/scenario.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace manet;
namespace fs = std::filesystem;

namespace {

/// Options shared by run and compare, applied in order: preset, config
/// file, named flags, --set.
struct ScenarioOptions
{
  std::string preset;
  std::string configFile;
  std::optional<std::uint64_t> seed;
  std::string protocol;
  std::optional<std::uint32_t> nodes;
  std::string area;
  std::optional<double> speedMin;
  std::optional<double> speedMax;
  std::optional<double> duration;
  std::string mobility;
  std::string flows;
  std::string rpscTable;
  std::vector<std::string> sets;

  void Attach (CLI::App *app)
  {
    app->add_option ("--preset", preset, "start from a preset (sim1, sim2)");
    app->add_option ("--config", configFile, "key = value config file (a manifest works too)");
    app->add_option ("--seed", seed, "random seed");
    app->add_option ("--protocol", protocol, "DSR | DSDV | AODV | DEERP");
    app->add_option ("--nodes", nodes, "node count");
    app->add_option ("--area", area, "WxH or W (square), m");
    app->add_option ("--speed-min", speedMin, "m/s");
    app->add_option ("--speed-max", speedMax, "m/s");
    app->add_option ("--duration", duration, "s");
    app->add_option ("--mobility", mobility, "rwp | rpgm | static");
    app->add_option ("--flows", flows, "flow count, or explicit flows src>dst[@rate][:start-stop][/payload];...");
    app->add_option ("--rpsc-table", rpscTable, "RPSC table file for DEERP");
    app->add_option ("--set", sets, "any config key: --set key=value (repeatable)")->take_all ();
  }

  /// Preset sweep (or nothing) plus the base config with every override applied.
  std::pair<std::optional<Experiment>, ScenarioConfig> Build () const
  {
    std::optional<Experiment> exp;
    ScenarioConfig c;
    if (!preset.empty ())
      {
        exp = Preset (preset);
        c = exp->base;
      }
    if (!configFile.empty ())
      {
        c = ScenarioConfig::Load (configFile, c);
      }
    Apply (c);
    if (exp)
      {
        exp->base = c;
      }
    return {exp, c};
  }

  void Apply (ScenarioConfig &c) const
  {
    if (seed)
      c.seed = *seed;
    if (!protocol.empty ())
      c.Set ("protocol", protocol);
    if (nodes)
      c.nodes = *nodes;
    if (!area.empty ())
      {
        auto x = area.find_first_of ("xX");
        c.Set ("mobility.width", area.substr (0, x));
        c.Set ("mobility.height", x == std::string::npos ? area : area.substr (x + 1));
      }
    if (speedMin)
      c.mobility.speedMin = *speedMin;
    if (speedMax)
      c.mobility.speedMax = *speedMax;
    if (duration)
      c.duration = *duration;
    if (!mobility.empty ())
      c.Set ("mobility.model", mobility);
    if (!flows.empty ())
      {
        c.Set (flows.find ('>') == std::string::npos ? "traffic.flows" : "traffic.pairs", flows);
      }
    if (!rpscTable.empty ())
      c.rpscTable = rpscTable;
    for (const auto &kv : sets)
      {
        auto eq = kv.find ('=');
        if (eq == std::string::npos)
          {
            throw InvalidConfig (kv, "expected key=value");
          }
        c.Set (kv.substr (0, eq), kv.substr (eq + 1));
      }
  }
};

std::ofstream
OpenOut (const fs::path &dir, const std::string &name)
{
  std::ofstream os (dir / name, std::ios::binary);
  if (!os)
    {
      throw SimError ("cannot write " + (dir / name).string ());
    }
  return os;
}

std::string
Manifest (const ScenarioConfig &c, const std::optional<ProtocolAssignment> &assignment)
{
  std::string out = "# manetsim run manifest; reproduce with: manetsim run --config manifest.cfg\n";
  if (assignment)
    {
      out += "# deerp assignment: " + assignment->ToString () + "\n";
    }
  return out + c.Dump ();
}

std::vector<std::uint64_t>
ParseSeeds (const std::string &text)
{
  std::vector<std::uint64_t> out;
  std::istringstream in (text);
  for (std::string part; std::getline (in, part, ',');)
    {
      auto dash = part.find ('-');
      if (dash == std::string::npos)
        {
          out.push_back (std::stoull (part));
          continue;
        }
      const auto lo = std::stoull (part.substr (0, dash));
      const auto hi = std::stoull (part.substr (dash + 1));
      for (auto s = lo; s <= hi; ++s)
        {
          out.push_back (s);
        }
    }
  if (out.empty ())
    {
      throw SimError ("no seeds given");
    }
  return out;
}

std::vector<ProtocolId>
ParseProtocols (const std::string &text)
{
  if (text == "all")
    {
      return {ProtocolId::Dsr, ProtocolId::Dsdv, ProtocolId::Aodv, ProtocolId::Deerp};
    }
  std::vector<ProtocolId> out;
  std::istringstream in (text);
  for (std::string part; std::getline (in, part, ',');)
    {
      out.push_back (ParseProtocol (part));
    }
  return out;
}

/// With a preset and --nodes, take the area of the matching sweep point.
ScenarioConfig
PickPoint (const std::optional<Experiment> &exp, const ScenarioConfig &c, bool nodesGiven)
{
  if (!exp)
    {
      return c;
    }
  for (std::size_t i = 0; i < exp->sweep.size (); ++i)
    {
      if (!nodesGiven || exp->sweep[i].nodes == c.nodes)
        {
          return exp->At (i);
        }
    }
  return c;
}

int
CmdRun (const ScenarioOptions &opts, const std::string &out, bool trace)
{
  auto [exp, base] = opts.Build ();
  ScenarioConfig config = PickPoint (exp, base, opts.nodes.has_value ());
  config.Validate ();
  const fs::path dir (out);
  fs::create_directories (dir);

  Network net (config);
  std::ofstream events, trajectory, energy, modes;
  TraceSinks sinks;
  if (trace)
    {
      events = OpenOut (dir, "events.log");
      trajectory = OpenOut (dir, "trajectory.csv");
      energy = OpenOut (dir, "energy.csv");
      modes = OpenOut (dir, "modes.csv");
      sinks = TraceSinks{&events, &trajectory, &energy, &modes};
    }
  net.SetTraces (sinks);
  const RunResult result = net.Run ();
  const RunMetrics m = Aggregate (result);

  {
    auto os = OpenOut (dir, "manifest.cfg");
    os << Manifest (config, result.assignment);
  }
  {
    auto os = OpenOut (dir, "metrics.csv");
    WriteMetricsCsv (os, {m});
  }
  {
    auto os = OpenOut (dir, "nodes.csv");
    WriteNodesCsv (os, result);
  }
  {
    auto os = OpenOut (dir, "paths.csv");
    WritePathsCsv (os, result);
  }

  std::printf ("%s nodes=%u seed=%llu duration=%gs%s\n", ToString (config.protocol).c_str (), config.nodes,
               static_cast<unsigned long long> (config.seed), config.duration,
               result.assignment ? (" [" + result.assignment->ToString () + "]").c_str () : "");
  std::printf ("  originated %llu delivered %llu dropped %llu buffered %llu pdr %.4f\n",
               static_cast<unsigned long long> (m.originated), static_cast<unsigned long long> (m.delivered),
               static_cast<unsigned long long> (m.Dropped ()), static_cast<unsigned long long> (m.bufferedAtEnd),
               m.pdr);
  std::printf ("  energy per node (mJ): idle %.3f tx %.3f rx %.3f sleep %.3f remaining %.3f\n", m.energyIdle,
               m.energyTx, m.energyRx, m.energySleep, m.remaining);
  std::printf ("  control frames %llu, overhead %.4f, mean delay %.6f s\n",
               static_cast<unsigned long long> (m.controlFrames), m.routingOverhead, m.meanDelay);
  std::printf ("  artifacts in %s\n", dir.string ().c_str ());
  return 0;
}

int
CmdCompare (const ScenarioOptions &opts, const std::string &out, const std::string &protocols,
            const std::string &seeds, unsigned threads)
{
  auto [exp, base] = opts.Build ();
  std::vector<ScenarioConfig> points;
  if (exp && !opts.nodes)
    {
      for (std::size_t i = 0; i < exp->sweep.size (); ++i)
        {
          points.push_back (exp->At (i));
        }
    }
  else
    {
      points.push_back (PickPoint (exp, base, opts.nodes.has_value ()));
    }
  for (const auto &p : points)
    {
      p.Validate ();
    }
  const auto protos = ParseProtocols (protocols);
  const auto seedList = ParseSeeds (seeds);
  const std::size_t total = protos.size () * points.size () * seedList.size ();
  std::fprintf (stderr, "running %zu simulations on %u thread(s)\n", total, threads);

  std::size_t done = 0;
  const ComparisonTable table = Compare (points, protos, seedList, threads, [&] (const RunMetrics &m) {
    ++done;
    std::fprintf (stderr, "  [%zu/%zu] %s nodes=%u seed=%llu pdr=%.3f\n", done, total, ToString (m.protocol).c_str (),
                  m.nodes, static_cast<unsigned long long> (m.seed), m.pdr);
  });
  for (const auto &cell : table.cells)
    {
      if (cell.error)
        {
          std::fprintf (stderr, "  %s nodes=%u failed: %s\n", ToString (cell.protocol).c_str (), cell.nodes,
                        cell.error->c_str ());
        }
    }
  Render (table, out);
  {
    auto os = OpenOut (out, "manifest.cfg");
    os << "# comparison base config; protocols=" << protocols << " seeds=" << seeds << "\n";
    if (exp && !opts.nodes)
      {
        os << "# sweep (nodes:width x height):";
        for (const auto &p : exp->sweep)
          {
            os << ' ' << p.nodes << ':' << p.width << 'x' << p.height;
          }
        os << '\n';
      }
    os << points.front ().Dump ();
  }

  std::printf ("%-6s %6s %14s %14s %14s %14s %8s\n", "proto", "nodes", "idle_mJ", "tx_mJ", "rx_mJ", "remaining_mJ",
               "pdr");
  for (const auto &cell : table.cells)
    {
      if (cell.runs.empty ())
        {
          continue;
        }
      auto get = [&] (const char *metric) { return table.Get (metric, cell.protocol, cell.nodes)->mean; };
      std::printf ("%-6s %6u %14.3f %14.3f %14.3f %14.3f %8.4f\n", ToString (cell.protocol).c_str (), cell.nodes,
                   get ("energy_idle"), get ("energy_tx"), get ("energy_rx"), get ("remaining"), get ("pdr"));
    }
  std::printf ("report in %s\n", out.c_str ());
  return 0;
}

int
CmdPreset (const std::string &name)
{
  const Experiment e = Preset (name);
  std::printf ("# preset %s\n# sweep (nodes:width x height):", e.name.c_str ());
  for (const auto &p : e.sweep)
    {
      std::printf (" %u:%gx%g", p.nodes, p.width, p.height);
    }
  std::printf ("\n%s", e.base.Dump ().c_str ());
  return 0;
}

int
CmdRender (const std::string &from, const std::string &out)
{
  const fs::path runs = fs::is_directory (from) ? fs::path (from) / "runs.csv" : fs::path (from);
  std::ifstream in (runs);
  if (!in)
    {
      throw SimError ("cannot read " + runs.string ());
    }
  Render (LoadRuns (in), out);
  std::printf ("rendered %s into %s\n", from.c_str (), out.c_str ());
  return 0;
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"manetsim: MANET routing and energy simulator (DSR, DSDV, AODV, DEERP)"};
  app.require_subcommand (1);
  bool listKeys = false;
  app.add_flag ("--list-keys", listKeys, "print every config key and exit");

  ScenarioOptions runOpts;
  std::string runOut = "out";
  bool trace = false;
  auto *run = app.add_subcommand ("run", "run one simulation");
  runOpts.Attach (run);
  run->add_option ("--out", runOut, "output directory");
  run->add_flag ("--trace", trace, "also write events.log, trajectory.csv, energy.csv, modes.csv");

  ScenarioOptions cmpOpts;
  std::string cmpOut = "report";
  std::string protocols = "all";
  std::string seeds = "1-10";
  unsigned threads = std::max (1u, std::thread::hardware_concurrency ());
  auto *compare = app.add_subcommand ("compare", "compare protocols over seeds (and a preset sweep)");
  cmpOpts.Attach (compare);
  compare->add_option ("--out", cmpOut, "report directory");
  compare->add_option ("--protocols", protocols, "comma list or 'all'");
  compare->add_option ("--seeds", seeds, "e.g. 1-10 or 1,2,5");
  compare->add_option ("--threads", threads, "worker threads");

  std::string presetName;
  auto *preset = app.add_subcommand ("preset", "print a preset's config and sweep");
  preset->add_option ("name", presetName, "sim1 | sim2")->required ();

  std::string renderFrom;
  std::string renderOut;
  auto *render = app.add_subcommand ("render", "re-render CSVs and charts from a report's runs.csv");
  render->add_option ("--from", renderFrom, "report directory or its runs.csv")->required ();
  render->add_option ("--out", renderOut, "output directory (default: --from)");

  if (argc > 1 && std::string (argv[1]) == "--list-keys")
    {
      for (const auto &f : ConfigFields ())
        {
          std::printf ("%-24s %s\n", f.key.c_str (), f.help.c_str ());
        }
      return 0;
    }
  CLI11_PARSE (app, argc, argv);

  try
    {
      if (run->parsed ())
        {
          return CmdRun (runOpts, runOut, trace);
        }
      if (compare->parsed ())
        {
          return CmdCompare (cmpOpts, cmpOut, protocols, seeds, threads);
        }
      if (preset->parsed ())
        {
          return CmdPreset (presetName);
        }
      if (render->parsed ())
        {
          if (renderOut.empty ())
            {
              renderOut = fs::is_directory (renderFrom) ? renderFrom : fs::path (renderFrom).parent_path ().string ();
            }
          return CmdRender (renderFrom, renderOut.empty () ? std::string (".") : renderOut);
        }
    }
  catch (const SimError &e)
    {
      std::fprintf (stderr, "error: %s\n", e.what ());
      return 1;
    }
  catch (const std::exception &e)
    {
      std::fprintf (stderr, "error: %s\n", e.what ());
      return 1;
    }
  return 0;
}
