// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "manet/aodv.h"
#include "manet/dsdv.h"
#include "manet/dsr.h"
#include "manet/metrics.h"
#include "manet/report.h"
#include "support.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace manet;
using namespace manet::test;

namespace {

using P = ProtocolId;

struct Outcome
{
  bool pass = true;
  std::string detail;

  void
  Fail (const std::string &why)
  {
    if (pass)
      {
        detail = why;
      }
    pass = false;
  }
};

// every RunResult produced here goes through the account check
std::size_t g_checkedRuns = 0;
std::string g_accountFailure;

RunResult
Checked (RunResult r)
{
  ++g_checkedRuns;
  std::string err = CheckAccounts (r);
  if (!err.empty () && g_accountFailure.empty ())
    {
      g_accountFailure = ToString (r.config.protocol) + " nodes=" + std::to_string (r.config.nodes) + " seed="
                         + std::to_string (r.config.seed) + ": " + err;
    }
  return r;
}

std::string
Fmt (const char *fmt, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf (buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// 1. energy formulas
Outcome
EnergyFormulas ()
{
  Outcome o;
  auto rel = [] (double got, double want) { return std::abs (got - want) / want; };
  if (rel (TxEnergy (4096), 0.67584) > 1e-12)
    {
      o.Fail (Fmt ("tx_energy(4096) = %.17g", TxEnergy (4096)));
    }
  if (rel (RxEnergy (4096), 0.47104) > 1e-12)
    {
      o.Fail (Fmt ("rx_energy(4096) = %.17g", RxEnergy (4096)));
    }
  for (double bytes : {64.0, 512.0, 1500.0})
    {
      const double bits = bytes * 8;
      const double seconds = bits / 2e6;
      const double ptx = TxEnergy (bits) / seconds;
      const double prx = RxEnergy (bits) / seconds;
      if (rel (ptx, 330.0) > 1e-12 || rel (prx, 230.0) > 1e-12)
        {
          o.Fail (Fmt ("%g B: recovered %.17g / %.17g mW", bytes, ptx, prx));
        }
    }
  if (o.pass)
    {
      o.detail = "0.67584 / 0.47104 mJ; 330 / 230 mW recovered for 64, 512, 1500 B";
    }
  return o;
}

// 3. routing against BFS
std::vector<Position>
RandomConnected (RngStream &rng, std::size_t n)
{
  for (;;)
    {
      std::vector<Position> pos;
      for (std::size_t i = 0; i < n; ++i)
        {
          pos.push_back (Position{rng.Uniform (0.0, 700.0), rng.Uniform (0.0, 700.0)});
        }
      auto d = BfsHops (pos, 0, 250.0);
      if (std::find (d.begin (), d.end (), -1) == d.end ())
        {
          return pos;
        }
    }
}

/// Hop count following next hops from src, or -1 on a gap or loop.
int
FollowNextHops (Network &net, NodeId src, NodeId dst)
{
  NodeId at = src;
  int hops = 0;
  while (at != dst)
    {
      auto next = net.Agent (at).NextHopFor (dst);
      if (!next || ++hops > static_cast<int> (net.NodeCount ()))
        {
          return -1;
        }
      at = *next;
    }
  return hops;
}

Outcome
RoutingOracle ()
{
  Outcome o;
  RngStream rng (2024, "acceptance/topology");
  std::size_t pairs = 0;
  std::size_t maxHops = 0;
  std::uint64_t delivered = 0;
  std::uint64_t originated = 0;
  for (int topo = 0; topo < 50 && o.pass; ++topo)
    {
      const std::size_t n = 3 + rng.UniformInt (8);
      const std::vector<Position> pos = RandomConnected (rng, n);
      std::vector<std::vector<int>> bfs;
      for (NodeId s = 0; s < n; ++s)
        {
          bfs.push_back (BfsHops (pos, s, 250.0));
        }
      const std::string tag = "topology " + std::to_string (topo) + " (" + std::to_string (n) + " nodes) ";

      // DSDV: traffic-free, enough periodic dumps to span the diameter
      {
        const double settle = (n + 1) * 15.0 + 1.0;
        ScenarioConfig c = StaticScenario (pos, P::Dsdv, settle + 1.0);
        c.seed = topo + 1;
        Network net (c);
        net.Start ();
        net.Advance (settle);
        for (NodeId s = 0; s < n; ++s)
          {
            for (NodeId d = 0; d < n; ++d)
              {
                if (s != d && FollowNextHops (net, s, d) != bfs[s][d])
                  {
                    o.Fail (tag + "DSDV " + std::to_string (s) + "->" + std::to_string (d));
                  }
              }
          }
        Checked (net.Finish ());
      }

      // reactive protocols: a short burst per ordered pair, 3 s apart; routes
      // checked 2 s after each burst starts, plus the hop count of the last
      // packet that made it through
      std::vector<std::pair<NodeId, NodeId>> order;
      std::string flows;
      for (NodeId s = 0; s < n; ++s)
        {
          for (NodeId d = 0; d < n; ++d)
            {
              if (s != d)
                {
                  const double t = 1.0 + 3.0 * order.size ();
                  order.emplace_back (s, d);
                  flows += (flows.empty () ? "" : ";") + std::to_string (s) + ">" + std::to_string (d) + "@4:"
                           + Fmt ("%g-%g", t, t + 1.0);
                }
            }
        }
      for (P p : {P::Dsr, P::Aodv})
        {
          ScenarioConfig c = StaticScenario (pos, p, 3.0 * order.size () + 2.0, flows);
          c.seed = topo + 1;
          Network net (c);
          net.Start ();
          std::vector<int> lastPathHops (order.size (), -1);
          for (std::size_t i = 0; i < order.size (); ++i)
            {
              auto [s, d] = order[i];
              net.Advance (3.0 + 3.0 * i);
              int hops = -1;
              if (p == P::Dsr)
                {
                  auto route = dynamic_cast<DsrAgent &> (net.Agent (s)).CachedRoute (d);
                  hops = route ? static_cast<int> (route->sourceRoute.size ()) - 1 : -1;
                }
              else
                {
                  hops = FollowNextHops (net, s, d);
                }
              if (hops != bfs[s][d])
                {
                  o.Fail (tag + ToString (p) + " " + std::to_string (s) + "->" + std::to_string (d) + " got "
                          + std::to_string (hops) + " want " + std::to_string (bfs[s][d]));
                }
              maxHops = std::max<std::size_t> (maxHops, bfs[s][d]);
            }
          RunResult r = Checked (net.Finish ());
          for (const DeliveredPacket &dp : r.delivered)
            {
              lastPathHops[dp.flow] = static_cast<int> (dp.path.size ()) - 1;
            }
          for (std::size_t i = 0; i < order.size (); ++i)
            {
              auto [s, d] = order[i];
              if (lastPathHops[i] != bfs[s][d])
                {
                  o.Fail (tag + ToString (p) + " " + std::to_string (s) + "->" + std::to_string (d)
                          + " last packet took " + std::to_string (lastPathHops[i]) + " hops");
                }
            }
          delivered += r.delivered.size ();
          originated += r.originated;
        }
      pairs += order.size ();
    }
  if (o.pass)
    {
      o.detail = "50 topologies, " + std::to_string (pairs) + " ordered pairs (max " + std::to_string (maxHops)
                 + " hops), DSDV/DSR/AODV all equal BFS; reactive bursts delivered " + std::to_string (delivered)
                 + " of " + std::to_string (originated);
    }
  return o;
}

// 4. determinism
Outcome
Determinism ()
{
  Outcome o;
  ScenarioConfig c = Preset ("sim2").At (1);
  c.seed = 42;
  std::set<std::uint64_t> digests;
  for (P p : {P::Dsr, P::Dsdv, P::Aodv, P::Deerp})
    {
      c.protocol = p;
      std::string logs[2];
      std::string csv[2];
      for (int k = 0; k < 2; ++k)
        {
          std::ostringstream events;
          TraceSinks sinks;
          sinks.events = &events;
          RunResult r = Checked (RunScenario (c, sinks));
          std::ostringstream m;
          WriteMetricsCsv (m, {Aggregate (r)});
          logs[k] = events.str ();
          csv[k] = m.str ();
          digests.insert (r.mobilityDigest);
        }
      if (logs[0] != logs[1] || logs[0].empty ())
        {
          o.Fail (ToString (p) + ": event logs differ");
        }
      if (csv[0] != csv[1])
        {
          o.Fail (ToString (p) + ": metrics csv differs");
        }
    }
  if (digests.size () != 1)
    {
      o.Fail ("mobility digest differs across protocols");
    }
  if (o.pass)
    {
      o.detail = "sim2/10 nodes seed 42: event logs and metrics csv identical over two runs for all 4 protocols; "
                 "one mobility digest";
    }
  return o;
}

// 5. DEERP with a degenerate table behaves like the plain protocol
Outcome
DeerpReduction ()
{
  Outcome o;
  std::size_t compared = 0;
  for (P p : {P::Dsdv, P::Dsr})
    {
      for (std::size_t i : {0, 2, 4})
        {
          for (std::uint64_t seed : {1, 2, 3})
            {
              ScenarioConfig c = Preset ("sim2").At (i);
              c.seed = seed;
              c.protocol = p;
              RunResult plain = Checked (RunScenario (c));
              c.protocol = P::Deerp;
              RunResult deerp = Checked (Network (c, RpscTable::Uniform (p)).Run ());
              std::map<std::uint64_t, std::vector<NodeId>> a;
              std::map<std::uint64_t, std::vector<NodeId>> b;
              for (const auto &d : plain.delivered)
                {
                  a[d.uid] = d.path;
                }
              for (const auto &d : deerp.delivered)
                {
                  b[d.uid] = d.path;
                }
              if (a != b)
                {
                  o.Fail (ToString (p) + " nodes=" + std::to_string (c.nodes) + " seed=" + std::to_string (seed)
                          + ": delivered " + std::to_string (a.size ()) + " vs " + std::to_string (b.size ()));
                }
              compared += a.size ();
            }
        }
    }
  if (o.pass)
    {
      o.detail = "uniform DSDV and DSR tables: " + std::to_string (compared)
                 + " delivered packets with identical uid and path, 18 runs each side";
    }
  return o;
}

// 6. idle and remaining energy orderings over the sim2 sweep
Outcome
EnergyOrdering ()
{
  Outcome o;
  Experiment e = Preset ("sim2");
  const std::vector<P> protocols{P::Dsr, P::Dsdv, P::Aodv, P::Deerp};
  int idleOk = 0;
  int remainingOk = 0;
  std::string table;
  for (std::size_t i = 0; i < e.sweep.size (); ++i)
    {
      std::map<P, std::vector<double>> idle;
      std::map<P, std::vector<double>> remaining;
      for (P p : protocols)
        {
          for (std::uint64_t seed = 1; seed <= 10; ++seed)
            {
              ScenarioConfig c = e.At (i);
              c.protocol = p;
              c.seed = seed;
              RunMetrics m = Aggregate (Checked (RunScenario (c)));
              idle[p].push_back (m.energyIdle);
              remaining[p].push_back (m.remaining);
            }
        }
      auto mean = [] (const std::vector<double> &v) { return Summarize (v).mean; };
      const bool idleHolds = mean (idle[P::Deerp]) <= mean (idle[P::Dsdv]);
      const double floor = std::min ({mean (remaining[P::Dsr]), mean (remaining[P::Dsdv]), mean (remaining[P::Aodv])});
      const bool remainingHolds = mean (remaining[P::Deerp]) >= floor;
      idleOk += idleHolds;
      remainingOk += remainingHolds;
      char line[200];
      std::snprintf (line, sizeof line, "\n    n=%-2u idle DEERP %.3f DSDV %.3f %s | remaining DEERP %.3f min %.3f %s",
                     e.At (i).nodes, mean (idle[P::Deerp]), mean (idle[P::Dsdv]), idleHolds ? "ok" : "MISS",
                     mean (remaining[P::Deerp]), floor, remainingHolds ? "ok" : "MISS");
      table += line;
    }
  if (idleOk < 4 || remainingOk < 4)
    {
      o.Fail ("");
    }
  o.detail = "idle ordering " + std::to_string (idleOk) + "/5, remaining ordering " + std::to_string (remainingOk)
             + "/5 (need 4/5), 10 seeds" + table;
  return o;
}

// 7. control traffic without data
Outcome
ControlOverhead ()
{
  Outcome o;
  ScenarioConfig rwp = Preset ("sim2").At (1);
  rwp.duration = 100.0;
  rwp.traffic.startAt = 100.0;
  std::map<P, RunResult> runs;
  for (P p : {P::Deerp, P::Dsr, P::Dsdv})
    {
      rwp.protocol = p;
      runs[p] = Checked (RunScenario (rwp));
    }
  if (runs[P::Deerp].controlFrames != 0)
    {
      o.Fail ("DEERP (RWP) sent " + std::to_string (runs[P::Deerp].controlFrames) + " control frames");
    }
  if (runs[P::Dsr].controlFrames != 0)
    {
      o.Fail ("DSR sent control frames");
    }
  std::uint64_t dsdvMin = ~0ULL;
  for (const auto &n : runs[P::Dsdv].nodes)
    {
      dsdvMin = std::min (dsdvMin, n.controlFramesSent);
    }
  if (dsdvMin < 6)
    {
      o.Fail ("DSDV node sent only " + std::to_string (dsdvMin));
    }

  ScenarioConfig rpgm = Preset ("sim1").At (0);
  rpgm.duration = 100.0;
  rpgm.traffic.startAt = 100.0;
  rpgm.protocol = P::Deerp;
  RunResult r = Checked (RunScenario (rpgm));
  for (std::size_t i = 0; i < r.nodes.size (); ++i)
    {
      if (r.nodes[i].periodicUpdates != 6)
        {
          o.Fail ("DEERP (RPGM) node " + std::to_string (i) + " sent "
                  + std::to_string (r.nodes[i].periodicUpdates) + " periodic updates");
        }
    }
  if (o.pass)
    {
      o.detail = "100 s, no traffic: DEERP/RWP 0 and DSR 0 control frames, DSDV >= " + std::to_string (dsdvMin)
                 + " per node, DEERP/RPGM 6 periodic updates on each of " + std::to_string (r.nodes.size ())
                 + " nodes";
    }
  return o;
}

// 8. selection table
Outcome
RpscLookup ()
{
  Outcome o;
  RpscTable t = RpscTable::Default ();
  if (!(t.Select (MobilityModel::RandomWaypoint, 10, 1.0, 10.0) == ProtocolAssignment{P::Dsr, P::Dsdv, P::Dsr}))
    {
      o.Fail ("RWP row");
    }
  if (!(t.Select (MobilityModel::Rpgm, 50, 0.5, 5.0) == ProtocolAssignment{P::Dsdv, P::Dsdv, P::Dsr}))
    {
      o.Fail ("RPGM row");
    }
  auto raises = [&] (MobilityModel m, std::uint32_t n, double lo, double hi) {
    try
      {
        t.Select (m, n, lo, hi);
      }
    catch (const NoMatchingRow &)
      {
        return true;
      }
    return false;
  };
  if (!raises (MobilityModel::RandomWaypoint, 100, 1.0, 10.0) || !raises (MobilityModel::Rpgm, 10, 0.5, 5.0)
      || !raises (MobilityModel::Rpgm, 50, 0.5, 8.0))
    {
      o.Fail ("out-of-range scenario selected a row");
    }
  if (o.pass)
    {
      o.detail = "RWP 10/1-10 -> DSR,DSDV,DSR; RPGM 50/0.5-5 -> DSDV,DSDV,DSR; out of range -> NoMatchingRow";
    }
  return o;
}

// 9. PDR on a small clique
Outcome
CliquePdr ()
{
  Outcome o;
  const std::vector<Position> clique{{100, 100}, {200, 100}, {100, 200}, {200, 200}, {150, 150}};
  RpscTable table (std::vector<RpscRow>{
      RpscRow{MobilityModel::Static, 1, 1000, 0.0, 1000.0, RpscTable::Default ().Rows ()[0].assignment}});
  std::string detail;
  for (P p : {P::Dsr, P::Dsdv, P::Aodv, P::Deerp})
    {
      RunResult r = Checked (Network (StaticScenario (clique, p, 100.0, "0>4:20-100"), table).Run ());
      RunMetrics m = Aggregate (r);
      if (m.pdr != 1.0)
        {
          o.Fail (ToString (p) + Fmt (" pdr %.6f", m.pdr));
        }
      detail += (detail.empty () ? "" : ", ") + ToString (p) + " " + std::to_string (r.delivered.size ()) + "/"
                + std::to_string (r.originated);
    }
  if (o.pass)
    {
      o.detail = "PDR 1.0: " + detail;
    }
  return o;
}

} // namespace

int
main ()
{
  struct Criterion
  {
    int id;
    const char *name;
    std::function<Outcome ()> run;
  };
  const std::vector<Criterion> all{
      {1, "energy formula exactness", EnergyFormulas},
      {3, "routing oracle equivalence", RoutingOracle},
      {4, "determinism", Determinism},
      {5, "DEERP reduction", DeerpReduction},
      {6, "idle/remaining energy ordering", EnergyOrdering},
      {7, "control overhead mechanism", ControlOverhead},
      {8, "RPSC lookup", RpscLookup},
      {9, "PDR sanity", CliquePdr},
  };
  std::map<int, std::pair<Outcome, double>> results;
  for (const auto &c : all)
    {
      auto t0 = std::chrono::steady_clock::now ();
      Outcome o;
      try
        {
          o = c.run ();
        }
      catch (const std::exception &e)
        {
          o.Fail (std::string ("exception: ") + e.what ());
        }
      results[c.id] = {o, std::chrono::duration<double> (std::chrono::steady_clock::now () - t0).count ()};
    }
  // account conservation covers every run made above
  Outcome conservation;
  if (!g_accountFailure.empty ())
    {
      conservation.Fail (g_accountFailure);
    }
  else
    {
      conservation.detail = std::to_string (g_checkedRuns) + " runs: energy identity within 1e-9 relative, time "
                            "partition within 1e-9 s";
    }
  results[2] = {conservation, 0.0};

  const char *names[] = {"", "energy formula exactness", "account conservation", "routing oracle equivalence",
                         "determinism", "DEERP reduction", "idle/remaining energy ordering",
                         "control overhead mechanism", "RPSC lookup", "PDR sanity"};
  int failed = 0;
  for (auto &[id, res] : results)
    {
      failed += !res.first.pass;
      std::printf ("criterion %d %-31s %s (%.2f s) %s\n", id, names[id], res.first.pass ? "PASS" : "FAIL",
                   res.second, res.first.detail.c_str ());
    }
  std::printf ("%d of %zu criteria passed\n", static_cast<int> (results.size ()) - failed, results.size ());
  return failed == 0 ? 0 : 1;
}
