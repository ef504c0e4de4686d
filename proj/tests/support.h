#ifndef MANET_TESTS_SUPPORT_H
#define MANET_TESTS_SUPPORT_H

#include "manet/network.h"
#include "manet/scenario.h"

#include <cmath>
#include <deque>
#include <string>
#include <vector>

namespace manet::test {

/// Static topology with explicit positions and no generated traffic unless
/// flows are given.
inline ScenarioConfig
StaticScenario (const std::vector<Position> &positions, ProtocolId protocol, double duration,
                const std::string &flows = "")
{
  ScenarioConfig c;
  c.protocol = protocol;
  c.duration = duration;
  c.nodes = static_cast<std::uint32_t> (positions.size ());
  c.mobility.model = MobilityModel::Static;
  c.mobility.area = Area{2000.0, 2000.0};
  c.mobility.staticPositions = positions;
  if (flows.empty ())
    {
      // one generated flow that never emits
      c.traffic.startAt = duration;
    }
  c.flowPairs = flows;
  return c;
}

inline std::vector<Position>
Chain (std::size_t n, double spacing = 200.0)
{
  std::vector<Position> out;
  for (std::size_t i = 0; i < n; ++i)
    {
      out.push_back (Position{100.0 + spacing * i, 100.0});
    }
  return out;
}

/// Hop distances from src over the unit-disk graph; -1 when unreachable.
inline std::vector<int>
BfsHops (const std::vector<Position> &pos, NodeId src, double range)
{
  std::vector<int> dist (pos.size (), -1);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty ())
    {
      NodeId u = q.front ();
      q.pop_front ();
      for (NodeId v = 0; v < pos.size (); ++v)
        {
          if (dist[v] < 0 && Distance (pos[u], pos[v]) <= range)
            {
              dist[v] = dist[u] + 1;
              q.push_back (v);
            }
        }
    }
  return dist;
}

/// Energy identity and time partition of every node; empty string when fine.
inline std::string
CheckAccounts (const RunResult &r)
{
  for (std::size_t i = 0; i < r.nodes.size (); ++i)
    {
      const NodeReport &n = r.nodes[i];
      const double consumed = n.idleEnergy + n.sleepEnergy + n.txEnergy + n.rxEnergy;
      if (std::abs (n.initial - (n.remaining + consumed)) > 1e-9 * n.initial)
        {
          return "energy identity broken at node " + std::to_string (i);
        }
      const double t = n.idleTime + n.sleepTime + n.txTime + n.rxTime + n.deadTime;
      if (std::abs (t - r.config.duration) > 1e-9)
        {
          return "time partition broken at node " + std::to_string (i) + ": " + std::to_string (t);
        }
    }
  return "";
}

} // namespace manet::test

#endif
