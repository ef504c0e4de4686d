#include "doctest.h"

#include "manet/aodv.h"
#include "manet/dsdv.h"
#include "manet/dsr.h"
#include "support.h"

using namespace manet;
using namespace manet::test;

namespace {

const std::vector<NodeId> kChainPath{0, 1, 2, 3, 4};

} // namespace

TEST_CASE ("every protocol delivers along a five node chain")
{
  for (ProtocolId p : {ProtocolId::Dsr, ProtocolId::Dsdv, ProtocolId::Aodv})
    {
      CAPTURE (ToString (p));
      RunResult r = RunScenario (StaticScenario (Chain (5), p, 100.0, "0>4@2:80-90"));
      CHECK (r.originated == 20);
      CHECK (r.delivered.size () == 20);
      for (const DeliveredPacket &d : r.delivered)
        {
          REQUIRE (d.path == kChainPath);
          REQUIRE (d.deliveredAt > d.createdAt);
        }
      CHECK (CheckAccounts (r) == "");
    }
}

TEST_CASE ("dsdv converges to shortest hop routes through periodic dumps")
{
  ScenarioConfig c = StaticScenario (Chain (6), ProtocolId::Dsdv, 100.0);
  Network net (c);
  net.Start ();
  net.Advance (99.0);
  auto &a = dynamic_cast<DsdvAgent &> (net.Agent (0));
  for (NodeId d = 1; d < 6; ++d)
    {
      REQUIRE (a.Table ().count (d) == 1);
      CHECK (a.Table ().at (d).metric == d);
      CHECK (a.NextHopFor (d) == std::optional<NodeId> (1));
    }
  CHECK (a.OwnSeq () % 2 == 0);
  RunResult r = net.Finish ();
  for (const NodeReport &n : r.nodes)
    {
      CHECK (n.periodicUpdates == 6);
    }
}

TEST_CASE ("dsdv own sequence grows by two per emitted update")
{
  ScenarioConfig c = StaticScenario (Chain (2), ProtocolId::Dsdv, 100.0);
  Network net (c);
  net.Start ();
  auto &a = dynamic_cast<DsdvAgent &> (net.Agent (0));
  const std::uint64_t s0 = a.OwnSeq ();
  net.Advance (16.0);
  CHECK (a.OwnSeq () == s0 + 2);
  net.Advance (31.0);
  CHECK (a.OwnSeq () == s0 + 4);
  net.Finish ();
}

TEST_CASE ("dsdv gate suppresses periodic updates")
{
  ScenarioConfig c = StaticScenario (Chain (3), ProtocolId::Dsdv, 100.0);
  Network net (c);
  auto &a = dynamic_cast<DsdvAgent &> (net.Agent (1));
  a.SetPeriodicGate ([] { return false; });
  RunResult r = net.Run ();
  CHECK (r.nodes[1].periodicUpdates == 0);
  CHECK (r.nodes[0].periodicUpdates == 6);
}

TEST_CASE ("dsr caches the discovered route and its prefixes")
{
  ScenarioConfig c = StaticScenario (Chain (5), ProtocolId::Dsr, 20.0, "0>4@1:1-2");
  Network net (c);
  net.Start ();
  net.Advance (10.0);
  auto &a = dynamic_cast<DsrAgent &> (net.Agent (0));
  auto route = a.CachedRoute (4);
  REQUIRE (route.has_value ());
  CHECK (route->sourceRoute == kChainPath);
  auto prefix = a.CachedRoute (2);
  REQUIRE (prefix.has_value ());
  CHECK (prefix->sourceRoute == std::vector<NodeId>{0, 1, 2});
  a.RemoveLink (2, 3);
  CHECK_FALSE (a.CachedRoute (4).has_value ());
  CHECK (a.CachedRoute (2).has_value ());
  net.Finish ();
}

TEST_CASE ("dsr keeps the shortest routes first and at most four")
{
  ScenarioConfig c = StaticScenario (Chain (2), ProtocolId::Dsr, 1.0);
  Network net (c);
  auto &a = dynamic_cast<DsrAgent &> (net.Agent (0));
  a.AddRoute ({0, 5, 6, 1});
  a.AddRoute ({0, 7, 1});
  a.AddRoute ({0, 8, 9, 10, 1});
  a.AddRoute ({0, 11, 12, 1});
  a.AddRoute ({0, 13, 14, 15, 16, 1});
  auto best = a.CachedRoute (1);
  REQUIRE (best.has_value ());
  CHECK (best->sourceRoute == std::vector<NodeId>{0, 7, 1});
}

TEST_CASE ("dsr sends no control traffic without data")
{
  RunResult r = RunScenario (StaticScenario (Chain (5), ProtocolId::Dsr, 100.0));
  CHECK (r.controlFrames == 0);
  CHECK (r.dataFrames == 0);
}

TEST_CASE ("aodv installs forward and reverse routes with hop counts")
{
  ScenarioConfig c = StaticScenario (Chain (5), ProtocolId::Aodv, 20.0, "0>4@1:1-2");
  Network net (c);
  net.Start ();
  net.Advance (2.5);
  auto &src = dynamic_cast<AodvAgent &> (net.Agent (0));
  auto &dst = dynamic_cast<AodvAgent &> (net.Agent (4));
  REQUIRE (src.Table ().count (4) == 1);
  CHECK (src.Table ().at (4).hops == 4);
  CHECK (src.Table ().at (4).nextHop == 1);
  CHECK (src.Table ().at (4).valid);
  REQUIRE (dst.Table ().count (0) == 1);
  CHECK (dst.Table ().at (0).hops == 4);
  CHECK (dst.Table ().at (0).nextHop == 3);
  // no hello messages and no traffic: routes lapse after the active timeout
  net.Advance (19.0);
  CHECK_FALSE (src.NextHopFor (4).has_value ());
  net.Finish ();
}

TEST_CASE ("unreachable destinations are dropped after discovery gives up")
{
  std::vector<Position> pos{{100, 100}, {300, 100}, {1500, 1500}};
  for (ProtocolId p : {ProtocolId::Dsr, ProtocolId::Aodv, ProtocolId::Dsdv})
    {
      CAPTURE (ToString (p));
      RunResult r = RunScenario (StaticScenario (pos, p, 30.0, "0>2@1:1-3"));
      CHECK (r.originated == 2);
      CHECK (r.delivered.empty ());
      CHECK (r.Drops (DropCause::NoRoute) == 2);
    }
}

TEST_CASE ("a sleeping relay breaks the route and packets are accounted for")
{
  for (ProtocolId p : {ProtocolId::Dsr, ProtocolId::Aodv, ProtocolId::Dsdv})
    {
      CAPTURE (ToString (p));
      ScenarioConfig c = StaticScenario (Chain (3), p, 100.0, "0>2@4:50-70");
      c.Set ("energy.sleep_windows", "1:60-100");
      RunResult r = RunScenario (c);
      CHECK (r.delivered.size () >= 30);
      CHECK (r.delivered.size () < 80);
      CHECK (r.delivered.size () + r.Dropped () + r.bufferedAtEnd == r.originated);
      CHECK (r.protocol.routeBreaks >= 1);
      CHECK (CheckAccounts (r) == "");
    }
}

TEST_CASE ("isolated dsdv node knows only itself")
{
  std::vector<Position> pos{{100, 100}, {1500, 1500}};
  Network net (StaticScenario (pos, ProtocolId::Dsdv, 100.0));
  net.Start ();
  net.Advance (99.0);
  auto &a = dynamic_cast<DsdvAgent &> (net.Agent (0));
  REQUIRE (a.Table ().size () == 1);
  CHECK (a.Table ().begin ()->first == 0);
  CHECK (a.Table ().begin ()->second.metric == 0);
  net.Finish ();
}

TEST_CASE ("no protocol routes to itself")
{
  for (ProtocolId p : {ProtocolId::Dsr, ProtocolId::Aodv, ProtocolId::Dsdv})
    {
      Network net (StaticScenario (Chain (3), p, 40.0, "0>2@1:1-3"));
      net.Start ();
      // reactive routes lapse without traffic, dsdv needs a few dumps
      net.Advance (p == ProtocolId::Dsdv ? 35.0 : 5.0);
      CAPTURE (ToString (p));
      CHECK_FALSE (net.Agent (1).NextHopFor (1).has_value ());
      CHECK (net.Agent (0).NextHopFor (2) == std::optional<NodeId> (1));
      net.Finish ();
    }
}
