#include "doctest.h"

#include "manet/scenario.h"
#include "manet/traffic.h"

#include <set>

using namespace manet;

TEST_CASE ("cbr emission schedule")
{
  CbrFlow f;
  f.startAt = 5.0;
  f.stopAt = 15.0;
  auto s = EmitSchedule (f);
  REQUIRE (s.size () == 80);
  CHECK (s.front () == 5.0);
  for (std::size_t i = 1; i < s.size (); ++i)
    {
      REQUIRE (s[i] - s[i - 1] == doctest::Approx (0.125));
    }
  CHECK (s.back () < 15.0);
  CHECK (PacketCount (f) == 80);

  f.stopAt = f.startAt;
  CHECK (EmitSchedule (f).empty ());

  f.startAt = 0.0;
  f.stopAt = 900.0;
  CHECK (PacketCount (f) == 7200);
}

TEST_CASE ("default flow count and pair selection")
{
  CHECK (DefaultFlowCount (20) == 5);
  CHECK (DefaultFlowCount (5) == 1);
  CHECK (DefaultFlowCount (2) == 1);
  CHECK (DefaultFlowCount (80) == 20);

  RngStream rng (3, "traffic");
  auto flows = BuildFlows (20, FlowTemplate{}, rng);
  REQUIRE (flows.size () == 5);
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const CbrFlow &f : flows)
    {
      CHECK (f.src != f.dst);
      CHECK (f.src < 20);
      CHECK (f.dst < 20);
      CHECK (f.payloadBytes == 512);
      CHECK (f.rate == 8.0);
      pairs.emplace (f.src, f.dst);
    }
  CHECK (pairs.size () == 5);

  RngStream again (3, "traffic");
  auto same = BuildFlows (20, FlowTemplate{}, again);
  CHECK (same.size () == flows.size ());
  CHECK (same[2].src == flows[2].src);
  CHECK (same[2].dst == flows[2].dst);

  RngStream r1 (1, "traffic");
  CHECK_THROWS_AS (BuildFlows (1, FlowTemplate{}, r1), InsufficientNodes);
}

TEST_CASE ("explicit flows override the generated ones")
{
  ScenarioConfig c;
  c.nodes = 10;
  c.duration = 100.0;
  c.Set ("traffic.pairs", "0>4:20-100; 3>7@2/64; 9>1@1:5-6");
  auto flows = c.ExplicitFlows ();
  REQUIRE (flows.size () == 3);
  CHECK (flows[0].src == 0);
  CHECK (flows[0].dst == 4);
  CHECK (flows[0].startAt == 20.0);
  CHECK (flows[0].stopAt == 100.0);
  CHECK (flows[0].rate == 8.0);
  CHECK (flows[1].rate == 2.0);
  CHECK (flows[1].payloadBytes == 64);
  CHECK (flows[1].startAt == 1.0);
  CHECK (flows[1].stopAt == 100.0);
  CHECK (PacketCount (flows[2]) == 1);

  c.Set ("traffic.pairs", "0>0");
  CHECK_THROWS_AS (c.Validate (), SimError);
  c.Set ("traffic.pairs", "0>12");
  CHECK_THROWS_AS (c.Validate (), SimError);
}
