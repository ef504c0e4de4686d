#include "doctest.h"

#include "manet/radio.h"

#include <memory>

using namespace manet;

namespace {

struct Recorder : MacListener
{
  std::vector<std::pair<NodeId, std::uint64_t>> received;
  std::vector<std::pair<NodeId, std::uint64_t>> breaks;
  std::vector<SimTime> receiveTimes;
  Simulator *sim = nullptr;
  int started = 0;
  int transmitted = 0;

  void OnTransmitStart (NodeId, const Frame &) override { ++started; }
  void OnFrameTransmitted (NodeId, const Frame &) override { ++transmitted; }
  void
  OnFrameReceived (NodeId node, const Frame &f) override
  {
    received.emplace_back (node, f.uid);
    receiveTimes.push_back (sim->Now ());
  }
  void OnLinkBreak (NodeId node, const Frame &f) override { breaks.emplace_back (node, f.uid); }
  void OnFrameLost (NodeId, const Frame &) override {}
};

struct Bench
{
  Simulator sim;
  MobilityConfig mob;
  std::unique_ptr<MobilityManager> mobility;
  std::vector<EnergyAccount> accounts;
  Recorder rec;
  std::unique_ptr<Channel> channel;

  explicit Bench (std::vector<Position> pos, RadioConfig radio = {})
  {
    mob.model = MobilityModel::Static;
    mob.area = Area{2000.0, 2000.0};
    mob.staticPositions = pos;
    mobility = std::make_unique<MobilityManager> (mob, pos.size (), 1);
    accounts.resize (pos.size ());
    rec.sim = &sim;
    channel = std::make_unique<Channel> (sim, *mobility, radio, accounts, rec);
  }
};

DataPacket
Data (NodeId src, NodeId dst, std::uint32_t bytes = 512)
{
  DataPacket p;
  p.src = src;
  p.dst = dst;
  p.payloadBytes = bytes;
  return p;
}

} // namespace

TEST_CASE ("unit disk connectivity")
{
  Bench b ({{0, 0}, {100, 0}, {251, 0}, {250, 0}});
  CHECK (b.channel->InRange (0, 1, 0.0));
  CHECK_FALSE (b.channel->InRange (0, 2, 0.0));
  CHECK (b.channel->InRange (0, 3, 0.0));
  for (NodeId i = 0; i < 4; ++i)
    {
      for (NodeId j = 0; j < 4; ++j)
        {
          REQUIRE (b.channel->InRange (i, j, 5.0) == b.channel->InRange (j, i, 5.0));
        }
    }
  CHECK (b.channel->Neighbors (0, 0.0) == std::vector<NodeId>{1, 3});
}

TEST_CASE ("airtime follows frame size over bitrate")
{
  Bench b ({{0, 0}, {10, 0}});
  CHECK (b.channel->Airtime (4096) == doctest::Approx (0.002048));
  CHECK (b.channel->FrameBits (Data (0, 1)) == (512u + 58u) * 8u);
}

TEST_CASE ("drop-tail queue keeps fifty frames")
{
  InterfaceQueue q (50);
  for (int i = 0; i < 50; ++i)
    {
      REQUIRE (q.Enqueue (Frame{}) == EnqueueResult::Accepted);
    }
  CHECK (q.Enqueue (Frame{}) == EnqueueResult::Dropped);
  CHECK (q.Size () == 50);
}

TEST_CASE ("control priority moves control frames ahead of data")
{
  InterfaceQueue q (10, true);
  Frame d;
  d.uid = 1;
  d.payload = Data (0, 1);
  Frame c;
  c.uid = 2;
  c.payload = DsdvAdvert{};
  q.Enqueue (d);
  q.Enqueue (c);
  CHECK (q.Pop ().uid == 2);
  CHECK (q.Pop ().uid == 1);
}

TEST_CASE ("channel drops when the queue overflows")
{
  Bench b ({{0, 0}, {10, 0}});
  int dropped = 0;
  for (int i = 0; i < 60; ++i)
    {
      if (b.channel->Send (0, 1, Data (0, 1)) == EnqueueResult::Dropped)
        {
          ++dropped;
        }
    }
  CHECK (dropped >= 9);
  CHECK (b.channel->Counters ().droppedQueue == static_cast<std::uint64_t> (dropped));
  b.sim.RunUntil (10.0);
  CHECK (b.rec.received.size () == static_cast<std::size_t> (60 - dropped));
}

TEST_CASE ("unicast arrives after one airtime and charges both ends")
{
  Bench b ({{0, 0}, {100, 0}});
  b.channel->Send (0, 1, Data (0, 1, 442));
  b.sim.RunUntil (1.0);
  REQUIRE (b.rec.received.size () == 1);
  CHECK (b.rec.received[0].first == 1);
  CHECK (b.rec.receiveTimes[0] == doctest::Approx (0.002));
  CHECK (b.accounts[0].ConsumedTx () == doctest::Approx (0.66));
  CHECK (b.accounts[1].ConsumedRx () == doctest::Approx (0.46));
}

TEST_CASE ("broadcast reaches every neighbour in range once")
{
  Bench b ({{500, 500}, {600, 500}, {400, 500}, {500, 700}, {1000, 1000}});
  b.channel->Send (0, kBroadcast, DsdvAdvert{});
  b.sim.RunUntil (1.0);
  CHECK (b.rec.received.size () == 3);
  std::vector<NodeId> who;
  for (auto &r : b.rec.received)
    {
      who.push_back (r.first);
    }
  std::sort (who.begin (), who.end ());
  CHECK (who == std::vector<NodeId>{1, 2, 3});
  CHECK (b.accounts[4].ConsumedRx () == 0.0);
}

TEST_CASE ("chain broadcast reaches only the adjacent node")
{
  Bench b ({{100, 100}, {300, 100}, {500, 100}});
  b.channel->Send (0, kBroadcast, DsdvAdvert{});
  b.sim.RunUntil (1.0);
  REQUIRE (b.rec.received.size () == 1);
  CHECK (b.rec.received[0].first == 1);
}

TEST_CASE ("unicast out of range is reported as a link break")
{
  Bench b ({{0, 0}, {600, 0}});
  b.channel->Send (0, 1, Data (0, 1));
  b.sim.RunUntil (1.0);
  CHECK (b.rec.received.empty ());
  CHECK (b.rec.breaks.size () == 1);
  CHECK (b.channel->Counters ().linkBreaks == 1);
  CHECK (b.accounts[0].ConsumedTx () > 0.0);
}

TEST_CASE ("static in-range pair never breaks")
{
  Bench b ({{0, 0}, {200, 0}});
  for (int i = 0; i < 40; ++i)
    {
      b.channel->Send (i % 2, 1 - i % 2, Data (i % 2, 1 - i % 2));
    }
  b.sim.RunUntil (5.0);
  CHECK (b.channel->Counters ().linkBreaks == 0);
  CHECK (b.rec.received.size () == 40);
}

TEST_CASE ("radios are exclusive: transmissions never overlap")
{
  Bench b ({{0, 0}, {100, 0}, {200, 0}});
  b.channel->Send (0, 1, Data (0, 1));
  b.channel->Send (2, 1, Data (2, 1));
  b.sim.RunUntil (1.0);
  REQUIRE (b.rec.receiveTimes.size () == 2);
  const double air = b.channel->Airtime ((512 + 58) * 8);
  CHECK (b.rec.receiveTimes[1] - b.rec.receiveTimes[0] >= air - 1e-12);
}
