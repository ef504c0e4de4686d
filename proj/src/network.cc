#include "manet/network.h"

#include "manet/aodv.h"
#include "manet/dsdv.h"
#include "manet/dsr.h"

#include <cstdio>

namespace manet {

class Network::Node : public RoutingHost
{
public:
  Node (Network &net, NodeId id)
    : m_net (net),
      m_id (id),
      m_jitter (net.m_config.seed, "jitter", id)
  {
  }

  NodeId Self () const override { return m_id; }
  Simulator &Sim () override { return m_net.m_sim; }
  RngStream &Jitter () override { return m_jitter; }
  bool Send (NodeId dst, Payload payload) override { return m_net.NodeSend (m_id, dst, std::move (payload)); }
  void Drop (const DataPacket &packet, DropCause cause) override { m_net.RecordDrop (packet, cause); }
  bool Alive () override
  {
    EnergyAccount &acct = m_net.m_accounts[m_id];
    acct.AccrueTo (m_net.m_sim.Now ());
    return acct.Alive ();
  }

  std::unique_ptr<RoutingAgent> agent;

private:
  Network &m_net;
  NodeId m_id;
  RngStream m_jitter;
};

namespace {

const ScenarioConfig &
Validated (const ScenarioConfig &config)
{
  config.Validate ();
  return config;
}

} // namespace

std::uint64_t
RunResult::Dropped () const
{
  std::uint64_t n = 0;
  for (auto d : drops)
    {
      n += d;
    }
  return n;
}

Network::Network (const ScenarioConfig &config, std::optional<RpscTable> table)
  : m_config (Validated (config)),
    m_mobility (m_config.mobility, m_config.nodes, m_config.seed),
    m_accounts (m_config.nodes, EnergyAccount (m_config.energy)),
    m_modes (m_config.nodes, m_config.modeWindow),
    m_trafficRng (m_config.seed, "traffic"),
    m_controlSent (m_config.nodes, 0),
    m_dataSent (m_config.nodes, 0)
{
  if (m_config.protocol == ProtocolId::Deerp)
    {
      if (!table)
        {
          table = m_config.rpscTable.empty () ? RpscTable::Default () : RpscTable::Load (m_config.rpscTable);
        }
      m_assignment = table->Select (m_config.mobility.model, m_config.nodes, m_config.mobility.speedMin,
                                    m_config.mobility.speedMax, m_config.rpscNearest);
    }

  m_channel = std::make_unique<Channel> (m_sim, m_mobility, m_config.radio, m_accounts, static_cast<MacListener &> (*this));
  for (NodeId id = 0; id < m_config.nodes; ++id)
    {
      m_nodes.push_back (std::make_unique<Node> (*this, id));
      m_nodes.back ()->agent = MakeAgent (m_config.protocol, *m_nodes.back ());
    }

  if (!m_config.flowPairs.empty ())
    {
      m_flows = m_config.ExplicitFlows ();
    }
  else
    {
      FlowTemplate tmpl = m_config.traffic;
      tmpl.stopAt = m_config.TrafficStop ();
      m_flows = BuildFlows (m_config.nodes, tmpl, m_trafficRng);
    }
  for (const auto &f : m_flows)
    {
      m_schedules.push_back (EmitSchedule (f));
    }
}

Network::~Network () = default;

std::unique_ptr<RoutingAgent>
Network::MakeAgent (ProtocolId p, Node &node)
{
  switch (p)
    {
    case ProtocolId::Dsr:
      return std::make_unique<DsrAgent> (node, m_config.dsr);
    case ProtocolId::Dsdv:
      return std::make_unique<DsdvAgent> (node, m_config.dsdv);
    case ProtocolId::Aodv:
      return std::make_unique<AodvAgent> (node, m_config.aodv);
    case ProtocolId::Deerp:
      {
        const NodeId id = node.Self ();
        return std::make_unique<DeerpAgent> (
            node, *m_assignment, [this, id] () { return m_modes.Classify (id, m_sim.Now ()); },
            [this, &node] (ProtocolId q) { return MakeAgent (q, node); });
      }
    }
  throw SimError ("unknown protocol");
}

RoutingAgent &
Network::Agent (NodeId node)
{
  return *m_nodes.at (node)->agent;
}

bool
Network::NodeSend (NodeId node, NodeId dst, Payload payload)
{
  std::optional<DataPacket> data;
  if (const auto *d = std::get_if<DataPacket> (&payload))
    {
      DataPacket brief;
      brief.uid = d->uid;
      brief.flow = d->flow;
      brief.seq = d->seq;
      data = brief;
    }
  if (m_channel->Send (node, dst, std::move (payload)) == EnqueueResult::Accepted)
    {
      return true;
    }
  if (data)
    {
      RecordDrop (*data, m_accounts[node].Alive () ? DropCause::Queue : DropCause::DeadNode);
    }
  return false;
}

void
Network::RecordDrop (const DataPacket &packet, DropCause cause)
{
  if (!m_settled.insert (packet.uid).second)
    {
      throw SimError ("data packet " + std::to_string (packet.uid) + " settled twice");
    }
  ++m_drops[static_cast<std::size_t> (cause)];
}

void
Network::ScheduleOrigination (std::size_t flowIndex, std::uint64_t seq)
{
  const auto &times = m_schedules[flowIndex];
  if (seq >= times.size ())
    {
      return;
    }
  char detail[64];
  std::snprintf (detail, sizeof detail, "cbr flow=%u seq=%llu", m_flows[flowIndex].id,
                 static_cast<unsigned long long> (seq));
  m_sim.Schedule (times[seq], EventKind::Traffic, m_flows[flowIndex].src, detail,
                  [this, flowIndex, seq] () { Originate (flowIndex, seq); });
}

void
Network::Originate (std::size_t flowIndex, std::uint64_t seq)
{
  const CbrFlow &flow = m_flows[flowIndex];
  DataPacket p;
  p.uid = m_nextPacketUid++;
  p.flow = flow.id;
  p.seq = seq;
  p.src = flow.src;
  p.dst = flow.dst;
  p.createdAt = m_sim.Now ();
  p.payloadBytes = flow.payloadBytes;
  p.path.push_back (flow.src);
  ++m_originated;
  ScheduleOrigination (flowIndex, seq + 1);

  if (!m_nodes[flow.src]->Alive ())
    {
      RecordDrop (p, DropCause::DeadNode);
      return;
    }
  m_modes.RecordTx (flow.src, m_sim.Now ());
  m_nodes[flow.src]->agent->OriginateData (std::move (p));
}

void
Network::SampleEnergy ()
{
  const SimTime now = m_sim.Now ();
  for (NodeId n = 0; n < m_config.nodes; ++n)
    {
      EnergyAccount snap = m_accounts[n];
      snap.AccrueTo (now);
      char line[256];
      std::snprintf (line, sizeof line, "%s,%u,%.9f,%.9f,%.9f,%.9f,%.9f\n", FormatTime (now).c_str (), n,
                     snap.ConsumedIdle (), snap.ConsumedSleep (), snap.ConsumedTx (), snap.ConsumedRx (),
                     snap.Remaining ());
      *m_sinks.energy << line;
    }
  const SimTime next = now + m_config.traceInterval;
  if (next <= m_config.duration)
    {
      m_sim.Schedule (next, EventKind::Sample, kNoNode, "energy-sample", [this] () { SampleEnergy (); });
    }
}

void
Network::Start ()
{
  if (m_started)
    {
      return;
    }
  m_started = true;
  m_sim.SetEventLog (m_sinks.events);
  if (m_sinks.energy != nullptr)
    {
      *m_sinks.energy << "time,node,idle_mJ,sleep_mJ,tx_mJ,rx_mJ,remaining_mJ\n";
      m_sim.Schedule (0.0, EventKind::Sample, kNoNode, "energy-sample", [this] () { SampleEnergy (); });
    }
  for (auto &node : m_nodes)
    {
      node->agent->Start ();
    }
  for (const auto &w : m_config.sleepWindows)
    {
      if (w.start > m_config.duration)
        {
          continue;
        }
      const NodeId n = w.node;
      m_sim.Schedule (w.start, EventKind::Timer, n, "sleep-begin", [this, n] () { m_channel->SetSleeping (n, true); });
      if (w.end <= m_config.duration)
        {
          m_sim.Schedule (w.end, EventKind::Timer, n, "sleep-end", [this, n] () { m_channel->SetSleeping (n, false); });
        }
    }
  for (std::size_t i = 0; i < m_flows.size (); ++i)
    {
      ScheduleOrigination (i, 0);
    }
}

void
Network::Advance (SimTime t)
{
  if (m_finished)
    {
      throw SimError ("run already finished");
    }
  Start ();
  m_eventsProcessed += m_sim.RunUntil (std::min (t, m_config.duration)).eventsProcessed;
}

RunResult
Network::Finish ()
{
  Advance (m_config.duration);
  m_finished = true;
  const SimTime end = m_config.duration;
  m_channel->FinishRun (end);

  RunResult r;
  r.config = m_config;
  r.assignment = m_assignment;
  r.flows = m_flows;
  r.originated = m_originated;
  r.delivered = m_delivered;
  r.drops = m_drops;
  r.bufferedAtEnd = m_channel->PendingData ().size ();
  for (auto &node : m_nodes)
    {
      r.bufferedAtEnd += node->agent->BufferedCount ();
      r.protocol += node->agent->TotalCounters ();
    }
  r.mac = m_channel->Counters ();
  r.eventsProcessed = m_eventsProcessed;
  for (NodeId n = 0; n < m_config.nodes; ++n)
    {
      const EnergyAccount &a = m_accounts[n];
      NodeReport nr;
      nr.idleEnergy = a.ConsumedIdle ();
      nr.sleepEnergy = a.ConsumedSleep ();
      nr.txEnergy = a.ConsumedTx ();
      nr.rxEnergy = a.ConsumedRx ();
      nr.remaining = a.Remaining ();
      nr.initial = a.Initial ();
      nr.idleTime = a.IdleTime ();
      nr.sleepTime = a.SleepTime ();
      nr.txTime = a.TxTime ();
      nr.rxTime = a.RxTime ();
      nr.deadTime = a.DeadTime ();
      nr.alive = a.Alive ();
      nr.diedAt = a.DiedAt ();
      nr.controlFramesSent = m_controlSent[n];
      nr.dataFramesSent = m_dataSent[n];
      nr.periodicUpdates = m_nodes[n]->agent->TotalCounters ().periodicUpdates;
      for (const auto &s : m_modes.Timeline (n, end))
        {
          if (s.mode != Mode::Sleep)
            {
              nr.modeTime[static_cast<std::size_t> (s.mode)] += s.end - s.start;
            }
        }
      r.controlFrames += nr.controlFramesSent;
      r.dataFrames += nr.dataFramesSent;
      r.nodes.push_back (nr);
    }
  r.mobilityDigest = m_mobility.TraceDigest (end, 1.0);
  r.trafficDigest = m_trafficRng.Digest ();

  if (r.originated != r.delivered.size () + r.Dropped () + r.bufferedAtEnd)
    {
      throw SimError ("packet conservation violated");
    }
  if (m_sinks.trajectory != nullptr)
    {
      m_mobility.DumpTrajectories (*m_sinks.trajectory, end, m_config.traceInterval);
    }
  if (m_sinks.modes != nullptr)
    {
      m_modes.WriteCsv (*m_sinks.modes, end);
    }
  m_sim.SetEventLog (nullptr);
  return r;
}

RunResult
Network::Run ()
{
  Start ();
  return Finish ();
}

void
Network::OnTransmitStart (NodeId node, const Frame &)
{
  m_modes.RecordTx (node, m_sim.Now ());
}

void
Network::OnFrameTransmitted (NodeId node, const Frame &frame)
{
  if (frame.IsData ())
    {
      ++m_dataSent[node];
    }
  else
    {
      ++m_controlSent[node];
    }
}

void
Network::OnFrameReceived (NodeId node, const Frame &frame)
{
  if (frame.dst == node)
    {
      m_modes.RecordRx (node, m_sim.Now ());
    }
  const auto *data = std::get_if<DataPacket> (&frame.payload);
  if (data == nullptr)
    {
      m_nodes[node]->agent->ReceiveControl (frame);
      return;
    }
  if (frame.dst != node)
    {
      return;
    }
  DataPacket p = *data;
  p.path.push_back (node);
  if (p.dst == node)
    {
      if (!m_settled.insert (p.uid).second)
        {
          throw SimError ("data packet " + std::to_string (p.uid) + " settled twice");
        }
      m_delivered.push_back (DeliveredPacket{p.uid, p.flow, p.seq, p.src, p.dst, p.createdAt, m_sim.Now (),
                                             p.payloadBytes, p.path});
      m_nodes[node]->agent->DataArrived (p, frame.src);
      return;
    }
  m_nodes[node]->agent->ForwardData (std::move (p));
}

void
Network::OnLinkBreak (NodeId node, const Frame &frame)
{
  m_nodes[node]->agent->HandleLinkBreak (frame);
}

void
Network::OnFrameLost (NodeId, const Frame &frame)
{
  if (const auto *d = std::get_if<DataPacket> (&frame.payload))
    {
      RecordDrop (*d, DropCause::DeadNode);
    }
}

RunResult
RunScenario (const ScenarioConfig &config, const TraceSinks &sinks)
{
  Network net (config);
  net.SetTraces (sinks);
  return net.Run ();
}

} // namespace manet
