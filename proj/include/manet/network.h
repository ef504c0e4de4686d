#ifndef MANET_NETWORK_H
#define MANET_NETWORK_H

#include "manet/deerp.h"
#include "manet/radio.h"
#include "manet/routing.h"
#include "manet/scenario.h"
#include "manet/simulator.h"

#include <array>
#include <memory>
#include <optional>
#include <ostream>
#include <unordered_set>
#include <vector>

namespace manet {

struct DeliveredPacket
{
  std::uint64_t uid = 0;
  std::uint32_t flow = 0;
  std::uint64_t seq = 0;
  NodeId src = 0;
  NodeId dst = 0;
  SimTime createdAt = 0.0;
  SimTime deliveredAt = 0.0;
  std::uint32_t payloadBytes = 0;
  std::vector<NodeId> path;
};

struct NodeReport
{
  double idleEnergy = 0.0;  // mJ
  double sleepEnergy = 0.0; // mJ
  double txEnergy = 0.0;    // mJ
  double rxEnergy = 0.0;    // mJ
  double remaining = 0.0;   // mJ
  double initial = 0.0;     // mJ
  double idleTime = 0.0;
  double sleepTime = 0.0;
  double txTime = 0.0;
  double rxTime = 0.0;
  double deadTime = 0.0;
  bool alive = true;
  SimTime diedAt = -1.0;
  std::uint64_t controlFramesSent = 0;
  std::uint64_t dataFramesSent = 0;
  std::uint64_t periodicUpdates = 0;
  /// Time spent in each operational mode (idle, tx, rx).
  std::array<double, 3> modeTime{};
};

struct RunResult
{
  ScenarioConfig config;
  std::optional<ProtocolAssignment> assignment;
  std::vector<CbrFlow> flows;

  std::uint64_t originated = 0;
  std::vector<DeliveredPacket> delivered;
  std::array<std::uint64_t, kDropCauseCount> drops{};
  std::uint64_t bufferedAtEnd = 0;

  std::vector<NodeReport> nodes;
  MacCounters mac;
  std::uint64_t controlFrames = 0;
  std::uint64_t dataFrames = 0;
  ProtocolCounters protocol;
  std::uint64_t eventsProcessed = 0;
  std::uint64_t mobilityDigest = 0;
  std::uint64_t trafficDigest = 0;

  std::uint64_t Dropped () const;
  std::uint64_t Drops (DropCause c) const { return drops[static_cast<std::size_t> (c)]; }
};

/// Optional trace sinks; null streams are skipped.
struct TraceSinks
{
  std::ostream *events = nullptr;
  std::ostream *trajectory = nullptr; // time,node,x,y
  std::ostream *energy = nullptr;     // time,node,idle_mJ,sleep_mJ,tx_mJ,rx_mJ,remaining_mJ
  std::ostream *modes = nullptr;      // time,node,mode
};

/**
 * One simulation run: nodes, their radios, energy accounts and routing
 * agents, driven by mobility and CBR traffic. Start(), Advance() and
 * Finish() allow inspection mid-run; Run() does all three.
 */
class Network : private MacListener
{
public:
  /// Validates the config and, for DEERP, selects the assignment from the
  /// given table (or the config's table, or the built-in one).
  explicit Network (const ScenarioConfig &config, std::optional<RpscTable> table = std::nullopt);
  ~Network () override;
  Network (const Network &) = delete;
  Network &operator= (const Network &) = delete;

  void SetTraces (const TraceSinks &sinks) { m_sinks = sinks; }

  void Start ();
  /// Run events up to t (<= duration).
  void Advance (SimTime t);
  RunResult Finish ();
  RunResult Run ();

  Simulator &Sim () { return m_sim; }
  Channel &Link () { return *m_channel; }
  MobilityManager &Mobility () { return m_mobility; }
  const ModeTracker &Modes () const { return m_modes; }
  RoutingAgent &Agent (NodeId node);
  const EnergyAccount &Account (NodeId node) const { return m_accounts.at (node); }
  const std::vector<CbrFlow> &Flows () const { return m_flows; }
  const std::vector<DeliveredPacket> &Delivered () const { return m_delivered; }
  const std::optional<ProtocolAssignment> &Assignment () const { return m_assignment; }
  std::uint32_t NodeCount () const { return m_config.nodes; }

private:
  class Node;
  friend class Node;

  std::unique_ptr<RoutingAgent> MakeAgent (ProtocolId p, Node &node);
  bool NodeSend (NodeId node, NodeId dst, Payload payload);
  void RecordDrop (const DataPacket &packet, DropCause cause);
  void Originate (std::size_t flowIndex, std::uint64_t seq);
  void ScheduleOrigination (std::size_t flowIndex, std::uint64_t seq);
  void SampleEnergy ();

  void OnTransmitStart (NodeId node, const Frame &frame) override;
  void OnFrameTransmitted (NodeId node, const Frame &frame) override;
  void OnFrameReceived (NodeId node, const Frame &frame) override;
  void OnLinkBreak (NodeId node, const Frame &frame) override;
  void OnFrameLost (NodeId node, const Frame &frame) override;

  ScenarioConfig m_config;
  std::optional<ProtocolAssignment> m_assignment;
  Simulator m_sim;
  MobilityManager m_mobility;
  std::vector<EnergyAccount> m_accounts;
  ModeTracker m_modes;
  std::unique_ptr<Channel> m_channel;
  std::vector<std::unique_ptr<Node>> m_nodes;
  RngStream m_trafficRng;
  std::vector<CbrFlow> m_flows;
  std::vector<std::vector<SimTime>> m_schedules;
  TraceSinks m_sinks;
  bool m_started = false;
  bool m_finished = false;

  std::uint64_t m_nextPacketUid = 1;
  std::uint64_t m_originated = 0;
  std::vector<DeliveredPacket> m_delivered;
  std::array<std::uint64_t, kDropCauseCount> m_drops{};
  std::unordered_set<std::uint64_t> m_settled;
  std::vector<std::uint64_t> m_controlSent;
  std::vector<std::uint64_t> m_dataSent;
  std::uint64_t m_eventsProcessed = 0;
};

/// Convenience: construct, run, return.
RunResult RunScenario (const ScenarioConfig &config, const TraceSinks &sinks = {});

} // namespace manet

#endif
