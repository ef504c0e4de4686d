#ifndef MANET_ROUTING_H
#define MANET_ROUTING_H

#include "manet/packet.h"
#include "manet/rng.h"
#include "manet/simulator.h"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace manet {

enum class DropCause
{
  Queue,
  NoRoute,
  DeadNode,
  LinkBreak,
  Ttl,
  BufferOverflow,
};

inline constexpr std::size_t kDropCauseCount = 6;
const char *ToString (DropCause c);

/// Services a node offers to its routing agent.
class RoutingHost
{
public:
  virtual ~RoutingHost () = default;
  virtual NodeId Self () const = 0;
  virtual Simulator &Sim () = 0;
  virtual RngStream &Jitter () = 0;
  /// Hand a frame to the link layer; dst may be kBroadcast. Returns false
  /// if the frame was refused (queue full or node dead); refused data
  /// packets are already accounted as drops.
  virtual bool Send (NodeId dst, Payload payload) = 0;
  virtual void Drop (const DataPacket &packet, DropCause cause) = 0;
  virtual bool Alive () = 0;

  SimTime Now () { return Sim ().Now (); }
};

struct Route
{
  NodeId nextHop = kNoNode;
  /// Full source route starting at this node; empty for hop-by-hop.
  std::vector<NodeId> sourceRoute;
  std::uint32_t hops = 0;
};

struct ProtocolCounters
{
  std::uint64_t controlSent = 0;
  std::uint64_t controlReceived = 0;
  std::uint64_t discoveries = 0;
  std::uint64_t routeBreaks = 0;
  std::uint64_t periodicUpdates = 0;
  std::uint64_t triggeredUpdates = 0;

  ProtocolCounters &operator+= (const ProtocolCounters &o);
};

/**
 * Per-node routing agent. The data path is shared by every protocol:
 * look a route up, send along it, otherwise discover (reactive agents) or
 * drop. Agents differ in how routes are learned and looked up.
 */
class RoutingAgent
{
public:
  explicit RoutingAgent (RoutingHost &host);
  virtual ~RoutingAgent () = default;
  RoutingAgent (const RoutingAgent &) = delete;
  RoutingAgent &operator= (const RoutingAgent &) = delete;

  virtual ProtocolId Protocol () const = 0;
  /// Arm periodic timers; called once when the run starts.
  virtual void Start () {}

  /// Data generated at this node.
  void OriginateData (DataPacket packet);
  /// Data received from a neighbour that is not addressed to this node.
  void ForwardData (DataPacket packet);
  /// Data addressed to this node arrived from `from`.
  virtual void DataArrived (const DataPacket &, NodeId /*from*/) {}

  virtual void ReceiveControl (const Frame &frame) = 0;
  /// A unicast frame sent by this node found its next hop gone. Drops the
  /// carried data packet, if any, after the agent updates its state.
  void HandleLinkBreak (const Frame &frame);

  /// Next hop this node would use toward dest right now; never triggers
  /// discovery. nullopt for dest == self.
  virtual std::optional<NodeId> NextHopFor (NodeId dest) = 0;

  // Building blocks, public so a composite agent can drive its parts.
  virtual std::optional<Route> Lookup (NodeId dest) = 0;
  virtual bool CanDiscover () const { return false; }
  /// Discovery for packets in transit (not originated here).
  virtual bool DiscoversInTransit () const { return false; }
  virtual void BufferAndDiscover (DataPacket packet);
  virtual void ForwardSourceRouted (DataPacket packet);
  virtual void OnLinkBreak (NodeId nextHop, const Frame &frame) = 0;
  /// Hook called when a hop-by-hop route is used to forward data.
  virtual void NoteRouteUsed (NodeId /*dest*/, const DataPacket & /*packet*/) {}
  /// A packet in transit found no route and is about to be dropped.
  virtual void OnTransitNoRoute (const DataPacket & /*packet*/) {}
  /// Data packets held while waiting for a route.
  virtual std::size_t BufferedCount () const { return 0; }
  virtual std::vector<const DataPacket *> BufferedPackets () const { return {}; }

  void SendDataVia (DataPacket packet, const Route &route);

  const ProtocolCounters &Counters () const { return m_counters; }
  virtual ProtocolCounters TotalCounters () const { return m_counters; }

protected:
  void RouteData (DataPacket packet, bool transit);
  bool SendControl (NodeId dst, Payload payload);

  RoutingHost &m_host;
  ProtocolCounters m_counters;
};

/// Send buffer shared by reactive agents: per destination FIFO, bounded.
class SendBuffer
{
public:
  explicit SendBuffer (std::size_t perDestination = 64);

  /// False if the destination's buffer is full.
  bool Push (DataPacket packet);
  std::vector<DataPacket> Take (NodeId dest);
  bool Has (NodeId dest) const;
  std::vector<NodeId> Destinations () const;
  std::size_t Size () const;
  std::vector<const DataPacket *> Packets () const;

private:
  std::size_t m_capacity;
  std::map<NodeId, std::vector<DataPacket>> m_queues;
};

} // namespace manet

#endif
