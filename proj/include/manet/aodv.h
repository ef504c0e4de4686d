#ifndef MANET_AODV_H
#define MANET_AODV_H

#include "manet/routing.h"

#include <map>
#include <set>
#include <utility>

namespace manet {

struct AodvEntry
{
  NodeId dest = 0;
  NodeId nextHop = kNoNode;
  std::uint32_t hops = 0;
  std::uint64_t seq = 0;
  bool seqKnown = false;
  bool valid = false;
  SimTime expiresAt = 0.0;
  std::set<NodeId> precursors;
};

struct AodvParams
{
  double activeRouteTimeout = 10.0;
  double discoveryTimeout = 3.0;
  std::uint32_t discoveryRetries = 1;
  std::size_t bufferPerDestination = 64;
  double forwardJitter = 0.01;
  /// When false, intermediate nodes with a fresh route may answer.
  bool destinationOnly = true;
};

/**
 * Ad hoc on-demand distance vector routing without hello messages; link
 * breaks are learned from the link layer only. Requests set the
 * destination-only flag by default. As with DSR, a request copy over a
 * strictly shorter path is forwarded and answered again. Broken routes are
 * reported to precursors with a broadcast route error.
 */
class AodvAgent : public RoutingAgent
{
public:
  AodvAgent (RoutingHost &host, const AodvParams &params = {});

  ProtocolId Protocol () const override { return ProtocolId::Aodv; }

  void ReceiveControl (const Frame &frame) override;
  std::optional<NodeId> NextHopFor (NodeId dest) override;
  std::optional<Route> Lookup (NodeId dest) override;
  bool CanDiscover () const override { return true; }
  void BufferAndDiscover (DataPacket packet) override;
  void OnLinkBreak (NodeId nextHop, const Frame &frame) override;
  void NoteRouteUsed (NodeId dest, const DataPacket &packet) override;
  /// Broadcasts a RERR for the destination so upstream nodes drop stale routes.
  void OnTransitNoRoute (const DataPacket &packet) override;
  std::size_t BufferedCount () const override { return m_buffer.Size (); }
  std::vector<const DataPacket *> BufferedPackets () const override { return m_buffer.Packets (); }

  const std::map<NodeId, AodvEntry> &Table () const { return m_table; }
  std::uint64_t OwnSeq () const { return m_ownSeq; }
  bool Discovering (NodeId dest) const { return m_pending.count (dest) > 0; }

private:
  struct Discovery
  {
    std::uint32_t attempts = 0;
    EventHandle timer;
  };

  bool Active (const AodvEntry &e) const;
  void Refresh (NodeId dest);
  /// Install or improve a route; returns whether the entry changed.
  bool Update (NodeId dest, NodeId nextHop, std::uint32_t hops, std::uint64_t seq, bool seqKnown);
  void StartDiscovery (NodeId dest);
  void DiscoveryTimeout (NodeId dest);
  void FlushBuffers ();
  void HandleRequest (AodvRequest req, NodeId from);
  void HandleReply (AodvReply rep, NodeId from);
  void HandleError (const AodvError &err, NodeId from);
  void Invalidate (const std::vector<AodvError::Item> &items);

  AodvParams m_params;
  std::map<NodeId, AodvEntry> m_table;
  std::map<NodeId, Discovery> m_pending;
  SendBuffer m_buffer;
  /// (origin, request id) -> smallest hop count seen
  std::map<std::pair<NodeId, std::uint32_t>, std::uint32_t> m_seen;
  std::uint64_t m_ownSeq = 0;
  std::uint32_t m_nextRequestId = 1;
};

} // namespace manet

#endif
