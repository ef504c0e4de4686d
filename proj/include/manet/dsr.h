#ifndef MANET_DSR_H
#define MANET_DSR_H

#include "manet/routing.h"

#include <map>
#include <utility>

namespace manet {

struct DsrCacheEntry
{
  NodeId dest = 0;
  /// Starts at this node, ends at dest, no repeats.
  std::vector<NodeId> sourceRoute;
  SimTime learnedAt = 0.0;
};

struct DsrParams
{
  double discoveryTimeout = 3.0;
  std::uint32_t discoveryRetries = 1;
  std::size_t routesPerDestination = 4;
  std::size_t bufferPerDestination = 64;
  /// Upper bound of the random delay before re-broadcasting a request.
  double forwardJitter = 0.01;
};

/**
 * Dynamic source routing: flooded route requests accumulate a route
 * record; the target answers along the reversed record and the initiator
 * caches the route (and all its prefixes). Data carries the full route.
 * A broken link is reported back to the packet's source with a route
 * error and removed from every cache on the way.
 *
 * A request copy that arrives over a strictly shorter record than any
 * earlier copy is forwarded (and answered by the target) again, so the
 * shortest route is always among the replies.
 */
class DsrAgent : public RoutingAgent
{
public:
  DsrAgent (RoutingHost &host, const DsrParams &params = {});

  ProtocolId Protocol () const override { return ProtocolId::Dsr; }

  void ReceiveControl (const Frame &frame) override;
  std::optional<NodeId> NextHopFor (NodeId dest) override;
  std::optional<Route> Lookup (NodeId dest) override;
  bool CanDiscover () const override { return true; }
  bool DiscoversInTransit () const override { return true; }
  void BufferAndDiscover (DataPacket packet) override;
  void ForwardSourceRouted (DataPacket packet) override;
  void OnLinkBreak (NodeId nextHop, const Frame &frame) override;
  std::size_t BufferedCount () const override { return m_buffer.Size (); }
  std::vector<const DataPacket *> BufferedPackets () const override { return m_buffer.Packets (); }

  /// Best cached route to dest (shortest, then most recently learned).
  std::optional<DsrCacheEntry> CachedRoute (NodeId dest) const;
  /// Insert a route starting at this node, plus all its prefixes.
  void AddRoute (const std::vector<NodeId> &route);
  /// Forget every cached route using the link from -> to.
  void RemoveLink (NodeId from, NodeId to);
  bool Discovering (NodeId dest) const { return m_pending.count (dest) > 0; }

private:
  struct Discovery
  {
    std::uint32_t attempts = 0;
    EventHandle timer;
  };

  void StartDiscovery (NodeId dest);
  void DiscoveryTimeout (NodeId dest);
  void FlushBuffers ();
  void HandleRequest (const DsrRequest &req);
  void HandleReply (DsrReply reply);
  void HandleError (DsrError err);

  DsrParams m_params;
  std::map<NodeId, std::vector<DsrCacheEntry>> m_cache;
  std::map<NodeId, Discovery> m_pending;
  SendBuffer m_buffer;
  /// (initiator, request id) -> shortest record length seen
  std::map<std::pair<NodeId, std::uint32_t>, std::size_t> m_seen;
  std::uint32_t m_nextRequestId = 1;
};

} // namespace manet

#endif
