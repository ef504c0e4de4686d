#ifndef MANET_PACKET_H
#define MANET_PACKET_H

#include "manet/types.h"

#include <cstdint>
#include <variant>
#include <vector>

namespace manet {

struct DataPacket
{
  std::uint64_t uid = 0;
  std::uint32_t flow = 0;
  std::uint64_t seq = 0;
  NodeId src = 0;
  NodeId dst = 0;
  SimTime createdAt = 0.0;
  std::uint32_t payloadBytes = 512;
  std::uint32_t ttl = 64;
  /// Nodes that have held the packet, starting at the source.
  std::vector<NodeId> path;
  /// Full source route (DSR); empty for hop-by-hop forwarding.
  std::vector<NodeId> sourceRoute;
  /// Index of the current holder within sourceRoute.
  std::uint32_t routeIndex = 0;
};

struct DsdvAdvert
{
  struct Item
  {
    NodeId dest;
    std::uint32_t metric;
    std::uint64_t seq;
  };
  std::vector<Item> items;
  bool triggered = false;
};

struct DsrRequest
{
  NodeId initiator = 0;
  NodeId target = 0;
  std::uint32_t requestId = 0;
  /// Initiator first, then every node that forwarded the request.
  std::vector<NodeId> record;
};

struct DsrReply
{
  /// initiator .. target
  std::vector<NodeId> route;
  /// Index of the node currently holding the reply (walks toward 0).
  std::uint32_t position = 0;
};

struct DsrError
{
  NodeId linkFrom = 0;
  NodeId linkTo = 0;
  /// Breaking node back to the packet source.
  std::vector<NodeId> path;
  std::uint32_t position = 0;
};

struct AodvRequest
{
  NodeId origin = 0;
  std::uint64_t originSeq = 0;
  std::uint32_t requestId = 0;
  NodeId dest = 0;
  std::uint64_t destSeq = 0;
  bool destSeqKnown = false;
  bool destinationOnly = true;
  std::uint32_t hopCount = 0;
};

struct AodvReply
{
  NodeId origin = 0;
  NodeId dest = 0;
  std::uint64_t destSeq = 0;
  std::uint32_t hopCount = 0;
};

struct AodvError
{
  struct Item
  {
    NodeId dest;
    std::uint64_t seq;
  };
  std::vector<Item> unreachable;
};

using Payload = std::variant<DataPacket, DsdvAdvert, DsrRequest, DsrReply, DsrError, AodvRequest, AodvReply, AodvError>;

/// Protocol a control payload belongs to; data returns nullopt-like Deerp.
bool IsControl (const Payload &p);
ProtocolId ControlProtocol (const Payload &p);
const char *PayloadName (const Payload &p);

/**
 * Wire sizes (bytes, before link overhead):
 *   data         payload, plus 4 + 4 per address when source routed
 *   DSDV update  20 + 12 per entry
 *   DSR request  64 + 4 per recorded address (reply and error likewise)
 *   AODV RREQ/RREP/RERR  24
 */
std::uint32_t PayloadBytes (const Payload &p);

struct Frame
{
  std::uint64_t uid = 0;
  NodeId src = 0;
  NodeId dst = kBroadcast;
  Payload payload;
  std::uint32_t sizeBits = 0;
  SimTime enqueuedAt = 0.0;
  SimTime txStart = 0.0;
  SimTime rxEnd = 0.0;

  bool IsBroadcast () const { return dst == kBroadcast; }
  bool IsData () const { return std::holds_alternative<DataPacket> (payload); }
};

} // namespace manet

#endif
