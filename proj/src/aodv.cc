#include "manet/aodv.h"

#include <algorithm>

namespace manet {

AodvAgent::AodvAgent (RoutingHost &host, const AodvParams &params)
  : RoutingAgent (host),
    m_params (params),
    m_buffer (params.bufferPerDestination)
{
}

bool
AodvAgent::Active (const AodvEntry &e) const
{
  return e.valid && m_host.Sim ().Now () <= e.expiresAt;
}

void
AodvAgent::Refresh (NodeId dest)
{
  auto it = m_table.find (dest);
  if (it != m_table.end () && Active (it->second))
    {
      it->second.expiresAt = std::max (it->second.expiresAt, m_host.Now () + m_params.activeRouteTimeout);
    }
}

bool
AodvAgent::Update (NodeId dest, NodeId nextHop, std::uint32_t hops, std::uint64_t seq, bool seqKnown)
{
  if (dest == m_host.Self ())
    {
      return false;
    }
  AodvEntry &e = m_table[dest];
  e.dest = dest;
  bool take = !Active (e) || !e.seqKnown;
  if (!take)
    {
      take = seqKnown ? (seq > e.seq || (seq == e.seq && hops <= e.hops)) : hops < e.hops;
    }
  if (!take)
    {
      return false;
    }
  e.nextHop = nextHop;
  e.hops = hops;
  if (seqKnown || !e.seqKnown)
    {
      e.seq = seqKnown ? seq : e.seq;
      e.seqKnown = seqKnown;
    }
  e.valid = true;
  e.expiresAt = std::max (Active (e) ? e.expiresAt : 0.0, m_host.Now () + m_params.activeRouteTimeout);
  return true;
}

std::optional<Route>
AodvAgent::Lookup (NodeId dest)
{
  auto it = m_table.find (dest);
  if (dest == m_host.Self () || it == m_table.end () || !Active (it->second))
    {
      return std::nullopt;
    }
  return Route{it->second.nextHop, {}, it->second.hops};
}

std::optional<NodeId>
AodvAgent::NextHopFor (NodeId dest)
{
  auto route = Lookup (dest);
  if (!route)
    {
      return std::nullopt;
    }
  return route->nextHop;
}

void
AodvAgent::NoteRouteUsed (NodeId dest, const DataPacket &packet)
{
  Refresh (dest);
  Refresh (packet.src);
  auto it = m_table.find (dest);
  if (it != m_table.end ())
    {
      Refresh (it->second.nextHop);
    }
}

void
AodvAgent::BufferAndDiscover (DataPacket packet)
{
  const NodeId dest = packet.dst;
  if (!m_buffer.Push (packet))
    {
      m_host.Drop (packet, DropCause::BufferOverflow);
      return;
    }
  if (!Discovering (dest))
    {
      StartDiscovery (dest);
    }
}

void
AodvAgent::StartDiscovery (NodeId dest)
{
  Discovery &d = m_pending[dest];
  ++d.attempts;
  ++m_counters.discoveries;
  const NodeId self = m_host.Self ();
  ++m_ownSeq;
  AodvRequest req;
  req.origin = self;
  req.originSeq = m_ownSeq;
  req.requestId = m_nextRequestId++;
  req.dest = dest;
  req.destinationOnly = m_params.destinationOnly;
  auto it = m_table.find (dest);
  if (it != m_table.end () && it->second.seqKnown)
    {
      req.destSeq = it->second.seq;
      req.destSeqKnown = true;
    }
  m_seen[{self, req.requestId}] = 0;
  SendControl (kBroadcast, req);
  d.timer = m_host.Sim ().ScheduleIn (m_params.discoveryTimeout, EventKind::Timer, self, "aodv-discovery-timeout",
                                      [this, dest] () { DiscoveryTimeout (dest); });
}

void
AodvAgent::DiscoveryTimeout (NodeId dest)
{
  auto it = m_pending.find (dest);
  if (it == m_pending.end ())
    {
      return;
    }
  if (Lookup (dest))
    {
      FlushBuffers ();
      return;
    }
  if (it->second.attempts <= m_params.discoveryRetries)
    {
      StartDiscovery (dest);
      return;
    }
  m_pending.erase (it);
  for (const auto &p : m_buffer.Take (dest))
    {
      m_host.Drop (p, DropCause::NoRoute);
    }
}

void
AodvAgent::FlushBuffers ()
{
  for (NodeId dest : m_buffer.Destinations ())
    {
      auto route = Lookup (dest);
      if (!route)
        {
          continue;
        }
      for (auto &p : m_buffer.Take (dest))
        {
          SendDataVia (std::move (p), *route);
        }
    }
  for (auto it = m_pending.begin (); it != m_pending.end ();)
    {
      if (!m_buffer.Has (it->first) && Lookup (it->first))
        {
          m_host.Sim ().Cancel (it->second.timer);
          it = m_pending.erase (it);
        }
      else
        {
          ++it;
        }
    }
}

void
AodvAgent::ReceiveControl (const Frame &frame)
{
  if (const auto *req = std::get_if<AodvRequest> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleRequest (*req, frame.src);
    }
  else if (const auto *rep = std::get_if<AodvReply> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleReply (*rep, frame.src);
    }
  else if (const auto *err = std::get_if<AodvError> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleError (*err, frame.src);
    }
}

void
AodvAgent::HandleRequest (AodvRequest req, NodeId from)
{
  const NodeId self = m_host.Self ();
  if (req.origin == self)
    {
      return;
    }
  const std::uint32_t hops = req.hopCount + 1;
  auto [seen, fresh] = m_seen.try_emplace ({req.origin, req.requestId}, hops);
  if (!fresh)
    {
      if (seen->second <= hops)
        {
          return;
        }
      seen->second = hops;
    }

  Update (from, from, 1, 0, false);
  Update (req.origin, from, hops, req.originSeq, true);

  if (req.dest == self)
    {
      if (req.destSeqKnown)
        {
          m_ownSeq = std::max (m_ownSeq, req.destSeq);
        }
      SendControl (from, AodvReply{req.origin, self, m_ownSeq, 0});
      return;
    }

  auto known = m_table.find (req.dest);
  if (!req.destinationOnly && known != m_table.end () && Active (known->second) && known->second.seqKnown
      && (!req.destSeqKnown || known->second.seq >= req.destSeq))
    {
      AodvEntry &fwd = known->second;
      fwd.precursors.insert (from);
      m_table[req.origin].precursors.insert (fwd.nextHop);
      SendControl (from, AodvReply{req.origin, req.dest, fwd.seq, fwd.hops});
      return;
    }
  if (known != m_table.end () && known->second.seqKnown
      && (!req.destSeqKnown || known->second.seq > req.destSeq))
    {
      req.destSeq = known->second.seq;
      req.destSeqKnown = true;
    }

  req.hopCount = hops;
  const double delay = m_host.Jitter ().Uniform (0.0, m_params.forwardJitter);
  m_host.Sim ().ScheduleIn (delay, EventKind::Timer, self, "aodv-rreq-forward", [this, req] () {
    if (m_host.Alive ())
      {
        SendControl (kBroadcast, req);
      }
  });
}

void
AodvAgent::HandleReply (AodvReply rep, NodeId from)
{
  const NodeId self = m_host.Self ();
  const std::uint32_t hops = rep.hopCount + 1;
  Update (from, from, 1, 0, false);
  if (!Update (rep.dest, from, hops, rep.destSeq, true))
    {
      return;
    }
  if (rep.origin == self)
    {
      FlushBuffers ();
      return;
    }
  auto back = m_table.find (rep.origin);
  if (back == m_table.end () || !Active (back->second))
    {
      return;
    }
  m_table[rep.dest].precursors.insert (back->second.nextHop);
  back->second.precursors.insert (from);
  rep.hopCount = hops;
  SendControl (back->second.nextHop, rep);
}

void
AodvAgent::Invalidate (const std::vector<AodvError::Item> &items)
{
  bool notify = false;
  for (const auto &item : items)
    {
      auto it = m_table.find (item.dest);
      if (it == m_table.end ())
        {
          continue;
        }
      AodvEntry &e = it->second;
      e.valid = false;
      e.seq = std::max (e.seq, item.seq);
      notify = notify || !e.precursors.empty ();
      e.precursors.clear ();
    }
  if (notify)
    {
      SendControl (kBroadcast, AodvError{items});
    }
}

void
AodvAgent::OnLinkBreak (NodeId nextHop, const Frame &)
{
  std::vector<AodvError::Item> lost;
  for (auto &[dest, e] : m_table)
    {
      if (e.valid && e.nextHop == nextHop)
        {
          lost.push_back (AodvError::Item{dest, e.seqKnown ? e.seq + 1 : e.seq});
        }
    }
  Invalidate (lost);
}

void
AodvAgent::OnTransitNoRoute (const DataPacket &packet)
{
  std::uint64_t seq = 0;
  auto it = m_table.find (packet.dst);
  if (it != m_table.end ())
    {
      it->second.valid = false;
      it->second.precursors.clear ();
      seq = it->second.seq;
    }
  SendControl (kBroadcast, AodvError{{AodvError::Item{packet.dst, seq}}});
}

void
AodvAgent::HandleError (const AodvError &err, NodeId from)
{
  std::vector<AodvError::Item> lost;
  for (const auto &item : err.unreachable)
    {
      auto it = m_table.find (item.dest);
      if (it != m_table.end () && it->second.valid && it->second.nextHop == from)
        {
          lost.push_back (item);
        }
    }
  Invalidate (lost);
}

} // namespace manet
