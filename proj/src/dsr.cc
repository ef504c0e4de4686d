#include "manet/dsr.h"

#include <algorithm>

namespace manet {

DsrAgent::DsrAgent (RoutingHost &host, const DsrParams &params)
  : RoutingAgent (host),
    m_params (params),
    m_buffer (params.bufferPerDestination)
{
}

std::optional<DsrCacheEntry>
DsrAgent::CachedRoute (NodeId dest) const
{
  auto it = m_cache.find (dest);
  if (it == m_cache.end () || it->second.empty ())
    {
      return std::nullopt;
    }
  return it->second.front ();
}

void
DsrAgent::AddRoute (const std::vector<NodeId> &route)
{
  const SimTime now = m_host.Now ();
  for (std::size_t len = 2; len <= route.size (); ++len)
    {
      std::vector<NodeId> prefix (route.begin (), route.begin () + len);
      const NodeId dest = prefix.back ();
      auto &entries = m_cache[dest];
      auto same = std::find_if (entries.begin (), entries.end (),
                                [&] (const DsrCacheEntry &e) { return e.sourceRoute == prefix; });
      if (same != entries.end ())
        {
          same->learnedAt = now;
        }
      else
        {
          entries.push_back (DsrCacheEntry{dest, std::move (prefix), now});
        }
      std::stable_sort (entries.begin (), entries.end (), [] (const DsrCacheEntry &a, const DsrCacheEntry &b) {
        if (a.sourceRoute.size () != b.sourceRoute.size ())
          {
            return a.sourceRoute.size () < b.sourceRoute.size ();
          }
        return a.learnedAt > b.learnedAt;
      });
      if (entries.size () > m_params.routesPerDestination)
        {
          entries.resize (m_params.routesPerDestination);
        }
    }
}

void
DsrAgent::RemoveLink (NodeId from, NodeId to)
{
  for (auto it = m_cache.begin (); it != m_cache.end ();)
    {
      auto &entries = it->second;
      entries.erase (std::remove_if (entries.begin (), entries.end (),
                                     [&] (const DsrCacheEntry &e) {
                                       for (std::size_t i = 0; i + 1 < e.sourceRoute.size (); ++i)
                                         {
                                           if (e.sourceRoute[i] == from && e.sourceRoute[i + 1] == to)
                                             {
                                               return true;
                                             }
                                         }
                                       return false;
                                     }),
                     entries.end ());
      if (entries.empty ())
        {
          it = m_cache.erase (it);
        }
      else
        {
          ++it;
        }
    }
}

std::optional<NodeId>
DsrAgent::NextHopFor (NodeId dest)
{
  if (dest == m_host.Self ())
    {
      return std::nullopt;
    }
  auto entry = CachedRoute (dest);
  if (!entry)
    {
      return std::nullopt;
    }
  return entry->sourceRoute[1];
}

std::optional<Route>
DsrAgent::Lookup (NodeId dest)
{
  if (dest == m_host.Self ())
    {
      return std::nullopt;
    }
  auto entry = CachedRoute (dest);
  if (!entry)
    {
      return std::nullopt;
    }
  const auto hops = static_cast<std::uint32_t> (entry->sourceRoute.size () - 1);
  return Route{entry->sourceRoute[1], std::move (entry->sourceRoute), hops};
}

void
DsrAgent::BufferAndDiscover (DataPacket packet)
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
DsrAgent::StartDiscovery (NodeId dest)
{
  Discovery &d = m_pending[dest];
  ++d.attempts;
  ++m_counters.discoveries;
  const NodeId self = m_host.Self ();
  const std::uint32_t id = m_nextRequestId++;
  m_seen[{self, id}] = 1;
  SendControl (kBroadcast, DsrRequest{self, dest, id, {self}});
  d.timer = m_host.Sim ().ScheduleIn (m_params.discoveryTimeout, EventKind::Timer, self, "dsr-discovery-timeout",
                                      [this, dest] () { DiscoveryTimeout (dest); });
}

void
DsrAgent::DiscoveryTimeout (NodeId dest)
{
  auto it = m_pending.find (dest);
  if (it == m_pending.end ())
    {
      return;
    }
  if (CachedRoute (dest))
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
DsrAgent::FlushBuffers ()
{
  for (NodeId dest : m_buffer.Destinations ())
    {
      auto route = Lookup (dest);
      if (!route)
        {
          continue;
        }
      auto it = m_pending.find (dest);
      if (it != m_pending.end ())
        {
          m_host.Sim ().Cancel (it->second.timer);
          m_pending.erase (it);
        }
      for (auto &p : m_buffer.Take (dest))
        {
          SendDataVia (std::move (p), *route);
        }
    }
  // discoveries whose buffer drained elsewhere still need their timer cleared
  for (auto it = m_pending.begin (); it != m_pending.end ();)
    {
      if (!m_buffer.Has (it->first) && CachedRoute (it->first))
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
DsrAgent::ReceiveControl (const Frame &frame)
{
  if (const auto *req = std::get_if<DsrRequest> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleRequest (*req);
    }
  else if (const auto *rep = std::get_if<DsrReply> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleReply (*rep);
    }
  else if (const auto *err = std::get_if<DsrError> (&frame.payload))
    {
      ++m_counters.controlReceived;
      HandleError (*err);
    }
}

void
DsrAgent::HandleRequest (const DsrRequest &req)
{
  const NodeId self = m_host.Self ();
  if (req.initiator == self || std::find (req.record.begin (), req.record.end (), self) != req.record.end ())
    {
      return;
    }
  const std::size_t len = req.record.size () + 1;
  auto [it, fresh] = m_seen.try_emplace ({req.initiator, req.requestId}, len);
  if (!fresh)
    {
      if (it->second <= len)
        {
          return;
        }
      it->second = len;
    }

  if (req.target == self)
    {
      DsrReply reply;
      reply.route = req.record;
      reply.route.push_back (self);
      reply.position = static_cast<std::uint32_t> (reply.route.size () - 1);
      const NodeId next = reply.route[reply.position - 1];
      SendControl (next, std::move (reply));
      return;
    }

  DsrRequest fwd = req;
  fwd.record.push_back (self);
  const double delay = m_host.Jitter ().Uniform (0.0, m_params.forwardJitter);
  m_host.Sim ().ScheduleIn (delay, EventKind::Timer, self, "dsr-rreq-forward",
                            [this, fwd = std::move (fwd)] () mutable {
                              if (m_host.Alive ())
                                {
                                  SendControl (kBroadcast, std::move (fwd));
                                }
                            });
}

void
DsrAgent::HandleReply (DsrReply reply)
{
  if (reply.position == 0 || reply.route[reply.position - 1] != m_host.Self ())
    {
      return;
    }
  --reply.position;
  if (reply.position == 0)
    {
      AddRoute (reply.route);
      FlushBuffers ();
      return;
    }
  const NodeId next = reply.route[reply.position - 1];
  SendControl (next, std::move (reply));
}

void
DsrAgent::HandleError (DsrError err)
{
  if (err.position + 1 >= err.path.size () || err.path[err.position + 1] != m_host.Self ())
    {
      return;
    }
  ++err.position;
  RemoveLink (err.linkFrom, err.linkTo);
  if (err.position + 1 < err.path.size ())
    {
      const NodeId next = err.path[err.position + 1];
      SendControl (next, std::move (err));
    }
}

void
DsrAgent::ForwardSourceRouted (DataPacket packet)
{
  const std::uint32_t idx = packet.routeIndex + 1;
  if (idx + 1 >= packet.sourceRoute.size () || packet.sourceRoute[idx] != m_host.Self ())
    {
      m_host.Drop (packet, DropCause::NoRoute);
      return;
    }
  packet.routeIndex = idx;
  const NodeId next = packet.sourceRoute[idx + 1];
  m_host.Send (next, std::move (packet));
}

void
DsrAgent::OnLinkBreak (NodeId nextHop, const Frame &frame)
{
  const NodeId self = m_host.Self ();
  RemoveLink (self, nextHop);
  const auto *data = std::get_if<DataPacket> (&frame.payload);
  if (data == nullptr || data->sourceRoute.empty () || data->routeIndex == 0)
    {
      return;
    }
  DsrError err;
  err.linkFrom = self;
  err.linkTo = nextHop;
  for (std::uint32_t i = data->routeIndex + 1; i-- > 0;)
    {
      err.path.push_back (data->sourceRoute[i]);
    }
  err.position = 0;
  const NodeId next = err.path[1];
  SendControl (next, std::move (err));
}

} // namespace manet
