#include "manet/routing.h"

namespace manet {

const char *
ToString (DropCause c)
{
  switch (c)
    {
    case DropCause::Queue:
      return "queue";
    case DropCause::NoRoute:
      return "no_route";
    case DropCause::DeadNode:
      return "dead_node";
    case DropCause::LinkBreak:
      return "link_break";
    case DropCause::Ttl:
      return "ttl";
    case DropCause::BufferOverflow:
      return "buffer_overflow";
    }
  return "?";
}

ProtocolCounters &
ProtocolCounters::operator+= (const ProtocolCounters &o)
{
  controlSent += o.controlSent;
  controlReceived += o.controlReceived;
  discoveries += o.discoveries;
  routeBreaks += o.routeBreaks;
  periodicUpdates += o.periodicUpdates;
  triggeredUpdates += o.triggeredUpdates;
  return *this;
}

RoutingAgent::RoutingAgent (RoutingHost &host)
  : m_host (host)
{
}

void
RoutingAgent::OriginateData (DataPacket packet)
{
  RouteData (std::move (packet), false);
}

void
RoutingAgent::ForwardData (DataPacket packet)
{
  if (packet.ttl == 0)
    {
      m_host.Drop (packet, DropCause::Ttl);
      return;
    }
  --packet.ttl;
  if (!packet.sourceRoute.empty ())
    {
      ForwardSourceRouted (std::move (packet));
      return;
    }
  RouteData (std::move (packet), true);
}

void
RoutingAgent::RouteData (DataPacket packet, bool transit)
{
  if (auto route = Lookup (packet.dst))
    {
      SendDataVia (std::move (packet), *route);
    }
  else if (CanDiscover () && (!transit || DiscoversInTransit ()))
    {
      BufferAndDiscover (std::move (packet));
    }
  else
    {
      if (transit)
        {
          OnTransitNoRoute (packet);
        }
      m_host.Drop (packet, DropCause::NoRoute);
    }
}

void
RoutingAgent::SendDataVia (DataPacket packet, const Route &route)
{
  if (!route.sourceRoute.empty ())
    {
      packet.sourceRoute = route.sourceRoute;
      packet.routeIndex = 0;
    }
  else
    {
      NoteRouteUsed (packet.dst, packet);
    }
  m_host.Send (route.nextHop, std::move (packet));
}

void
RoutingAgent::BufferAndDiscover (DataPacket packet)
{
  m_host.Drop (packet, DropCause::NoRoute);
}

void
RoutingAgent::ForwardSourceRouted (DataPacket packet)
{
  // only source-routing agents understand these
  m_host.Drop (packet, DropCause::NoRoute);
}

void
RoutingAgent::HandleLinkBreak (const Frame &frame)
{
  ++m_counters.routeBreaks;
  OnLinkBreak (frame.dst, frame);
  if (const auto *data = std::get_if<DataPacket> (&frame.payload))
    {
      m_host.Drop (*data, DropCause::LinkBreak);
    }
}

bool
RoutingAgent::SendControl (NodeId dst, Payload payload)
{
  ++m_counters.controlSent;
  return m_host.Send (dst, std::move (payload));
}

SendBuffer::SendBuffer (std::size_t perDestination)
  : m_capacity (perDestination)
{
}

bool
SendBuffer::Push (DataPacket packet)
{
  auto &q = m_queues[packet.dst];
  if (q.size () >= m_capacity)
    {
      return false;
    }
  q.push_back (std::move (packet));
  return true;
}

std::vector<DataPacket>
SendBuffer::Take (NodeId dest)
{
  auto it = m_queues.find (dest);
  if (it == m_queues.end ())
    {
      return {};
    }
  std::vector<DataPacket> out = std::move (it->second);
  m_queues.erase (it);
  return out;
}

bool
SendBuffer::Has (NodeId dest) const
{
  auto it = m_queues.find (dest);
  return it != m_queues.end () && !it->second.empty ();
}

std::vector<NodeId>
SendBuffer::Destinations () const
{
  std::vector<NodeId> out;
  for (const auto &[dest, q] : m_queues)
    {
      if (!q.empty ())
        {
          out.push_back (dest);
        }
    }
  return out;
}

std::size_t
SendBuffer::Size () const
{
  std::size_t n = 0;
  for (const auto &[dest, q] : m_queues)
    {
      n += q.size ();
    }
  return n;
}

std::vector<const DataPacket *>
SendBuffer::Packets () const
{
  std::vector<const DataPacket *> out;
  for (const auto &[dest, q] : m_queues)
    {
      for (const auto &p : q)
        {
          out.push_back (&p);
        }
    }
  return out;
}

} // namespace manet
