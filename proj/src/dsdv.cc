#include "manet/dsdv.h"

namespace manet {

DsdvAgent::DsdvAgent (RoutingHost &host, const DsdvParams &params)
  : RoutingAgent (host),
    m_params (params)
{
  const NodeId self = host.Self ();
  m_table[self] = DsdvEntry{self, self, 0, 0, 0.0, 0.0};
}

void
DsdvAgent::Start ()
{
  ++m_ticks;
  m_host.Sim ().Schedule (m_ticks * m_params.period, EventKind::Timer, m_host.Self (), "dsdv-periodic",
                          [this] () {
                            PeriodicUpdate ();
                            Start ();
                          });
}

DsdvAdvert
DsdvAgent::FullDump () const
{
  DsdvAdvert ad;
  for (const auto &[dest, e] : m_table)
    {
      ad.items.push_back (DsdvAdvert::Item{dest, e.metric, e.seq});
    }
  return ad;
}

bool
DsdvAgent::PeriodicUpdate ()
{
  if (!m_host.Alive () || (m_gate && !m_gate ()))
    {
      return false;
    }
  ExpireStale ();
  DsdvEntry &self = m_table[m_host.Self ()];
  self.seq += 2;
  self.refreshedAt = m_host.Now ();
  ++m_counters.periodicUpdates;
  SendControl (kBroadcast, FullDump ());
  return true;
}

bool
DsdvAgent::Usable (const DsdvEntry &e) const
{
  return e.Valid () && m_host.Sim ().Now () - e.refreshedAt <= m_params.staleAfter;
}

void
DsdvAgent::ExpireStale ()
{
  const SimTime now = m_host.Now ();
  for (auto &[dest, e] : m_table)
    {
      if (dest != m_host.Self () && e.Valid () && now - e.refreshedAt > m_params.staleAfter)
        {
          e.seq += 1;
          e.metric = kDsdvInfinity;
          e.installedAt = now;
        }
    }
}

std::vector<DsdvAdvert::Item>
DsdvAgent::Merge (const DsdvAdvert &advert, NodeId from)
{
  const SimTime now = m_host.Now ();
  const NodeId self = m_host.Self ();
  std::vector<DsdvAdvert::Item> broken;
  for (const auto &item : advert.items)
    {
      if (item.dest == self)
        {
          DsdvEntry &own = m_table[self];
          if (item.seq > own.seq)
            {
              // someone reported us unreachable with a newer number
              own.seq = item.seq + (item.seq % 2 == 0 ? 2 : 1);
            }
          continue;
        }
      const std::uint32_t metric = item.metric >= kDsdvInfinity ? kDsdvInfinity : item.metric + 1;
      auto it = m_table.find (item.dest);
      if (it == m_table.end ())
        {
          if (item.seq % 2 == 0 && metric < kDsdvInfinity)
            {
              m_table[item.dest] = DsdvEntry{item.dest, from, metric, item.seq, now, now};
            }
          continue;
        }
      DsdvEntry &e = it->second;
      const bool newer = item.seq > e.seq;
      const bool better = item.seq == e.seq && metric < e.metric;
      if (newer || better)
        {
          const bool wasValid = e.Valid ();
          e.nextHop = from;
          e.metric = metric;
          e.seq = item.seq;
          e.installedAt = now;
          e.refreshedAt = now;
          if (wasValid && !e.Valid ())
            {
              broken.push_back (DsdvAdvert::Item{e.dest, e.metric, e.seq});
            }
        }
      else if (e.nextHop == from && item.seq == e.seq && metric == e.metric)
        {
          e.refreshedAt = now;
        }
    }
  return broken;
}

void
DsdvAgent::ReceiveControl (const Frame &frame)
{
  const auto *ad = std::get_if<DsdvAdvert> (&frame.payload);
  if (ad == nullptr)
    {
      return;
    }
  ++m_counters.controlReceived;
  Trigger (Merge (*ad, frame.src));
}

void
DsdvAgent::Trigger (std::vector<DsdvAdvert::Item> items)
{
  if (items.empty ())
    {
      return;
    }
  DsdvAdvert ad;
  ad.items = std::move (items);
  ad.triggered = true;
  ++m_counters.triggeredUpdates;
  SendControl (kBroadcast, std::move (ad));
}

void
DsdvAgent::OnLinkBreak (NodeId nextHop, const Frame &)
{
  const SimTime now = m_host.Now ();
  std::vector<DsdvAdvert::Item> broken;
  for (auto &[dest, e] : m_table)
    {
      if (dest != m_host.Self () && e.nextHop == nextHop && e.Valid ())
        {
          e.seq += 1;
          e.metric = kDsdvInfinity;
          e.installedAt = now;
          broken.push_back (DsdvAdvert::Item{dest, e.metric, e.seq});
        }
    }
  Trigger (std::move (broken));
}

std::optional<NodeId>
DsdvAgent::NextHopFor (NodeId dest)
{
  if (dest == m_host.Self ())
    {
      return std::nullopt;
    }
  auto it = m_table.find (dest);
  if (it == m_table.end () || !Usable (it->second))
    {
      return std::nullopt;
    }
  return it->second.nextHop;
}

std::optional<Route>
DsdvAgent::Lookup (NodeId dest)
{
  auto hop = NextHopFor (dest);
  if (!hop)
    {
      return std::nullopt;
    }
  return Route{*hop, {}, m_table.at (dest).metric};
}

} // namespace manet
