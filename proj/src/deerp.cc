#include "manet/deerp.h"

#include "manet/dsdv.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace manet {

const char *
ToString (Mode m)
{
  switch (m)
    {
    case Mode::Idle:
      return "idle";
    case Mode::Tx:
      return "tx";
    case Mode::Rx:
      return "rx";
    case Mode::Sleep:
      return "sleep";
    }
  return "?";
}

ModeTracker::ModeTracker (std::uint32_t nodeCount, double window)
  : m_window (window),
    m_tx (nodeCount),
    m_rx (nodeCount)
{
  if (!(window > 0.0))
    {
      throw SimError ("mode window must be positive");
    }
}

void
ModeTracker::Add (Coverage &c, SimTime t)
{
  if (!c.empty () && t <= c.back ().end)
    {
      c.back ().end = std::max (c.back ().end, t + m_window);
      return;
    }
  c.push_back (Interval{t, t + m_window});
}

bool
ModeTracker::Covers (const Coverage &c, SimTime t)
{
  // first interval starting after t; the one before it may contain t
  auto it = std::upper_bound (c.begin (), c.end (), t, [] (SimTime v, const Interval &i) { return v < i.start; });
  if (it == c.begin ())
    {
      return false;
    }
  --it;
  return t < it->end;
}

void
ModeTracker::RecordTx (NodeId node, SimTime t)
{
  Add (m_tx.at (node), t);
}

void
ModeTracker::RecordRx (NodeId node, SimTime t)
{
  Add (m_rx.at (node), t);
}

Mode
ModeTracker::Classify (NodeId node, SimTime t) const
{
  if (Covers (m_tx.at (node), t))
    {
      return Mode::Tx;
    }
  if (Covers (m_rx.at (node), t))
    {
      return Mode::Rx;
    }
  return Mode::Idle;
}

std::vector<ModeTracker::Segment>
ModeTracker::Timeline (NodeId node, SimTime end) const
{
  std::vector<SimTime> cuts{0.0, end};
  for (const Coverage *c : {&m_tx.at (node), &m_rx.at (node)})
    {
      for (const auto &i : *c)
        {
          for (SimTime b : {i.start, i.end})
            {
              if (b > 0.0 && b < end)
                {
                  cuts.push_back (b);
                }
            }
        }
    }
  std::sort (cuts.begin (), cuts.end ());
  cuts.erase (std::unique (cuts.begin (), cuts.end ()), cuts.end ());

  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size (); ++i)
    {
      const Mode m = Classify (node, cuts[i]);
      if (!out.empty () && out.back ().mode == m)
        {
          out.back ().end = cuts[i + 1];
        }
      else
        {
          out.push_back (Segment{cuts[i], cuts[i + 1], m});
        }
    }
  return out;
}

void
ModeTracker::WriteCsv (std::ostream &os, SimTime end) const
{
  os << "time,node,mode\n";
  struct Change
  {
    SimTime t;
    NodeId node;
    Mode mode;
  };
  std::vector<Change> changes;
  for (NodeId n = 0; n < NodeCount (); ++n)
    {
      for (const auto &s : Timeline (n, end))
        {
          changes.push_back (Change{s.start, n, s.mode});
        }
    }
  std::stable_sort (changes.begin (), changes.end (), [] (const Change &a, const Change &b) { return a.t < b.t; });
  for (const auto &c : changes)
    {
      os << FormatTime (c.t) << ',' << c.node << ',' << ToString (c.mode) << '\n';
    }
}

ProtocolId
ProtocolAssignment::For (Mode m) const
{
  switch (m)
    {
    case Mode::Tx:
      return tx;
    case Mode::Rx:
      return rx;
    case Mode::Idle:
    case Mode::Sleep:
      break;
    }
  return idle;
}

std::vector<ProtocolId>
ProtocolAssignment::Protocols () const
{
  std::vector<ProtocolId> out;
  for (ProtocolId p : {idle, tx, rx})
    {
      if (std::find (out.begin (), out.end (), p) == out.end ())
        {
          out.push_back (p);
        }
    }
  return out;
}

bool
ProtocolAssignment::Uses (ProtocolId p) const
{
  return idle == p || tx == p || rx == p;
}

std::string
ProtocolAssignment::ToString () const
{
  return "idle=" + manet::ToString (idle) + " tx=" + manet::ToString (tx) + " rx=" + manet::ToString (rx);
}

bool
RpscRow::Matches (MobilityModel m, std::uint32_t nodes, double speed) const
{
  return m == mobility && nodes >= nodesMin && nodes <= nodesMax && speed >= speedMin && speed <= speedMax;
}

void
RpscRow::Validate () const
{
  if (nodesMin > nodesMax)
    {
      throw SimError ("rpsc row: empty node range");
    }
  if (!(speedMin >= 0.0) || !(speedMin <= speedMax))
    {
      throw SimError ("rpsc row: empty speed range");
    }
  for (ProtocolId p : {assignment.idle, assignment.tx, assignment.rx})
    {
      if (p == ProtocolId::Deerp)
        {
          throw SimError ("rpsc row: DEERP cannot be assigned to a mode");
        }
    }
}

namespace {

std::string
Describe (MobilityModel m, std::uint32_t nodes, double speed)
{
  char buf[160];
  std::snprintf (buf, sizeof buf, "no RPSC row for mobility=%s nodes=%u speed=%g", ToString (m).c_str (), nodes, speed);
  return buf;
}

bool
RangesOverlap (double a0, double a1, double b0, double b1)
{
  return a0 <= b1 && b0 <= a1;
}

} // namespace

NoMatchingRow::NoMatchingRow (MobilityModel m, std::uint32_t nodes, double speed)
  : SimError (Describe (m, nodes, speed))
{
}

RpscTable::RpscTable (std::vector<RpscRow> rows)
  : m_rows (std::move (rows))
{
  Validate ();
}

RpscTable
RpscTable::Default ()
{
  using P = ProtocolId;
  return RpscTable ({
      RpscRow{MobilityModel::RandomWaypoint, 5, 25, 1.0, 10.0, {P::Dsr, P::Dsdv, P::Dsr}},
      RpscRow{MobilityModel::Rpgm, 20, 80, 0.5, 5.0, {P::Dsdv, P::Dsdv, P::Dsr}},
  });
}

RpscTable
RpscTable::Uniform (ProtocolId p)
{
  const std::uint32_t maxNodes = std::numeric_limits<std::uint32_t>::max ();
  const double maxSpeed = std::numeric_limits<double>::max ();
  std::vector<RpscRow> rows;
  for (MobilityModel m : {MobilityModel::RandomWaypoint, MobilityModel::Rpgm, MobilityModel::Static})
    {
      rows.push_back (RpscRow{m, 0, maxNodes, 0.0, maxSpeed, {p, p, p}});
    }
  return RpscTable (std::move (rows));
}

RpscTable
RpscTable::Parse (const std::string &text)
{
  std::vector<RpscRow> rows;
  std::istringstream in (text);
  std::string line;
  int lineNo = 0;
  while (std::getline (in, line))
    {
      ++lineNo;
      line = line.substr (0, line.find ('#'));
      std::replace (line.begin (), line.end (), ',', ' ');
      std::istringstream fields (line);
      std::vector<std::string> f;
      for (std::string tok; fields >> tok;)
        {
          f.push_back (tok);
        }
      if (f.empty ())
        {
          continue;
        }
      if (f.size () != 8)
        {
          throw SimError ("rpsc line " + std::to_string (lineNo) + ": expected 8 fields");
        }
      try
        {
          RpscRow row;
          row.mobility = ParseMobility (f[0]);
          row.nodesMin = static_cast<std::uint32_t> (std::stoul (f[1]));
          row.nodesMax = static_cast<std::uint32_t> (std::stoul (f[2]));
          row.speedMin = std::stod (f[3]);
          row.speedMax = std::stod (f[4]);
          row.assignment = {ParseProtocol (f[5]), ParseProtocol (f[6]), ParseProtocol (f[7])};
          row.Validate ();
          rows.push_back (row);
        }
      catch (const SimError &e)
        {
          throw SimError ("rpsc line " + std::to_string (lineNo) + ": " + e.what ());
        }
      catch (const std::exception &e)
        {
          throw SimError ("rpsc line " + std::to_string (lineNo) + ": " + e.what ());
        }
    }
  return RpscTable (std::move (rows));
}

RpscTable
RpscTable::Load (const std::string &path)
{
  std::ifstream in (path);
  if (!in)
    {
      throw SimError ("cannot read rpsc table: " + path);
    }
  std::ostringstream text;
  text << in.rdbuf ();
  return Parse (text.str ());
}

void
RpscTable::Validate () const
{
  for (std::size_t i = 0; i < m_rows.size (); ++i)
    {
      m_rows[i].Validate ();
      for (std::size_t j = 0; j < i; ++j)
        {
          const RpscRow &a = m_rows[i];
          const RpscRow &b = m_rows[j];
          if (a.mobility == b.mobility && RangesOverlap (a.nodesMin, a.nodesMax, b.nodesMin, b.nodesMax)
              && RangesOverlap (a.speedMin, a.speedMax, b.speedMin, b.speedMax))
            {
              throw SimError ("rpsc rows " + std::to_string (j + 1) + " and " + std::to_string (i + 1) + " overlap");
            }
        }
    }
}

ProtocolAssignment
RpscTable::Select (MobilityModel mobility, std::uint32_t nodes, double speedMin, double speedMax, bool nearest) const
{
  if (nodes == 0 || !(speedMin >= 0.0) || !(speedMin <= speedMax))
    {
      throw SimError ("rpsc select: malformed scenario");
    }
  for (const auto &row : m_rows)
    {
      if (row.Matches (mobility, nodes, speedMax))
        {
          return row.assignment;
        }
    }
  if (nearest)
    {
      const RpscRow *best = nullptr;
      double bestDistance = 0.0;
      for (const auto &row : m_rows)
        {
          if (row.mobility != mobility)
            {
              continue;
            }
          const double nodeGap = std::max ({0.0, double (row.nodesMin) - nodes, double (nodes) - row.nodesMax});
          const double speedGap = std::max ({0.0, row.speedMin - speedMax, speedMax - row.speedMax});
          const double d = nodeGap / (double (row.nodesMax - row.nodesMin) + 1.0)
                           + speedGap / std::max (row.speedMax - row.speedMin, 1e-9);
          if (best == nullptr || d < bestDistance)
            {
              best = &row;
              bestDistance = d;
            }
        }
      if (best != nullptr)
        {
          return best->assignment;
        }
    }
  throw NoMatchingRow (mobility, nodes, speedMax);
}

std::string
RpscTable::ToString () const
{
  std::string out = "# mobility, nodes_min, nodes_max, speed_min, speed_max, idle, tx, rx\n";
  for (const auto &r : m_rows)
    {
      char buf[256];
      std::snprintf (buf, sizeof buf, "%s, %u, %u, %.17g, %.17g, %s, %s, %s\n", manet::ToString (r.mobility).c_str (),
                     r.nodesMin, r.nodesMax, r.speedMin, r.speedMax, manet::ToString (r.assignment.idle).c_str (),
                     manet::ToString (r.assignment.tx).c_str (), manet::ToString (r.assignment.rx).c_str ());
      out += buf;
    }
  return out;
}

DeerpAgent::DeerpAgent (RoutingHost &host, const ProtocolAssignment &assignment, ModeQuery mode,
                        const AgentFactory &factory)
  : RoutingAgent (host),
    m_assignment (assignment),
    m_mode (std::move (mode))
{
  for (ProtocolId p : assignment.Protocols ())
    {
      if (p == ProtocolId::Deerp)
        {
          throw SimError ("DEERP cannot contain itself");
        }
      m_components.emplace_back (p, factory (p));
    }
}

RoutingAgent *
DeerpAgent::Component (ProtocolId p) const
{
  for (const auto &[id, agent] : m_components)
    {
      if (id == p)
        {
          return agent.get ();
        }
    }
  return nullptr;
}

void
DeerpAgent::Start ()
{
  if (auto *dsdv = dynamic_cast<DsdvAgent *> (Component (ProtocolId::Dsdv)))
    {
      dsdv->SetPeriodicGate ([this] () { return m_assignment.For (m_mode ()) == ProtocolId::Dsdv; });
    }
  for (auto &[id, agent] : m_components)
    {
      agent->Start ();
    }
}

std::vector<RoutingAgent *>
DeerpAgent::QueryOrder () const
{
  const ProtocolId primary = m_assignment.For (m_mode ());
  std::vector<RoutingAgent *> out{Component (primary)};
  for (const auto &[id, agent] : m_components)
    {
      if (id != primary)
        {
          out.push_back (agent.get ());
        }
    }
  return out;
}

RoutingAgent *
DeerpAgent::Discoverer () const
{
  RoutingAgent *primary = Component (m_assignment.For (m_mode ()));
  if (primary->CanDiscover ())
    {
      return primary;
    }
  for (const auto &[id, agent] : m_components)
    {
      if (agent->CanDiscover ())
        {
          return agent.get ();
        }
    }
  return nullptr;
}

void
DeerpAgent::ReceiveControl (const Frame &frame)
{
  if (RoutingAgent *agent = Component (ControlProtocol (frame.payload)))
    {
      agent->ReceiveControl (frame);
    }
}

std::optional<Route>
DeerpAgent::Lookup (NodeId dest)
{
  for (RoutingAgent *agent : QueryOrder ())
    {
      if (auto route = agent->Lookup (dest))
        {
          m_lastAnswer = agent->Protocol ();
          return route;
        }
    }
  return std::nullopt;
}

std::optional<NodeId>
DeerpAgent::NextHopFor (NodeId dest)
{
  for (RoutingAgent *agent : QueryOrder ())
    {
      if (auto hop = agent->NextHopFor (dest))
        {
          return hop;
        }
    }
  return std::nullopt;
}

bool
DeerpAgent::CanDiscover () const
{
  return Discoverer () != nullptr;
}

bool
DeerpAgent::DiscoversInTransit () const
{
  RoutingAgent *d = Discoverer ();
  return d != nullptr && d->DiscoversInTransit ();
}

void
DeerpAgent::BufferAndDiscover (DataPacket packet)
{
  if (RoutingAgent *d = Discoverer ())
    {
      d->BufferAndDiscover (std::move (packet));
      return;
    }
  m_host.Drop (packet, DropCause::NoRoute);
}

void
DeerpAgent::ForwardSourceRouted (DataPacket packet)
{
  if (RoutingAgent *dsr = Component (ProtocolId::Dsr))
    {
      dsr->ForwardSourceRouted (std::move (packet));
      return;
    }
  m_host.Drop (packet, DropCause::NoRoute);
}

void
DeerpAgent::OnLinkBreak (NodeId nextHop, const Frame &frame)
{
  for (auto &[id, agent] : m_components)
    {
      agent->OnLinkBreak (nextHop, frame);
    }
}

void
DeerpAgent::NoteRouteUsed (NodeId dest, const DataPacket &packet)
{
  for (auto &[id, agent] : m_components)
    {
      agent->NoteRouteUsed (dest, packet);
    }
}

void
DeerpAgent::OnTransitNoRoute (const DataPacket &packet)
{
  for (auto &[id, agent] : m_components)
    {
      agent->OnTransitNoRoute (packet);
    }
}

std::size_t
DeerpAgent::BufferedCount () const
{
  std::size_t n = 0;
  for (const auto &[id, agent] : m_components)
    {
      n += agent->BufferedCount ();
    }
  return n;
}

std::vector<const DataPacket *>
DeerpAgent::BufferedPackets () const
{
  std::vector<const DataPacket *> out;
  for (const auto &[id, agent] : m_components)
    {
      auto part = agent->BufferedPackets ();
      out.insert (out.end (), part.begin (), part.end ());
    }
  return out;
}

ProtocolCounters
DeerpAgent::TotalCounters () const
{
  ProtocolCounters total = m_counters;
  for (const auto &[id, agent] : m_components)
    {
      total += agent->TotalCounters ();
    }
  return total;
}

} // namespace manet
