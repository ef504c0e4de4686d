#include "manet/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace manet {

const char *
ToString (EventKind k)
{
  switch (k)
    {
    case EventKind::Mobility:
      return "mobility";
    case EventKind::FrameDelivery:
      return "frame";
    case EventKind::Timer:
      return "timer";
    case EventKind::Traffic:
      return "traffic";
    case EventKind::Sample:
      return "sample";
    }
  return "?";
}

std::string
FormatTime (SimTime t)
{
  char buf[48];
  std::snprintf (buf, sizeof buf, "%.9f", t);
  return buf;
}

SchedulingInPast::SchedulingInPast (SimTime at, SimTime now)
  : SimError ("event scheduled in the past: fire_at=" + FormatTime (at) + " clock=" + FormatTime (now))
{
}

EventHandle
Simulator::Schedule (SimTime at, EventKind kind, NodeId node, std::string detail, Callback cb)
{
  if (!std::isfinite (at))
    {
      throw SimError ("event time must be finite");
    }
  if (at < m_now)
    {
      throw SchedulingInPast (at, m_now);
    }
  const std::uint64_t seq = m_nextSequence++;
  m_queue.push_back (Event{at, seq, kind, node, std::move (detail), std::move (cb)});
  std::push_heap (m_queue.begin (), m_queue.end (), Later{});
  m_pending.insert (seq);
  return EventHandle{seq};
}

bool
Simulator::Cancel (EventHandle handle)
{
  return m_pending.erase (handle.sequence) > 0;
}

bool
Simulator::IsPending (EventHandle handle) const
{
  return m_pending.count (handle.sequence) > 0;
}

void
Simulator::SetEventLog (std::ostream *log)
{
  m_log = log;
}

RunSummary
Simulator::RunUntil (SimTime end)
{
  if (end < m_now)
    {
      throw SchedulingInPast (end, m_now);
    }
  std::uint64_t processed = 0;
  while (!m_queue.empty () && m_queue.front ().fireAt <= end)
    {
      std::pop_heap (m_queue.begin (), m_queue.end (), Later{});
      Event ev = std::move (m_queue.back ());
      m_queue.pop_back ();
      if (m_pending.erase (ev.sequence) == 0)
        {
          continue; // cancelled
        }
      m_now = ev.fireAt;
      ++m_processed;
      ++processed;
      if (m_log != nullptr)
        {
          *m_log << FormatTime (ev.fireAt) << ',' << ev.sequence << ',' << ToString (ev.kind) << ',';
          if (ev.node == kNoNode)
            {
              *m_log << '-';
            }
          else
            {
              *m_log << ev.node;
            }
          *m_log << ',' << ev.detail << '\n';
        }
      ev.callback ();
    }
  m_now = end;
  return RunSummary{m_now, processed};
}

} // namespace manet
