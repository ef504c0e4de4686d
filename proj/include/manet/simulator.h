#ifndef MANET_SIMULATOR_H
#define MANET_SIMULATOR_H

#include "manet/types.h"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

namespace manet {

enum class EventKind
{
  Mobility,
  FrameDelivery,
  Timer,
  Traffic,
  Sample,
};

const char *ToString (EventKind k);

struct EventHandle
{
  std::uint64_t sequence = 0;
  bool Valid () const { return sequence != 0; }
};

class SchedulingInPast : public SimError
{
public:
  SchedulingInPast (SimTime at, SimTime now);
};

struct RunSummary
{
  SimTime clock = 0.0;
  std::uint64_t eventsProcessed = 0;
};

/**
 * Discrete-event engine. Events fire in (time, insertion sequence) order;
 * the clock only moves forward.
 */
class Simulator
{
public:
  using Callback = std::function<void ()>;

  Simulator () = default;
  Simulator (const Simulator &) = delete;
  Simulator &operator= (const Simulator &) = delete;

  SimTime Now () const { return m_now; }

  EventHandle Schedule (SimTime at, EventKind kind, NodeId node, std::string detail, Callback cb);
  EventHandle ScheduleIn (SimTime delay, EventKind kind, NodeId node, std::string detail, Callback cb)
  {
    return Schedule (m_now + delay, kind, node, std::move (detail), std::move (cb));
  }

  /// True if the event was still pending and is now suppressed.
  bool Cancel (EventHandle handle);
  bool IsPending (EventHandle handle) const;

  RunSummary RunUntil (SimTime end);

  std::size_t PendingCount () const { return m_pending.size (); }

  /// When set, every processed event is written as one CSV line
  /// (time,sequence,kind,node,detail).
  void SetEventLog (std::ostream *log);

private:
  struct Event
  {
    SimTime fireAt;
    std::uint64_t sequence;
    EventKind kind;
    NodeId node;
    std::string detail;
    Callback callback;
  };
  struct Later
  {
    bool operator() (const Event &a, const Event &b) const
    {
      if (a.fireAt != b.fireAt)
        {
          return a.fireAt > b.fireAt;
        }
      return a.sequence > b.sequence;
    }
  };

  SimTime m_now = 0.0;
  std::uint64_t m_nextSequence = 1;
  std::uint64_t m_processed = 0;
  std::vector<Event> m_queue; // binary heap ordered by Later
  std::unordered_set<std::uint64_t> m_pending;
  std::ostream *m_log = nullptr;
};

/// Fixed-format time string used in all logs and CSV output.
std::string FormatTime (SimTime t);

} // namespace manet

#endif
