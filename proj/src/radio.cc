#include "manet/radio.h"

#include <algorithm>

namespace manet {

void
RadioConfig::Validate () const
{
  if (!(range > 0.0))
    {
      throw SimError ("radio.range: must be > 0");
    }
  if (!(bitrate > 0.0))
    {
      throw SimError ("radio.bitrate: must be > 0");
    }
  if (queueCapacity < 1)
    {
      throw SimError ("radio.queue_capacity: must be >= 1");
    }
}

InterfaceQueue::InterfaceQueue (std::uint32_t capacity, bool controlPriority)
  : m_capacity (capacity),
    m_controlPriority (controlPriority)
{
}

EnqueueResult
InterfaceQueue::Enqueue (Frame frame)
{
  if (m_frames.size () >= m_capacity)
    {
      return EnqueueResult::Dropped;
    }
  if (m_controlPriority && !frame.IsData ())
    {
      // behind other control frames, ahead of all data
      auto pos = std::find_if (m_frames.begin (), m_frames.end (), [] (const Frame &f) { return f.IsData (); });
      m_frames.insert (pos, std::move (frame));
    }
  else
    {
      m_frames.push_back (std::move (frame));
    }
  return EnqueueResult::Accepted;
}

Frame
InterfaceQueue::Pop ()
{
  Frame f = std::move (m_frames.front ());
  m_frames.pop_front ();
  return f;
}

std::deque<Frame>
InterfaceQueue::Drain ()
{
  std::deque<Frame> out;
  out.swap (m_frames);
  return out;
}

Channel::Channel (Simulator &sim, MobilityManager &mobility, const RadioConfig &config,
                  std::vector<EnergyAccount> &accounts, MacListener &listener)
  : m_sim (sim),
    m_mobility (mobility),
    m_config (config),
    m_accounts (accounts),
    m_listener (listener)
{
  m_config.Validate ();
  for (std::size_t i = 0; i < accounts.size (); ++i)
    {
      m_radios.push_back (Radio{InterfaceQueue (m_config.queueCapacity, m_config.controlPriority), 0.0, false, {}});
    }
}

bool
Channel::InRange (NodeId a, NodeId b, SimTime t)
{
  return Distance (m_mobility.PositionAt (a, t), m_mobility.PositionAt (b, t)) <= m_config.range;
}

std::vector<NodeId>
Channel::Neighbors (NodeId node, SimTime t)
{
  std::vector<NodeId> out;
  const Position self = m_mobility.PositionAt (node, t);
  for (NodeId n = 0; n < m_radios.size (); ++n)
    {
      if (n != node && Distance (self, m_mobility.PositionAt (n, t)) <= m_config.range)
        {
          out.push_back (n);
        }
    }
  return out;
}

std::uint32_t
Channel::FrameBits (const Payload &payload) const
{
  return 8 * (PayloadBytes (payload) + m_config.macOverheadBytes);
}

EnqueueResult
Channel::Send (NodeId node, NodeId dst, Payload payload)
{
  Frame f;
  f.src = node;
  f.dst = dst;
  f.sizeBits = FrameBits (payload);
  f.payload = std::move (payload);
  return Enqueue (node, std::move (f));
}

EnqueueResult
Channel::Enqueue (NodeId node, Frame frame)
{
  frame.uid = m_nextUid++;
  frame.enqueuedAt = m_sim.Now ();
  ++m_counters.enqueueAttempts;
  EnergyAccount &acct = m_accounts[node];
  acct.AccrueTo (m_sim.Now ());
  if (!acct.Alive ())
    {
      ++m_counters.droppedDead;
      return EnqueueResult::Dropped;
    }
  Radio &r = m_radios[node];
  if (r.queue.Enqueue (std::move (frame)) == EnqueueResult::Dropped)
    {
      ++m_counters.droppedQueue;
      return EnqueueResult::Dropped;
    }
  if (!r.transmitting && !m_sim.IsPending (r.retry))
    {
      TryTransmit (node);
    }
  return EnqueueResult::Accepted;
}

bool
Channel::Reachable (NodeId node, SimTime t)
{
  EnergyAccount &acct = m_accounts[node];
  acct.AccrueTo (t);
  return acct.Alive () && !acct.Sleeping ();
}

void
Channel::ScheduleRetry (NodeId node, SimTime at)
{
  Radio &r = m_radios[node];
  if (m_sim.IsPending (r.retry))
    {
      return;
    }
  r.retry = m_sim.Schedule (at, EventKind::Timer, node, "mac-retry", [this, node] () { TryTransmit (node); });
}

void
Channel::FlushDead (NodeId node)
{
  for (Frame &f : m_radios[node].queue.Drain ())
    {
      ++m_counters.droppedDead;
      m_listener.OnFrameLost (node, f);
    }
}

void
Channel::TryTransmit (NodeId node)
{
  Radio &r = m_radios[node];
  if (r.transmitting || r.queue.Empty ())
    {
      return;
    }
  const SimTime now = m_sim.Now ();
  EnergyAccount &acct = m_accounts[node];
  acct.AccrueTo (now);
  if (!acct.Alive ())
    {
      FlushDead (node);
      return;
    }
  if (r.busyUntil > now)
    {
      ScheduleRetry (node, r.busyUntil);
      return;
    }
  if (acct.Sleeping ())
    {
      return; // resumed by SetSleeping(false)
    }

  const Frame &head = r.queue.Front ();
  std::vector<NodeId> receivers;
  SimTime blockedUntil = now;
  if (head.IsBroadcast ())
    {
      for (NodeId n : Neighbors (node, now))
        {
          if (!Reachable (n, now))
            {
              continue;
            }
          if (m_radios[n].busyUntil > now)
            {
              blockedUntil = std::max (blockedUntil, m_radios[n].busyUntil);
            }
          receivers.push_back (n);
        }
    }
  else if (head.dst < m_radios.size () && InRange (node, head.dst, now) && Reachable (head.dst, now))
    {
      if (m_radios[head.dst].busyUntil > now)
        {
          blockedUntil = m_radios[head.dst].busyUntil;
        }
      receivers.push_back (head.dst);
    }
  if (blockedUntil > now)
    {
      ScheduleRetry (node, blockedUntil);
      return;
    }

  Frame frame = r.queue.Pop ();
  acct.BeginActivity (now);
  for (NodeId n : receivers)
    {
      m_accounts[n].BeginActivity (now);
    }
  const SimTime end = now + Airtime (frame.sizeBits);
  frame.txStart = now;
  frame.rxEnd = end;
  r.transmitting = true;
  r.busyUntil = end;
  for (NodeId n : receivers)
    {
      m_radios[n].busyUntil = end;
    }
  m_listener.OnTransmitStart (node, frame);
  const std::uint64_t uid = frame.uid;
  std::string detail = std::string (PayloadName (frame.payload)) + " uid=" + std::to_string (uid) + " dst="
                       + (frame.IsBroadcast () ? std::string ("*") : std::to_string (frame.dst));
  m_inFlight.emplace (uid, Transmission{std::move (frame), node, std::move (receivers)});
  m_sim.Schedule (end, EventKind::FrameDelivery, node, std::move (detail), [this, uid] () { EndTransmission (uid); });
}

void
Channel::EndTransmission (std::uint64_t uid)
{
  auto it = m_inFlight.find (uid);
  Transmission tx = std::move (it->second);
  m_inFlight.erase (it);
  const Frame &frame = tx.frame;
  const NodeId sender = tx.sender;
  Radio &r = m_radios[sender];
  r.transmitting = false;

  EnergyAccount &acct = m_accounts[sender];
  acct.ChargeTx (frame.sizeBits, frame.txStart, frame.rxEnd);
  const bool senderOk = acct.Alive ();

  std::vector<NodeId> delivered;
  for (NodeId n : tx.receivers)
    {
      EnergyAccount &ra = m_accounts[n];
      ra.ChargeRx (frame.sizeBits, frame.txStart, frame.rxEnd);
      if (senderOk && ra.Alive ())
        {
          delivered.push_back (n);
        }
    }

  if (!senderOk)
    {
      ++m_counters.droppedDead;
      m_listener.OnFrameLost (sender, frame);
      FlushDead (sender);
      return;
    }

  ++m_counters.transmitted;
  m_listener.OnFrameTransmitted (sender, frame);
  if (!frame.IsBroadcast () && delivered.empty ())
    {
      ++m_counters.linkBreaks;
      m_listener.OnLinkBreak (sender, frame);
    }
  for (NodeId n : delivered)
    {
      ++m_counters.deliveries;
      m_listener.OnFrameReceived (n, frame);
    }
  TryTransmit (sender);
}

void
Channel::SetSleeping (NodeId node, bool sleeping)
{
  m_accounts[node].SetSleeping (m_sim.Now (), sleeping);
  if (!sleeping)
    {
      TryTransmit (node);
    }
}

std::vector<const DataPacket *>
Channel::PendingData () const
{
  std::vector<const DataPacket *> out;
  for (const auto &r : m_radios)
    {
      for (const auto &f : r.queue.Frames ())
        {
          if (const auto *d = std::get_if<DataPacket> (&f.payload))
            {
              out.push_back (d);
            }
        }
    }
  for (const auto &[uid, tx] : m_inFlight)
    {
      if (const auto *d = std::get_if<DataPacket> (&tx.frame.payload))
        {
          out.push_back (d);
        }
    }
  return out;
}

void
Channel::FinishRun (SimTime end)
{
  for (const auto &[uid, tx] : m_inFlight)
    {
      m_accounts[tx.sender].ChargePartial (true, tx.frame.txStart, end);
      for (NodeId n : tx.receivers)
        {
          m_accounts[n].ChargePartial (false, tx.frame.txStart, end);
        }
    }
  for (auto &acct : m_accounts)
    {
      acct.AccrueTo (end);
    }
}

} // namespace manet
