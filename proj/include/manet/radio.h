#ifndef MANET_RADIO_H
#define MANET_RADIO_H

#include "manet/energy.h"
#include "manet/mobility.h"
#include "manet/packet.h"
#include "manet/simulator.h"

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

namespace manet {

struct RadioConfig
{
  double range = 250.0;      // m
  double bitrate = 2.0e6;    // bit/s
  std::uint32_t queueCapacity = 50;
  std::uint32_t macOverheadBytes = 58;
  /// Control frames jump ahead of queued data frames.
  bool controlPriority = false;

  void Validate () const;
};

enum class EnqueueResult
{
  Accepted,
  Dropped,
};

/// Drop-tail FIFO with an optional control-first ordering.
class InterfaceQueue
{
public:
  explicit InterfaceQueue (std::uint32_t capacity = 50, bool controlPriority = false);

  EnqueueResult Enqueue (Frame frame);
  bool Empty () const { return m_frames.empty (); }
  std::size_t Size () const { return m_frames.size (); }
  std::uint32_t Capacity () const { return m_capacity; }
  const Frame &Front () const { return m_frames.front (); }
  Frame Pop ();
  const std::deque<Frame> &Frames () const { return m_frames; }
  std::deque<Frame> Drain ();

private:
  std::deque<Frame> m_frames;
  std::uint32_t m_capacity;
  bool m_controlPriority;
};

/// Callbacks from the link layer into the node stack.
class MacListener
{
public:
  virtual ~MacListener () = default;
  virtual void OnTransmitStart (NodeId node, const Frame &frame) = 0;
  virtual void OnFrameTransmitted (NodeId node, const Frame &frame) = 0;
  virtual void OnFrameReceived (NodeId node, const Frame &frame) = 0;
  /// A unicast frame found no live receiver in range.
  virtual void OnLinkBreak (NodeId node, const Frame &frame) = 0;
  /// Frame discarded because its sender ran out of energy.
  virtual void OnFrameLost (NodeId node, const Frame &frame) = 0;
};

struct MacCounters
{
  std::uint64_t enqueueAttempts = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t droppedQueue = 0;
  std::uint64_t droppedDead = 0;
  std::uint64_t linkBreaks = 0;
  std::uint64_t deliveries = 0;
};

/**
 * Unit-disk link layer with exclusive radios.
 *
 * A radio is either idle, transmitting or receiving one frame. A sender
 * starts a frame once its own radio and every intended receiver's radio
 * are free (the receivers being the in-range destination for unicast, all
 * live in-range neighbours for broadcast); otherwise it waits until they
 * free up. There is no interference or capture: a started frame always
 * reaches the receivers chosen at its start. Unicast to a destination out
 * of range at start is still sent and reported as a link break at its end.
 */
class Channel
{
public:
  Channel (Simulator &sim, MobilityManager &mobility, const RadioConfig &config,
           std::vector<EnergyAccount> &accounts, MacListener &listener);

  /// Nodes within range of `node` at t, excluding itself, ascending.
  std::vector<NodeId> Neighbors (NodeId node, SimTime t);
  bool InRange (NodeId a, NodeId b, SimTime t);

  /// Wraps the payload in a frame (size includes link overhead) and queues it.
  EnqueueResult Send (NodeId node, NodeId dst, Payload payload);
  EnqueueResult Enqueue (NodeId node, Frame frame);

  double Airtime (std::uint32_t bits) const { return bits / m_config.bitrate; }
  std::uint32_t FrameBits (const Payload &payload) const;

  /// Radio sleep window boundary.
  void SetSleeping (NodeId node, bool sleeping);

  /// Charge frames still on the air at `end` pro rata and bring every
  /// account up to `end`.
  void FinishRun (SimTime end);

  const MacCounters &Counters () const { return m_counters; }
  const InterfaceQueue &Queue (NodeId node) const { return m_radios[node].queue; }
  std::size_t InFlightCount () const { return m_inFlight.size (); }
  /// Data packets sitting in queues or on the air.
  std::vector<const DataPacket *> PendingData () const;
  bool Transmitting (NodeId node) const { return m_radios[node].transmitting; }
  SimTime BusyUntil (NodeId node) const { return m_radios[node].busyUntil; }
  const RadioConfig &Config () const { return m_config; }

private:
  struct Radio
  {
    InterfaceQueue queue;
    SimTime busyUntil = 0.0;
    bool transmitting = false;
    EventHandle retry;
  };
  struct Transmission
  {
    Frame frame;
    NodeId sender;
    std::vector<NodeId> receivers;
  };

  void TryTransmit (NodeId node);
  void ScheduleRetry (NodeId node, SimTime at);
  void EndTransmission (std::uint64_t uid);
  bool Reachable (NodeId node, SimTime t);
  void FlushDead (NodeId node);

  Simulator &m_sim;
  MobilityManager &m_mobility;
  RadioConfig m_config;
  std::vector<EnergyAccount> &m_accounts;
  MacListener &m_listener;
  std::vector<Radio> m_radios;
  std::map<std::uint64_t, Transmission> m_inFlight;
  std::uint64_t m_nextUid = 1;
  MacCounters m_counters;
};

} // namespace manet

#endif
