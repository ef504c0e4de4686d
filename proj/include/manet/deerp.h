#ifndef MANET_DEERP_H
#define MANET_DEERP_H

#include "manet/routing.h"

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace manet {

enum class Mode
{
  Idle,
  Tx,
  Rx,
  Sleep, // reserved, never produced by the classifier
};

const char *ToString (Mode m);

/**
 * Per-node operational mode from recent radio activity. A node is in Tx
 * for W seconds after it transmits or originates a frame, otherwise in Rx
 * for W seconds after it receives a unicast frame addressed to it,
 * otherwise Idle. Activity at time e covers [e, e + W).
 */
class ModeTracker
{
public:
  struct Segment
  {
    SimTime start;
    SimTime end;
    Mode mode;
  };

  explicit ModeTracker (std::uint32_t nodeCount, double window = 1.0);

  /// Times must be nondecreasing per node and kind.
  void RecordTx (NodeId node, SimTime t);
  void RecordRx (NodeId node, SimTime t);

  Mode Classify (NodeId node, SimTime t) const;
  /// Consecutive segments covering [0, end], adjacent equal modes merged.
  std::vector<Segment> Timeline (NodeId node, SimTime end) const;
  /// CSV (time,node,mode), one line per mode change including t=0.
  void WriteCsv (std::ostream &os, SimTime end) const;

  double Window () const { return m_window; }
  std::uint32_t NodeCount () const { return static_cast<std::uint32_t> (m_tx.size ()); }

private:
  struct Interval
  {
    SimTime start;
    SimTime end;
  };
  using Coverage = std::vector<Interval>;

  void Add (Coverage &c, SimTime t);
  static bool Covers (const Coverage &c, SimTime t);

  double m_window;
  std::vector<Coverage> m_tx;
  std::vector<Coverage> m_rx;
};

struct ProtocolAssignment
{
  ProtocolId idle = ProtocolId::Dsr;
  ProtocolId tx = ProtocolId::Dsr;
  ProtocolId rx = ProtocolId::Dsr;

  ProtocolId For (Mode m) const;
  /// Distinct protocols in idle, tx, rx order.
  std::vector<ProtocolId> Protocols () const;
  bool Uses (ProtocolId p) const;
  std::string ToString () const;
  bool operator== (const ProtocolAssignment &) const = default;
};

struct RpscRow
{
  MobilityModel mobility = MobilityModel::RandomWaypoint;
  std::uint32_t nodesMin = 0;
  std::uint32_t nodesMax = 0;
  double speedMin = 0.0;
  double speedMax = 0.0;
  ProtocolAssignment assignment;

  bool Matches (MobilityModel m, std::uint32_t nodes, double speed) const;
  /// Throws SimError on empty ranges or a DEERP entry.
  void Validate () const;
};

class NoMatchingRow : public SimError
{
public:
  NoMatchingRow (MobilityModel m, std::uint32_t nodes, double speed);
};

/// Routing protocol selection criteria: an ordered list of rows.
class RpscTable
{
public:
  RpscTable () = default;
  explicit RpscTable (std::vector<RpscRow> rows);

  /// RWP 5-25 nodes, 1-10 m/s: Idle DSR, Tx DSDV, Rx DSR.
  /// RPGM 20-80 nodes, 0.5-5 m/s: Idle DSDV, Tx DSDV, Rx DSR.
  static RpscTable Default ();
  /// One row per line: mobility, nodes_min, nodes_max, speed_min,
  /// speed_max, idle, tx, rx. Commas or blanks separate fields; '#' starts
  /// a comment.
  static RpscTable Parse (const std::string &text);
  static RpscTable Load (const std::string &path);
  /// Every row maps all three modes to one protocol.
  static RpscTable Uniform (ProtocolId p);

  /// Rejects malformed rows and overlapping rows.
  void Validate () const;

  /**
   * Assignment of the row matching the mobility model, node count and
   * maximum speed. Throws NoMatchingRow unless `nearest` is set, in which
   * case the closest row of the same mobility model is used.
   */
  ProtocolAssignment Select (MobilityModel mobility, std::uint32_t nodes, double speedMin, double speedMax,
                             bool nearest = false) const;

  const std::vector<RpscRow> &Rows () const { return m_rows; }
  std::string ToString () const;

private:
  std::vector<RpscRow> m_rows;
};

/**
 * Hybrid agent composing the protocols of an assignment. Every component
 * keeps its own state; the protocol assigned to the node's current mode is
 * asked for a route first, then the others. DSDV periodic updates go out
 * only while the current mode is assigned to DSDV.
 */
class DeerpAgent : public RoutingAgent
{
public:
  using ModeQuery = std::function<Mode ()>;
  using AgentFactory = std::function<std::unique_ptr<RoutingAgent> (ProtocolId)>;

  DeerpAgent (RoutingHost &host, const ProtocolAssignment &assignment, ModeQuery mode, const AgentFactory &factory);

  ProtocolId Protocol () const override { return ProtocolId::Deerp; }
  void Start () override;

  void ReceiveControl (const Frame &frame) override;
  std::optional<NodeId> NextHopFor (NodeId dest) override;
  std::optional<Route> Lookup (NodeId dest) override;
  bool CanDiscover () const override;
  bool DiscoversInTransit () const override;
  void BufferAndDiscover (DataPacket packet) override;
  void ForwardSourceRouted (DataPacket packet) override;
  void OnLinkBreak (NodeId nextHop, const Frame &frame) override;
  void NoteRouteUsed (NodeId dest, const DataPacket &packet) override;
  void OnTransitNoRoute (const DataPacket &packet) override;
  std::size_t BufferedCount () const override;
  std::vector<const DataPacket *> BufferedPackets () const override;
  ProtocolCounters TotalCounters () const override;

  const ProtocolAssignment &Assignment () const { return m_assignment; }
  Mode CurrentMode () const { return m_mode (); }
  /// Component for p, or nullptr if the assignment does not use it.
  RoutingAgent *Component (ProtocolId p) const;
  /// Protocol that answered the last successful lookup.
  std::optional<ProtocolId> LastAnswer () const { return m_lastAnswer; }

private:
  /// Components in query order for the current mode.
  std::vector<RoutingAgent *> QueryOrder () const;
  RoutingAgent *Discoverer () const;

  ProtocolAssignment m_assignment;
  ModeQuery m_mode;
  std::vector<std::pair<ProtocolId, std::unique_ptr<RoutingAgent>>> m_components;
  std::optional<ProtocolId> m_lastAnswer;
};

} // namespace manet

#endif
