#ifndef MANET_DSDV_H
#define MANET_DSDV_H

#include "manet/routing.h"

#include <functional>
#include <map>

namespace manet {

inline constexpr std::uint32_t kDsdvInfinity = 0xffff;

struct DsdvEntry
{
  NodeId dest = 0;
  NodeId nextHop = kNoNode;
  std::uint32_t metric = kDsdvInfinity;
  /// Even: valid route. Odd: destination reported unreachable.
  std::uint64_t seq = 0;
  SimTime installedAt = 0.0;
  SimTime refreshedAt = 0.0;

  bool Valid () const { return seq % 2 == 0 && metric < kDsdvInfinity; }
};

struct DsdvParams
{
  double period = 15.0;
  /// A route not re-advertised by its next hop for this long is dropped.
  double staleAfter = 45.0;
};

/**
 * Destination-sequenced distance vector.
 *
 * Full-table updates go out every period with the node's own sequence
 * number raised by two; a newer sequence number always wins and an equal
 * one only with a shorter metric. A detected link break marks every route
 * through that neighbour unreachable (odd sequence, infinite metric) and
 * is broadcast at once as an incremental update, as is any unreachable
 * report learned from a neighbour.
 */
class DsdvAgent : public RoutingAgent
{
public:
  DsdvAgent (RoutingHost &host, const DsdvParams &params = {});

  ProtocolId Protocol () const override { return ProtocolId::Dsdv; }
  void Start () override;

  /// Periodic updates are emitted only while the gate returns true.
  void SetPeriodicGate (std::function<bool ()> gate) { m_gate = std::move (gate); }

  /// One update period: broadcast the full table if the gate allows.
  /// Returns whether an update was sent.
  bool PeriodicUpdate ();
  DsdvAdvert FullDump () const;

  void ReceiveControl (const Frame &frame) override;
  std::optional<NodeId> NextHopFor (NodeId dest) override;
  std::optional<Route> Lookup (NodeId dest) override;
  void OnLinkBreak (NodeId nextHop, const Frame &frame) override;

  /// Merge an update heard from `from`; returns the entries that turned
  /// unreachable as a result.
  std::vector<DsdvAdvert::Item> Merge (const DsdvAdvert &advert, NodeId from);

  const std::map<NodeId, DsdvEntry> &Table () const { return m_table; }
  std::uint64_t OwnSeq () const { return m_table.at (m_host.Self ()).seq; }

private:
  void ExpireStale ();
  void Trigger (std::vector<DsdvAdvert::Item> items);
  bool Usable (const DsdvEntry &e) const;

  DsdvParams m_params;
  std::map<NodeId, DsdvEntry> m_table;
  std::function<bool ()> m_gate;
  std::uint64_t m_ticks = 0;
};

} // namespace manet

#endif
