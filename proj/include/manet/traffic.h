#ifndef MANET_TRAFFIC_H
#define MANET_TRAFFIC_H

#include "manet/rng.h"
#include "manet/types.h"

#include <cstdint>
#include <string>
#include <vector>

namespace manet {

struct CbrFlow
{
  std::uint32_t id = 0;
  NodeId src = 0;
  NodeId dst = 1;
  std::uint32_t payloadBytes = 512;
  double rate = 8.0; // packets/s
  SimTime startAt = 0.0;
  SimTime stopAt = 0.0;

  /// src != dst, rate > 0, start <= stop.
  void Validate (std::uint32_t nodeCount) const;
  std::string ToString () const;
};

/**
 * Origination instants start + k / rate for k = 0, 1, ... that fall in
 * [start, stop). A 10 s flow at 8 packets/s yields 80 packets, the first
 * at start.
 */
std::vector<SimTime> EmitSchedule (const CbrFlow &flow);
std::uint64_t PacketCount (const CbrFlow &flow);

class InsufficientNodes : public SimError
{
public:
  explicit InsufficientNodes (std::uint32_t nodes);
};

struct FlowTemplate
{
  /// 0 selects max(1, N/4).
  std::uint32_t count = 0;
  std::uint32_t payloadBytes = 512;
  double rate = 8.0;
  SimTime startAt = 1.0;
  SimTime stopAt = 0.0;
};

std::uint32_t DefaultFlowCount (std::uint32_t nodeCount);

/// Distinct random (src, dst) pairs drawn from `rng` only.
std::vector<CbrFlow> BuildFlows (std::uint32_t nodeCount, const FlowTemplate &tmpl, RngStream &rng);

} // namespace manet

#endif
