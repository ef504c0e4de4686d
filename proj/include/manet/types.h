#ifndef MANET_TYPES_H
#define MANET_TYPES_H

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace manet {

using NodeId = std::uint32_t;

/// Simulation time in seconds.
using SimTime = double;

inline constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max ();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max () - 1;

enum class ProtocolId
{
  Dsr,
  Dsdv,
  Aodv,
  Deerp,
};

std::string ToString (ProtocolId p);
/// Case-insensitive; throws std::invalid_argument on unknown names.
ProtocolId ParseProtocol (const std::string &name);

enum class MobilityModel
{
  RandomWaypoint,
  Rpgm,
  Static,
};

std::string ToString (MobilityModel m);
MobilityModel ParseMobility (const std::string &name);

/// Base for all recoverable simulator errors.
class SimError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace manet

#endif
