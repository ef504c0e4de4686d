#include "manet/types.h"

#include <algorithm>
#include <cctype>

namespace manet {

namespace {

std::string
Lower (std::string s)
{
  std::transform (s.begin (), s.end (), s.begin (), [] (unsigned char c) { return std::tolower (c); });
  return s;
}

} // namespace

std::string
ToString (ProtocolId p)
{
  switch (p)
    {
    case ProtocolId::Dsr:
      return "DSR";
    case ProtocolId::Dsdv:
      return "DSDV";
    case ProtocolId::Aodv:
      return "AODV";
    case ProtocolId::Deerp:
      return "DEERP";
    }
  return "?";
}

ProtocolId
ParseProtocol (const std::string &name)
{
  const std::string n = Lower (name);
  if (n == "dsr")
    return ProtocolId::Dsr;
  if (n == "dsdv")
    return ProtocolId::Dsdv;
  if (n == "aodv")
    return ProtocolId::Aodv;
  if (n == "deerp")
    return ProtocolId::Deerp;
  throw std::invalid_argument ("unknown protocol: " + name);
}

std::string
ToString (MobilityModel m)
{
  switch (m)
    {
    case MobilityModel::RandomWaypoint:
      return "rwp";
    case MobilityModel::Rpgm:
      return "rpgm";
    case MobilityModel::Static:
      return "static";
    }
  return "?";
}

MobilityModel
ParseMobility (const std::string &name)
{
  const std::string n = Lower (name);
  if (n == "rwp" || n == "randomwaypoint" || n == "random_waypoint")
    return MobilityModel::RandomWaypoint;
  if (n == "rpgm")
    return MobilityModel::Rpgm;
  if (n == "static")
    return MobilityModel::Static;
  throw std::invalid_argument ("unknown mobility model: " + name);
}

} // namespace manet
