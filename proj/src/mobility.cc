#include "manet/mobility.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace manet {

double
Distance (const Position &a, const Position &b)
{
  return std::hypot (a.x - b.x, a.y - b.y);
}

Position
Area::Clamp (const Position &p) const
{
  return Position{std::clamp (p.x, 0.0, width), std::clamp (p.y, 0.0, height)};
}

void
MobilityConfig::Validate () const
{
  if (!(area.width > 0.0) || !(area.height > 0.0))
    {
      throw SimError ("mobility.area: dimensions must be > 0");
    }
  if (model == MobilityModel::Static)
    {
      for (const auto &p : staticPositions)
        {
          if (!area.Contains (p))
            {
              throw SimError ("mobility.positions: position outside the area");
            }
        }
      return;
    }
  if (!(speedMin > 0.0))
    {
      throw SimError ("mobility.speed_min: must be > 0");
    }
  if (!(speedMax >= speedMin))
    {
      throw SimError ("mobility.speed_max: must be >= speed_min");
    }
  if (!(pause >= 0.0))
    {
      throw SimError ("mobility.pause: must be >= 0");
    }
  if (model == MobilityModel::Rpgm)
    {
      if (rpgmGroups == 0)
        {
          throw SimError ("mobility.rpgm_groups: must be >= 1");
        }
      if (!(rpgmRadius >= 0.0))
        {
          throw SimError ("mobility.rpgm_radius: must be >= 0");
        }
    }
}

RandomWaypointSampler::RandomWaypointSampler (const MobilityConfig &config)
  : m_config (config)
{
}

Position
RandomWaypointSampler::InitialPosition (RngStream &rng) const
{
  const double x = rng.Uniform (0.0, m_config.area.width);
  const double y = rng.Uniform (0.0, m_config.area.height);
  return Position{x, y};
}

Waypoint
RandomWaypointSampler::NextLeg (SimTime now, RngStream &rng) const
{
  Waypoint wp;
  wp.target = InitialPosition (rng);
  wp.speed = rng.Uniform (m_config.speedMin, m_config.speedMax);
  wp.departAt = now + m_config.pause;
  return wp;
}

Trajectory::Trajectory (Position start)
  : m_start (start)
{
}

void
Trajectory::Append (const Waypoint &wp)
{
  const Position from = m_legs.empty () ? m_start : m_legs.back ().to;
  const SimTime earliest = m_legs.empty () ? 0.0 : m_legs.back ().arrive;
  if (wp.departAt < earliest)
    {
      throw SimError ("waypoint departs before the previous leg arrives");
    }
  if (!(wp.speed > 0.0))
    {
      throw SimError ("waypoint speed must be > 0");
    }
  const double length = Distance (from, wp.target);
  m_legs.push_back (Leg{wp.departAt, wp.departAt + length / wp.speed, from, wp.target, wp.speed});
}

SimTime
Trajectory::HorizonEnd () const
{
  return m_legs.empty () ? 0.0 : m_legs.back ().arrive;
}

Position
Trajectory::PositionAt (SimTime t) const
{
  // last leg departing at or before t
  auto it = std::upper_bound (m_legs.begin (), m_legs.end (), t,
                              [] (SimTime v, const Leg &leg) { return v < leg.depart; });
  if (it == m_legs.begin ())
    {
      return m_start;
    }
  const Leg &leg = *std::prev (it);
  if (t >= leg.arrive)
    {
      return leg.to;
    }
  const double frac = (t - leg.depart) / (leg.arrive - leg.depart);
  return Position{leg.from.x + (leg.to.x - leg.from.x) * frac, leg.from.y + (leg.to.y - leg.from.y) * frac};
}

MobilityManager::MobilityManager (const MobilityConfig &config, std::uint32_t nodeCount, std::uint64_t seed)
  : m_config (config),
    m_nodeCount (nodeCount),
    m_sampler (config)
{
  m_config.Validate ();
  switch (m_config.model)
    {
    case MobilityModel::Static:
      if (!m_config.staticPositions.empty ())
        {
          if (m_config.staticPositions.size () < nodeCount)
            {
              throw SimError ("mobility.positions: fewer positions than nodes");
            }
          m_static.assign (m_config.staticPositions.begin (), m_config.staticPositions.begin () + nodeCount);
        }
      else
        {
          for (NodeId n = 0; n < nodeCount; ++n)
            {
              RngStream rng (seed, "mobility/node", n);
              m_static.push_back (m_sampler.InitialPosition (rng));
            }
        }
      break;
    case MobilityModel::RandomWaypoint:
      for (NodeId n = 0; n < nodeCount; ++n)
        {
          RngStream rng (seed, "mobility/node", n);
          const Position start = m_sampler.InitialPosition (rng);
          m_walkers.push_back (Walker{Trajectory (start), std::move (rng)});
        }
      break;
    case MobilityModel::Rpgm:
      m_groups = std::min<std::uint32_t> (m_config.rpgmGroups, std::max<std::uint32_t> (nodeCount, 1));
      for (std::uint32_t g = 0; g < m_groups; ++g)
        {
          RngStream rng (seed, "mobility/group", g);
          const Position start = m_sampler.InitialPosition (rng);
          m_walkers.push_back (Walker{Trajectory (start), std::move (rng)});
        }
      for (NodeId n = 0; n < nodeCount; ++n)
        {
          m_members.push_back (Member{{}, RngStream (seed, "mobility/node", n)});
        }
      break;
    }
}

std::uint32_t
MobilityManager::GroupOf (NodeId node) const
{
  if (m_config.model != MobilityModel::Rpgm)
    {
      return 0;
    }
  return static_cast<std::uint32_t> ((std::uint64_t (node) * m_groups) / m_nodeCount);
}

bool
MobilityManager::IsLeader (NodeId node) const
{
  if (m_config.model != MobilityModel::Rpgm)
    {
      return false;
    }
  return node == 0 || GroupOf (node - 1) != GroupOf (node);
}

void
MobilityManager::ExtendTo (Walker &w, SimTime t)
{
  // strictly past t so the leg containing t (and the one after a rest) exists
  while (w.path.HorizonEnd () <= t)
    {
      w.path.Append (m_sampler.NextLeg (w.path.HorizonEnd (), w.rng));
    }
}

Position
MobilityManager::SampleDisk (RngStream &rng) const
{
  const double r = m_config.rpgmRadius * std::sqrt (rng.Uniform ());
  const double theta = 2.0 * std::numbers::pi * rng.Uniform ();
  return Position{r * std::cos (theta), r * std::sin (theta)};
}

Position
MobilityManager::Deviation (NodeId node, SimTime t)
{
  Walker &leader = m_walkers[GroupOf (node)];
  ExtendTo (leader, t);
  const auto &legs = leader.path.Legs ();
  // boundaries: 0, arrive_0, arrive_1, ...
  const std::size_t k = std::upper_bound (legs.begin (), legs.end (), t,
                                          [] (SimTime v, const Trajectory::Leg &leg) { return v < leg.arrive; })
                        - legs.begin ();
  Member &m = m_members[node];
  while (m.deviations.size () < k + 2)
    {
      m.deviations.push_back (SampleDisk (m.rng));
    }
  const SimTime t0 = k == 0 ? 0.0 : legs[k - 1].arrive;
  const SimTime t1 = legs[k].arrive;
  const double frac = t1 > t0 ? (t - t0) / (t1 - t0) : 1.0;
  const Position &a = m.deviations[k];
  const Position &b = m.deviations[k + 1];
  return Position{a.x + (b.x - a.x) * frac, a.y + (b.y - a.y) * frac};
}

Position
MobilityManager::ReferencePosition (NodeId node, SimTime t)
{
  switch (m_config.model)
    {
    case MobilityModel::Static:
      return m_static[node];
    case MobilityModel::RandomWaypoint:
      ExtendTo (m_walkers[node], t);
      return m_walkers[node].path.PositionAt (t);
    case MobilityModel::Rpgm:
      {
        Walker &w = m_walkers[GroupOf (node)];
        ExtendTo (w, t);
        return w.path.PositionAt (t);
      }
    }
  return {};
}

Position
MobilityManager::PositionAt (NodeId node, SimTime t)
{
  const Position ref = ReferencePosition (node, t);
  if (m_config.model != MobilityModel::Rpgm || IsLeader (node))
    {
      return ref;
    }
  const Position dev = Deviation (node, t);
  return m_config.area.Clamp (Position{ref.x + dev.x, ref.y + dev.y});
}

std::vector<double>
MobilityManager::LegSpeeds () const
{
  std::vector<double> speeds;
  for (const auto &w : m_walkers)
    {
      for (const auto &leg : w.path.Legs ())
        {
          speeds.push_back (leg.speed);
        }
    }
  return speeds;
}

void
MobilityManager::DumpTrajectories (std::ostream &os, SimTime end, SimTime interval)
{
  char buf[128];
  os << "time,node,x,y\n";
  for (std::uint64_t step = 0;; ++step)
    {
      const SimTime t = step * interval;
      if (t > end + 1e-12)
        {
          break;
        }
      for (NodeId n = 0; n < m_nodeCount; ++n)
        {
          const Position p = PositionAt (n, t);
          std::snprintf (buf, sizeof buf, "%.6f,%u,%.6f,%.6f\n", t, n, p.x, p.y);
          os << buf;
        }
    }
}

std::uint64_t
MobilityManager::TraceDigest (SimTime end, SimTime interval)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t step = 0;; ++step)
    {
      const SimTime t = step * interval;
      if (t > end + 1e-12)
        {
          break;
        }
      for (NodeId n = 0; n < m_nodeCount; ++n)
        {
          const Position p = PositionAt (n, t);
          h = HashDouble (p.x, h);
          h = HashDouble (p.y, h);
        }
    }
  return h;
}

} // namespace manet
