#ifndef MANET_MOBILITY_H
#define MANET_MOBILITY_H

#include "manet/rng.h"
#include "manet/types.h"

#include <cstdint>
#include <ostream>
#include <vector>

namespace manet {

struct Position
{
  double x = 0.0;
  double y = 0.0;
};

double Distance (const Position &a, const Position &b);

struct Area
{
  double width = 600.0;
  double height = 600.0;

  bool Contains (const Position &p) const
  {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  Position Clamp (const Position &p) const;
};

struct MobilityConfig
{
  MobilityModel model = MobilityModel::RandomWaypoint;
  Area area;
  double speedMin = 0.5; // m/s
  double speedMax = 5.0; // m/s
  double pause = 0.0;    // s
  std::uint32_t rpgmGroups = 4;
  double rpgmRadius = 50.0; // m
  /// Static model only; empty means uniform random placement.
  std::vector<Position> staticPositions;

  /// Throws SimError with the offending field name.
  void Validate () const;
};

struct Waypoint
{
  Position target;
  double speed = 0.0;
  SimTime departAt = 0.0;
};

/// Random waypoint leg sampler. Stateless apart from the config.
class RandomWaypointSampler
{
public:
  explicit RandomWaypointSampler (const MobilityConfig &config);

  Position InitialPosition (RngStream &rng) const;
  /// Target uniform over the area, speed uniform over [speedMin, speedMax],
  /// departure after the configured pause.
  Waypoint NextLeg (SimTime now, RngStream &rng) const;

private:
  MobilityConfig m_config;
};

/**
 * Piecewise-linear path: a start point followed by waypoint legs, each
 * travelled at constant speed. The node rests at a leg's target until the
 * next leg departs.
 */
class Trajectory
{
public:
  struct Leg
  {
    SimTime depart;
    SimTime arrive;
    Position from;
    Position to;
    double speed;
  };

  explicit Trajectory (Position start);

  /// Departure must not precede the previous arrival.
  void Append (const Waypoint &wp);

  /// Valid for t up to the last arrival; beyond it the node rests at the
  /// final target.
  Position PositionAt (SimTime t) const;

  /// Time at which the path is defined through (last arrival, or 0).
  SimTime HorizonEnd () const;
  const std::vector<Leg> &Legs () const { return m_legs; }
  const Position &Start () const { return m_start; }

private:
  Position m_start;
  std::vector<Leg> m_legs;
};

/**
 * Positions for every node of a scenario under RWP, RPGM or static
 * placement. Trajectories are extended lazily from per-node (and per-group)
 * random streams derived from the mobility seed alone, so the result is a
 * function of (config, seed, time) regardless of what else the run does.
 */
class MobilityManager
{
public:
  MobilityManager (const MobilityConfig &config, std::uint32_t nodeCount, std::uint64_t seed);

  Position PositionAt (NodeId node, SimTime t);

  std::uint32_t NodeCount () const { return m_nodeCount; }
  const MobilityConfig &Config () const { return m_config; }

  /// RPGM only: group of a node and whether it is the group leader.
  std::uint32_t GroupOf (NodeId node) const;
  bool IsLeader (NodeId node) const;
  /// Reference point of a node's group (RPGM) or the node's own position.
  Position ReferencePosition (NodeId node, SimTime t);

  /// All leg speeds drawn so far (for invariant checks).
  std::vector<double> LegSpeeds () const;

  /// CSV (time,node,x,y) sampled every `interval` seconds over [0, end].
  void DumpTrajectories (std::ostream &os, SimTime end, SimTime interval);
  /// Digest of positions sampled every `interval` seconds over [0, end].
  std::uint64_t TraceDigest (SimTime end, SimTime interval);

private:
  struct Walker
  {
    Trajectory path;
    RngStream rng;
  };
  struct Member
  {
    std::vector<Position> deviations; // one per leader leg boundary
    RngStream rng;
  };

  void ExtendTo (Walker &w, SimTime t);
  Position Deviation (NodeId node, SimTime t);
  Position SampleDisk (RngStream &rng) const;

  MobilityConfig m_config;
  std::uint32_t m_nodeCount;
  RandomWaypointSampler m_sampler;
  std::vector<Walker> m_walkers; // per node (RWP) or per group (RPGM)
  std::vector<Member> m_members; // RPGM only, per node
  std::vector<Position> m_static;
  std::uint32_t m_groups = 0;
};

} // namespace manet

#endif
