#ifndef MANET_SCENARIO_H
#define MANET_SCENARIO_H

#include "manet/aodv.h"
#include "manet/dsdv.h"
#include "manet/dsr.h"
#include "manet/energy.h"
#include "manet/mobility.h"
#include "manet/radio.h"
#include "manet/traffic.h"

#include <string>
#include <vector>

namespace manet {

struct SleepWindow
{
  NodeId node = 0;
  SimTime start = 0.0;
  SimTime end = 0.0;
};

class InvalidConfig : public SimError
{
public:
  InvalidConfig (const std::string &field, const std::string &message);
  const std::string &Field () const { return m_field; }

private:
  std::string m_field;
};

/**
 * Everything that determines a run. Stored and exchanged as flat
 * "key = value" text; the same keys are accepted on the command line.
 */
struct ScenarioConfig
{
  std::uint64_t seed = 1;
  ProtocolId protocol = ProtocolId::Dsr;
  double duration = 300.0;
  std::uint32_t nodes = 20;
  MobilityConfig mobility;
  RadioConfig radio;
  EnergyParams energy;
  FlowTemplate traffic;
  /// Explicit flows "src>dst[@rate][:start-stop][/payload]" separated by
  /// ';'. When non-empty, replaces the generated flows; omitted parts come
  /// from the traffic template.
  std::string flowPairs;
  std::vector<SleepWindow> sleepWindows;
  /// Empty means the built-in table.
  std::string rpscTable;
  bool rpscNearest = false;
  double modeWindow = 1.0;
  DsdvParams dsdv;
  DsrParams dsr;
  AodvParams aodv;
  /// Sampling step for trajectory and energy traces.
  double traceInterval = 1.0;

  /// Traffic stop time with 0 meaning "end of run".
  SimTime TrafficStop () const;
  /// Flows listed in flowPairs, resolved against the traffic template.
  std::vector<CbrFlow> ExplicitFlows () const;

  /// Throws InvalidConfig naming the first offending key.
  void Validate () const;

  void Set (const std::string &key, const std::string &value);
  std::string Get (const std::string &key) const;
  /// One "key = value" line per field, in registry order.
  std::string Dump () const;

  /// Apply "key = value" lines ('#' comments, blank lines allowed) on top of base.
  static ScenarioConfig Parse (const std::string &text, ScenarioConfig base);
  static ScenarioConfig Parse (const std::string &text);
  static ScenarioConfig Load (const std::string &path, ScenarioConfig base);
  static ScenarioConfig Load (const std::string &path);
};

struct ConfigField
{
  std::string key;
  std::string help;
};

/// Every configurable key with a short description.
const std::vector<ConfigField> &ConfigFields ();

class UnknownPreset : public SimError
{
public:
  explicit UnknownPreset (const std::string &name);
};

struct SweepPoint
{
  std::uint32_t nodes;
  double width;
  double height;
};

/// A base scenario swept over node count (and area).
struct Experiment
{
  std::string name;
  ScenarioConfig base;
  std::vector<SweepPoint> sweep;

  std::vector<std::uint32_t> NodeCounts () const;
  /// base with the i-th sweep point applied.
  ScenarioConfig At (std::size_t i) const;
};

/**
 * sim1: RPGM, 900 s, 0.5-5 m/s, pause 0, CBR 512 B at 8 packets/s,
 *       queue 50, (area, nodes) in lockstep (500,20) (1000,40) (1500,60) (2000,80).
 * sim2: sim1 with RWP, 300 s, 600 x 600 m, nodes 5, 10, 15, 20, 25.
 */
Experiment Preset (const std::string &name);
std::vector<std::string> PresetNames ();

} // namespace manet

#endif
