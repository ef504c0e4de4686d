#include "manet/scenario.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace manet {

namespace {

std::string
Fmt (double v)
{
  char buf[40];
  std::snprintf (buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string
Trim (const std::string &s)
{
  auto b = s.find_first_not_of (" \t\r\n");
  if (b == std::string::npos)
    {
      return "";
    }
  auto e = s.find_last_not_of (" \t\r\n");
  return s.substr (b, e - b + 1);
}

std::vector<std::string>
Split (const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in (s);
  while (std::getline (in, cur, sep))
    {
      cur = Trim (cur);
      if (!cur.empty ())
        {
          out.push_back (cur);
        }
    }
  return out;
}

double
ToDouble (const std::string &s)
{
  std::size_t used = 0;
  const double v = std::stod (s, &used);
  if (used != s.size ())
    {
      throw std::invalid_argument ("not a number: " + s);
    }
  return v;
}

std::uint64_t
ToUint (const std::string &s)
{
  if (s.empty () || s[0] == '-')
    {
      throw std::invalid_argument ("not a non-negative integer: " + s);
    }
  std::size_t used = 0;
  const unsigned long long v = std::stoull (s, &used);
  if (used != s.size ())
    {
      throw std::invalid_argument ("not an integer: " + s);
    }
  return v;
}

std::uint32_t
ToUint32 (const std::string &s)
{
  const std::uint64_t v = ToUint (s);
  if (v > 0xffffffffULL)
    {
      throw std::invalid_argument ("out of range: " + s);
    }
  return static_cast<std::uint32_t> (v);
}

bool
ToBool (const std::string &s)
{
  std::string l = s;
  std::transform (l.begin (), l.end (), l.begin (), [] (unsigned char c) { return std::tolower (c); });
  if (l == "true" || l == "1" || l == "yes" || l == "on")
    {
      return true;
    }
  if (l == "false" || l == "0" || l == "no" || l == "off")
    {
      return false;
    }
  throw std::invalid_argument ("not a boolean: " + s);
}

std::string
FmtBool (bool b)
{
  return b ? "true" : "false";
}

std::string
FmtPositions (const std::vector<Position> &ps)
{
  std::string out;
  for (const auto &p : ps)
    {
      if (!out.empty ())
        {
          out += ';';
        }
      out += Fmt (p.x) + ':' + Fmt (p.y);
    }
  return out;
}

std::vector<Position>
ParsePositions (const std::string &s)
{
  std::vector<Position> out;
  for (const auto &item : Split (s, ';'))
    {
      auto colon = item.find (':');
      if (colon == std::string::npos)
        {
          throw std::invalid_argument ("expected x:y, got " + item);
        }
      out.push_back (Position{ToDouble (Trim (item.substr (0, colon))), ToDouble (Trim (item.substr (colon + 1)))});
    }
  return out;
}

std::string
FmtSleep (const std::vector<SleepWindow> &ws)
{
  std::string out;
  for (const auto &w : ws)
    {
      if (!out.empty ())
        {
          out += ';';
        }
      out += std::to_string (w.node) + ':' + Fmt (w.start) + '-' + Fmt (w.end);
    }
  return out;
}

std::vector<SleepWindow>
ParseSleep (const std::string &s)
{
  std::vector<SleepWindow> out;
  for (const auto &item : Split (s, ';'))
    {
      auto colon = item.find (':');
      auto dash = item.find ('-', colon == std::string::npos ? 0 : colon);
      if (colon == std::string::npos || dash == std::string::npos)
        {
          throw std::invalid_argument ("expected node:start-end, got " + item);
        }
      SleepWindow w;
      w.node = ToUint32 (Trim (item.substr (0, colon)));
      w.start = ToDouble (Trim (item.substr (colon + 1, dash - colon - 1)));
      w.end = ToDouble (Trim (item.substr (dash + 1)));
      out.push_back (w);
    }
  return out;
}

struct Field
{
  const char *key;
  const char *help;
  std::function<std::string (const ScenarioConfig &)> get;
  std::function<void (ScenarioConfig &, const std::string &)> set;
};

#define DOUBLE_FIELD(KEY, MEMBER, HELP)                                                                                \
  Field                                                                                                                \
  {                                                                                                                    \
    KEY, HELP, [] (const ScenarioConfig &c) { return Fmt (c.MEMBER); },                                                \
        [] (ScenarioConfig &c, const std::string &v) { c.MEMBER = ToDouble (v); }                                      \
  }
#define UINT_FIELD(KEY, MEMBER, HELP)                                                                                  \
  Field                                                                                                                \
  {                                                                                                                    \
    KEY, HELP, [] (const ScenarioConfig &c) { return std::to_string (c.MEMBER); },                                     \
        [] (ScenarioConfig &c, const std::string &v) { c.MEMBER = static_cast<decltype (c.MEMBER)> (ToUint (v)); }     \
  }
#define BOOL_FIELD(KEY, MEMBER, HELP)                                                                                  \
  Field                                                                                                                \
  {                                                                                                                    \
    KEY, HELP, [] (const ScenarioConfig &c) { return FmtBool (c.MEMBER); },                                            \
        [] (ScenarioConfig &c, const std::string &v) { c.MEMBER = ToBool (v); }                                        \
  }

const std::vector<Field> &
Registry ()
{
  static const std::vector<Field> fields = {
      UINT_FIELD ("seed", seed, "master random seed"),
      Field{"protocol", "DSR | DSDV | AODV | DEERP", [] (const ScenarioConfig &c) { return ToString (c.protocol); },
            [] (ScenarioConfig &c, const std::string &v) { c.protocol = ParseProtocol (v); }},
      DOUBLE_FIELD ("duration", duration, "simulated time, s"),
      UINT_FIELD ("nodes", nodes, "node count"),
      Field{"mobility.model", "rwp | rpgm | static",
            [] (const ScenarioConfig &c) { return ToString (c.mobility.model); },
            [] (ScenarioConfig &c, const std::string &v) { c.mobility.model = ParseMobility (v); }},
      DOUBLE_FIELD ("mobility.width", mobility.area.width, "area width, m"),
      DOUBLE_FIELD ("mobility.height", mobility.area.height, "area height, m"),
      DOUBLE_FIELD ("mobility.speed_min", mobility.speedMin, "minimum speed, m/s"),
      DOUBLE_FIELD ("mobility.speed_max", mobility.speedMax, "maximum speed, m/s"),
      DOUBLE_FIELD ("mobility.pause", mobility.pause, "pause at each waypoint, s"),
      UINT_FIELD ("mobility.rpgm_groups", mobility.rpgmGroups, "RPGM group count"),
      DOUBLE_FIELD ("mobility.rpgm_radius", mobility.rpgmRadius, "RPGM member deviation bound, m"),
      Field{"mobility.positions", "static model: x:y;x:y;... (empty: uniform random)",
            [] (const ScenarioConfig &c) { return FmtPositions (c.mobility.staticPositions); },
            [] (ScenarioConfig &c, const std::string &v) { c.mobility.staticPositions = ParsePositions (v); }},
      DOUBLE_FIELD ("radio.range", radio.range, "unit-disk range, m"),
      Field{"radio.bitrate", "link bitrate, bit/s (also the energy-model divisor)",
            [] (const ScenarioConfig &c) { return Fmt (c.radio.bitrate); },
            [] (ScenarioConfig &c, const std::string &v) { c.radio.bitrate = c.energy.bitrate = ToDouble (v); }},
      UINT_FIELD ("radio.queue_capacity", radio.queueCapacity, "interface queue length, frames"),
      UINT_FIELD ("radio.mac_overhead", radio.macOverheadBytes, "link header bytes added to every frame"),
      BOOL_FIELD ("radio.control_priority", radio.controlPriority, "control frames ahead of queued data"),
      DOUBLE_FIELD ("energy.tx_power", energy.txPower, "transmit power, mW"),
      DOUBLE_FIELD ("energy.rx_power", energy.rxPower, "receive and idle power, mW"),
      DOUBLE_FIELD ("energy.sleep_power", energy.sleepPower, "sleep power, mW"),
      DOUBLE_FIELD ("energy.initial", energy.initialEnergy, "initial energy per node, mJ"),
      Field{"energy.sleep_windows", "node:start-end;... radio sleep windows",
            [] (const ScenarioConfig &c) { return FmtSleep (c.sleepWindows); },
            [] (ScenarioConfig &c, const std::string &v) { c.sleepWindows = ParseSleep (v); }},
      UINT_FIELD ("traffic.flows", traffic.count, "generated flow count (0: max(1, nodes/4))"),
      DOUBLE_FIELD ("traffic.rate", traffic.rate, "CBR rate, packets/s"),
      UINT_FIELD ("traffic.payload", traffic.payloadBytes, "payload bytes per packet"),
      DOUBLE_FIELD ("traffic.start", traffic.startAt, "flow start, s"),
      DOUBLE_FIELD ("traffic.stop", traffic.stopAt, "flow stop, s (0: end of run)"),
      Field{"traffic.pairs", "explicit flows src>dst[@rate][:start-stop][/payload];...",
            [] (const ScenarioConfig &c) { return c.flowPairs; },
            [] (ScenarioConfig &c, const std::string &v) { c.flowPairs = v; }},
      Field{"deerp.rpsc_table", "RPSC table file (empty: built-in)",
            [] (const ScenarioConfig &c) { return c.rpscTable; },
            [] (ScenarioConfig &c, const std::string &v) { c.rpscTable = v; }},
      BOOL_FIELD ("deerp.nearest", rpscNearest, "fall back to the nearest RPSC row"),
      DOUBLE_FIELD ("deerp.mode_window", modeWindow, "mode classification window, s"),
      DOUBLE_FIELD ("dsdv.period", dsdv.period, "full update period, s"),
      DOUBLE_FIELD ("dsdv.stale_after", dsdv.staleAfter, "route expiry without refresh, s"),
      DOUBLE_FIELD ("dsr.discovery_timeout", dsr.discoveryTimeout, "route request timeout, s"),
      UINT_FIELD ("dsr.retries", dsr.discoveryRetries, "route request retries"),
      UINT_FIELD ("dsr.cache_routes", dsr.routesPerDestination, "cached routes per destination"),
      UINT_FIELD ("dsr.buffer", dsr.bufferPerDestination, "send buffer per destination, packets"),
      DOUBLE_FIELD ("dsr.jitter", dsr.forwardJitter, "request forwarding jitter bound, s"),
      DOUBLE_FIELD ("aodv.active_timeout", aodv.activeRouteTimeout, "active route lifetime, s"),
      DOUBLE_FIELD ("aodv.discovery_timeout", aodv.discoveryTimeout, "route request timeout, s"),
      UINT_FIELD ("aodv.retries", aodv.discoveryRetries, "route request retries"),
      UINT_FIELD ("aodv.buffer", aodv.bufferPerDestination, "send buffer per destination, packets"),
      DOUBLE_FIELD ("aodv.jitter", aodv.forwardJitter, "request forwarding jitter bound, s"),
      BOOL_FIELD ("aodv.destination_only", aodv.destinationOnly, "only the destination answers requests"),
      DOUBLE_FIELD ("trace.interval", traceInterval, "trajectory and energy sampling step, s"),
  };
  return fields;
}

#undef DOUBLE_FIELD
#undef UINT_FIELD
#undef BOOL_FIELD

const Field &
FindField (const std::string &key)
{
  for (const auto &f : Registry ())
    {
      if (key == f.key)
        {
          return f;
        }
    }
  throw InvalidConfig (key, "unknown key");
}

void
Require (bool ok, const char *field, const std::string &message)
{
  if (!ok)
    {
      throw InvalidConfig (field, message);
    }
}

} // namespace

InvalidConfig::InvalidConfig (const std::string &field, const std::string &message)
  : SimError (field + ": " + message),
    m_field (field)
{
}

const std::vector<ConfigField> &
ConfigFields ()
{
  static const std::vector<ConfigField> fields = [] {
    std::vector<ConfigField> out;
    for (const auto &f : Registry ())
      {
        out.push_back (ConfigField{f.key, f.help});
      }
    return out;
  }();
  return fields;
}

void
ScenarioConfig::Set (const std::string &key, const std::string &value)
{
  const Field &f = FindField (Trim (key));
  try
    {
      f.set (*this, Trim (value));
    }
  catch (const std::exception &e)
    {
      throw InvalidConfig (f.key, std::string ("bad value '") + Trim (value) + "': " + e.what ());
    }
}

std::string
ScenarioConfig::Get (const std::string &key) const
{
  return FindField (key).get (*this);
}

std::string
ScenarioConfig::Dump () const
{
  std::string out;
  for (const auto &f : Registry ())
    {
      out += f.key;
      out += " = ";
      out += f.get (*this);
      out += '\n';
    }
  return out;
}

ScenarioConfig
ScenarioConfig::Parse (const std::string &text, ScenarioConfig base)
{
  std::istringstream in (text);
  std::string line;
  int lineNo = 0;
  while (std::getline (in, line))
    {
      ++lineNo;
      line = Trim (line.substr (0, line.find ('#')));
      if (line.empty ())
        {
          continue;
        }
      auto eq = line.find ('=');
      if (eq == std::string::npos)
        {
          throw InvalidConfig ("line " + std::to_string (lineNo), "expected key = value");
        }
      base.Set (line.substr (0, eq), line.substr (eq + 1));
    }
  return base;
}

ScenarioConfig
ScenarioConfig::Load (const std::string &path, ScenarioConfig base)
{
  std::ifstream in (path);
  if (!in)
    {
      throw SimError ("cannot read config: " + path);
    }
  std::ostringstream text;
  text << in.rdbuf ();
  return Parse (text.str (), std::move (base));
}

ScenarioConfig
ScenarioConfig::Parse (const std::string &text)
{
  return Parse (text, ScenarioConfig{});
}

ScenarioConfig
ScenarioConfig::Load (const std::string &path)
{
  return Load (path, ScenarioConfig{});
}

SimTime
ScenarioConfig::TrafficStop () const
{
  return traffic.stopAt > 0.0 ? std::min (traffic.stopAt, duration) : duration;
}

std::vector<CbrFlow>
ScenarioConfig::ExplicitFlows () const
{
  std::vector<CbrFlow> out;
  for (const auto &item : Split (flowPairs, ';'))
    {
      CbrFlow f;
      f.id = static_cast<std::uint32_t> (out.size ());
      f.payloadBytes = traffic.payloadBytes;
      f.rate = traffic.rate;
      f.startAt = traffic.startAt;
      f.stopAt = TrafficStop ();
      std::string rest = item;
      auto slash = rest.find ('/');
      if (slash != std::string::npos)
        {
          f.payloadBytes = ToUint32 (Trim (rest.substr (slash + 1)));
          rest = rest.substr (0, slash);
        }
      auto colon = rest.find (':');
      if (colon != std::string::npos)
        {
          const std::string window = rest.substr (colon + 1);
          auto dash = window.find ('-');
          if (dash == std::string::npos)
            {
              throw InvalidConfig ("traffic.pairs", "expected start-stop in " + item);
            }
          f.startAt = ToDouble (Trim (window.substr (0, dash)));
          f.stopAt = ToDouble (Trim (window.substr (dash + 1)));
          rest = rest.substr (0, colon);
        }
      auto at = rest.find ('@');
      if (at != std::string::npos)
        {
          f.rate = ToDouble (Trim (rest.substr (at + 1)));
          rest = rest.substr (0, at);
        }
      auto gt = rest.find ('>');
      if (gt == std::string::npos)
        {
          throw InvalidConfig ("traffic.pairs", "expected src>dst in " + item);
        }
      f.src = ToUint32 (Trim (rest.substr (0, gt)));
      f.dst = ToUint32 (Trim (rest.substr (gt + 1)));
      out.push_back (f);
    }
  return out;
}

void
ScenarioConfig::Validate () const
{
  Require (duration > 0.0, "duration", "must be positive");
  Require (nodes >= 2, "nodes", "traffic needs at least 2 nodes");
  try
    {
      mobility.Validate ();
    }
  catch (const SimError &e)
    {
      throw InvalidConfig ("mobility", e.what ());
    }
  Require (mobility.model != MobilityModel::Static || mobility.staticPositions.empty ()
               || mobility.staticPositions.size () == nodes,
           "mobility.positions", "need exactly one position per node");
  Require (radio.range > 0.0, "radio.range", "must be positive");
  Require (radio.bitrate > 0.0, "radio.bitrate", "must be positive");
  Require (radio.queueCapacity >= 1, "radio.queue_capacity", "must be at least 1");
  Require (energy.txPower > 0.0, "energy.tx_power", "must be positive");
  Require (energy.rxPower > 0.0, "energy.rx_power", "must be positive");
  Require (energy.sleepPower >= 0.0, "energy.sleep_power", "must not be negative");
  Require (energy.initialEnergy > 0.0, "energy.initial", "must be positive");
  Require (energy.bitrate == radio.bitrate, "radio.bitrate", "energy and radio bitrates differ");
  for (const auto &w : sleepWindows)
    {
      Require (w.node < nodes, "energy.sleep_windows", "node out of range");
      Require (w.start >= 0.0 && w.start < w.end, "energy.sleep_windows", "window must have start < end");
    }
  Require (traffic.rate > 0.0, "traffic.rate", "must be positive");
  Require (traffic.payloadBytes > 0, "traffic.payload", "must be positive");
  Require (traffic.startAt >= 0.0, "traffic.start", "must not be negative");
  Require (traffic.stopAt >= 0.0, "traffic.stop", "must not be negative");
  if (flowPairs.empty ())
    {
      const std::uint64_t pairs = std::uint64_t (nodes) * (nodes - 1);
      Require ((traffic.count == 0 ? DefaultFlowCount (nodes) : traffic.count) <= pairs, "traffic.flows",
               "more flows than distinct node pairs");
    }
  else
    {
      for (const auto &f : ExplicitFlows ())
        {
          try
            {
              f.Validate (nodes);
            }
          catch (const SimError &e)
            {
              throw InvalidConfig ("traffic.pairs", e.what ());
            }
        }
    }
  Require (modeWindow > 0.0, "deerp.mode_window", "must be positive");
  Require (dsdv.period > 0.0, "dsdv.period", "must be positive");
  Require (dsdv.staleAfter > 0.0, "dsdv.stale_after", "must be positive");
  Require (dsr.discoveryTimeout > 0.0, "dsr.discovery_timeout", "must be positive");
  Require (dsr.routesPerDestination >= 1, "dsr.cache_routes", "must be at least 1");
  Require (dsr.bufferPerDestination >= 1, "dsr.buffer", "must be at least 1");
  Require (dsr.forwardJitter > 0.0, "dsr.jitter", "must be positive");
  Require (aodv.activeRouteTimeout > 0.0, "aodv.active_timeout", "must be positive");
  Require (aodv.discoveryTimeout > 0.0, "aodv.discovery_timeout", "must be positive");
  Require (aodv.bufferPerDestination >= 1, "aodv.buffer", "must be at least 1");
  Require (aodv.forwardJitter > 0.0, "aodv.jitter", "must be positive");
  Require (traceInterval > 0.0, "trace.interval", "must be positive");
}

UnknownPreset::UnknownPreset (const std::string &name)
  : SimError ("unknown preset: " + name + " (known: sim1, sim2)")
{
}

std::vector<std::uint32_t>
Experiment::NodeCounts () const
{
  std::vector<std::uint32_t> out;
  for (const auto &p : sweep)
    {
      out.push_back (p.nodes);
    }
  return out;
}

ScenarioConfig
Experiment::At (std::size_t i) const
{
  ScenarioConfig c = base;
  const SweepPoint &p = sweep.at (i);
  c.nodes = p.nodes;
  c.mobility.area.width = p.width;
  c.mobility.area.height = p.height;
  return c;
}

std::vector<std::string>
PresetNames ()
{
  return {"sim1", "sim2"};
}

Experiment
Preset (const std::string &name)
{
  Experiment e;
  e.name = name;
  ScenarioConfig &c = e.base;
  c.duration = 900.0;
  c.mobility.model = MobilityModel::Rpgm;
  c.mobility.speedMin = 0.5;
  c.mobility.speedMax = 5.0;
  c.mobility.pause = 0.0;
  c.traffic.payloadBytes = 512;
  c.traffic.rate = 8.0;
  c.radio.queueCapacity = 50;
  e.sweep = {{20, 500.0, 500.0}, {40, 1000.0, 1000.0}, {60, 1500.0, 1500.0}, {80, 2000.0, 2000.0}};
  if (name == "sim1")
    {
    }
  else if (name == "sim2")
    {
      c.duration = 300.0;
      c.mobility.model = MobilityModel::RandomWaypoint;
      e.sweep.clear ();
      for (std::uint32_t n : {5u, 10u, 15u, 20u, 25u})
        {
          e.sweep.push_back (SweepPoint{n, 600.0, 600.0});
        }
    }
  else
    {
      throw UnknownPreset (name);
    }
  c.nodes = e.sweep.front ().nodes;
  c.mobility.area.width = e.sweep.front ().width;
  c.mobility.area.height = e.sweep.front ().height;
  return e;
}

} // namespace manet
