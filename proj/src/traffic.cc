#include "manet/traffic.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace manet {

void
CbrFlow::Validate (std::uint32_t nodeCount) const
{
  if (src >= nodeCount || dst >= nodeCount)
    {
      throw SimError ("flow " + std::to_string (id) + ": endpoint out of range");
    }
  if (src == dst)
    {
      throw SimError ("flow " + std::to_string (id) + ": src == dst");
    }
  if (!(rate > 0.0))
    {
      throw SimError ("flow " + std::to_string (id) + ": rate must be positive");
    }
  if (payloadBytes == 0)
    {
      throw SimError ("flow " + std::to_string (id) + ": payload must be positive");
    }
  if (!(startAt >= 0.0) || !(startAt <= stopAt))
    {
      throw SimError ("flow " + std::to_string (id) + ": start must not exceed stop");
    }
}

std::string
CbrFlow::ToString () const
{
  char buf[160];
  std::snprintf (buf, sizeof buf, "%u>%u@%.17g:%.17g-%.17g/%u", src, dst, rate, startAt, stopAt, payloadBytes);
  return buf;
}

std::uint64_t
PacketCount (const CbrFlow &flow)
{
  if (!(flow.stopAt > flow.startAt))
    {
      return 0;
    }
  auto n = static_cast<std::uint64_t> (std::floor ((flow.stopAt - flow.startAt) * flow.rate));
  while (n > 0 && flow.startAt + (n - 1) / flow.rate >= flow.stopAt)
    {
      --n;
    }
  while (flow.startAt + n / flow.rate < flow.stopAt)
    {
      ++n;
    }
  return n;
}

std::vector<SimTime>
EmitSchedule (const CbrFlow &flow)
{
  const std::uint64_t n = PacketCount (flow);
  std::vector<SimTime> out;
  out.reserve (n);
  for (std::uint64_t k = 0; k < n; ++k)
    {
      out.push_back (flow.startAt + k / flow.rate);
    }
  return out;
}

InsufficientNodes::InsufficientNodes (std::uint32_t nodes)
  : SimError ("traffic needs at least 2 nodes, got " + std::to_string (nodes))
{
}

std::uint32_t
DefaultFlowCount (std::uint32_t nodeCount)
{
  return std::max<std::uint32_t> (1, nodeCount / 4);
}

std::vector<CbrFlow>
BuildFlows (std::uint32_t nodeCount, const FlowTemplate &tmpl, RngStream &rng)
{
  if (nodeCount < 2)
    {
      throw InsufficientNodes (nodeCount);
    }
  const std::uint32_t count = tmpl.count == 0 ? DefaultFlowCount (nodeCount) : tmpl.count;
  const std::uint64_t pairs = std::uint64_t (nodeCount) * (nodeCount - 1);
  if (count > pairs)
    {
      throw SimError ("traffic: " + std::to_string (count) + " flows requested but only " + std::to_string (pairs)
                      + " distinct pairs exist");
    }
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<CbrFlow> flows;
  while (flows.size () < count)
    {
      const auto src = static_cast<NodeId> (rng.UniformInt (nodeCount));
      auto dst = static_cast<NodeId> (rng.UniformInt (nodeCount - 1));
      if (dst >= src)
        {
          ++dst;
        }
      if (!used.insert ({src, dst}).second)
        {
          continue;
        }
      CbrFlow f;
      f.id = static_cast<std::uint32_t> (flows.size ());
      f.src = src;
      f.dst = dst;
      f.payloadBytes = tmpl.payloadBytes;
      f.rate = tmpl.rate;
      f.startAt = tmpl.startAt;
      f.stopAt = tmpl.stopAt;
      flows.push_back (f);
    }
  return flows;
}

} // namespace manet
