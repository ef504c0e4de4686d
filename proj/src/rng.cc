#include "manet/rng.h"

#include <cstring>

namespace manet {

namespace {

std::uint64_t
SplitMix64 (std::uint64_t &x)
{
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t
Rotl (std::uint64_t x, int k)
{
  return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t
Fnv1a (const void *data, std::size_t len, std::uint64_t h)
{
  const auto *p = static_cast<const unsigned char *> (data);
  for (std::size_t i = 0; i < len; ++i)
    {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  return h;
}

std::uint64_t
Fnv1a (const std::string &s, std::uint64_t h)
{
  return Fnv1a (s.data (), s.size (), h);
}

std::uint64_t
HashDouble (double v, std::uint64_t h)
{
  std::uint64_t bits;
  std::memcpy (&bits, &v, sizeof bits);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i)
    {
      bytes[i] = static_cast<unsigned char> (bits >> (8 * i));
    }
  return Fnv1a (bytes, 8, h);
}

RngStream::RngStream (std::uint64_t seed, const std::string &label, std::uint64_t index)
  : m_seed (seed),
    m_label (label),
    m_digest (0xcbf29ce484222325ULL)
{
  std::uint64_t x = seed ^ Fnv1a (label) ^ (index * 0xd1342543de82ef95ULL);
  for (auto &word : m_state)
    {
      word = SplitMix64 (x);
    }
}

std::uint64_t
RngStream::NextU64 ()
{
  const std::uint64_t result = Rotl (m_state[1] * 5, 7) * 9;
  const std::uint64_t t = m_state[1] << 17;
  m_state[2] ^= m_state[0];
  m_state[3] ^= m_state[1];
  m_state[1] ^= m_state[2];
  m_state[0] ^= m_state[3];
  m_state[2] ^= t;
  m_state[3] = Rotl (m_state[3], 45);
  ++m_draws;
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i)
    {
      bytes[i] = static_cast<unsigned char> (result >> (8 * i));
    }
  m_digest = Fnv1a (bytes, 8, m_digest);
  return result;
}

double
RngStream::Uniform ()
{
  return static_cast<double> (NextU64 () >> 11) * 0x1.0p-53;
}

double
RngStream::Uniform (double lo, double hi)
{
  return lo + (hi - lo) * Uniform ();
}

std::uint64_t
RngStream::UniformInt (std::uint64_t n)
{
  // rejection sampling keeps the result exactly uniform
  const std::uint64_t limit = std::uint64_t (-1) - (std::uint64_t (-1) % n);
  std::uint64_t v;
  do
    {
      v = NextU64 ();
    }
  while (v >= limit);
  return v % n;
}

} // namespace manet
