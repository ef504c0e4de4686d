#ifndef MANET_RNG_H
#define MANET_RNG_H

#include <cstdint>
#include <string>

namespace manet {

/**
 * Named pseudo-random stream.
 *
 * The generator is SplitMix64-seeded xoshiro256** and the real-valued
 * draws are built from raw bits, so a (seed, label, index) triple yields
 * the same sequence on every platform and standard library. Each
 * subsystem owns its own stream so draws in one never shift another.
 */
class RngStream
{
public:
  RngStream (std::uint64_t seed, const std::string &label, std::uint64_t index = 0);

  std::uint64_t NextU64 ();
  /// Uniform on [0, 1).
  double Uniform ();
  /// Uniform on [lo, hi).
  double Uniform (double lo, double hi);
  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t UniformInt (std::uint64_t n);

  std::uint64_t Seed () const { return m_seed; }
  const std::string &Label () const { return m_label; }
  std::uint64_t Draws () const { return m_draws; }
  /// Running FNV-1a digest over every value drawn so far.
  std::uint64_t Digest () const { return m_digest; }

private:
  std::uint64_t m_seed;
  std::string m_label;
  std::uint64_t m_state[4];
  std::uint64_t m_draws = 0;
  std::uint64_t m_digest;
};

/// 64-bit FNV-1a, used for stream derivation and trace digests.
std::uint64_t Fnv1a (const void *data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t Fnv1a (const std::string &s, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t HashDouble (double v, std::uint64_t h);

} // namespace manet

#endif
