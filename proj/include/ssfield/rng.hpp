#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace ssf {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// Stream (seed, stream, index) -> value. Block b of stream s under seed k is
// philox(ctr = {b_lo, b_hi, s_lo, s_hi}, key = {k_lo, k_hi}); each block gives
// two 53-bit uniforms in (0,1) and, by Box-Muller, two standard normals for
// indices 2b and 2b + 1.
double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
double normal_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// out[i] = normal_at(seed, stream, first + i); first must be even.
void fill_normals(std::uint64_t seed, std::uint64_t stream, std::uint64_t first, double* out,
                  std::size_t n);

}  // namespace ssf
