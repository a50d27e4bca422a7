#include "ssfield/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "ssfield/special_fn.hpp"

namespace ssf {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

inline PhiloxCounter block(std::uint64_t seed, std::uint64_t stream, std::uint64_t b) {
  return philox4x32_10({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                        static_cast<std::uint32_t>(stream),
                        static_cast<std::uint32_t>(stream >> 32)},
                       {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
}

inline void box_muller(const PhiloxCounter& r, double& z0, double& z1) {
  double u1 = to_unit(r[0], r[1]);
  double u2 = to_unit(r[2], r[3]);
  double rad = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * kPi * u2;
  z0 = rad * std::cos(th);
  z1 = rad * std::sin(th);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  PhiloxCounter r = block(seed, stream, index / 2);
  return index % 2 == 0 ? to_unit(r[0], r[1]) : to_unit(r[2], r[3]);
}

double normal_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  double z0, z1;
  box_muller(block(seed, stream, index / 2), z0, z1);
  return index % 2 == 0 ? z0 : z1;
}

void fill_normals(std::uint64_t seed, std::uint64_t stream, std::uint64_t first, double* out,
                  std::size_t n) {
  if (first % 2 != 0) throw std::invalid_argument("fill_normals: first index must be even");
  std::size_t i = 0;
  std::uint64_t b = first / 2;
  for (; i + 1 < n; i += 2, ++b) box_muller(block(seed, stream, b), out[i], out[i + 1]);
  if (i < n) {
    double z1;
    box_muller(block(seed, stream, b), out[i], z1);
  }
}

}  // namespace ssf
