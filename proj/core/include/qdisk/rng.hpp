#ifndef QDISK_RNG_HPP
#define QDISK_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace qdisk {

// Counter-based generator keyed by (seed, stream name, case index).  Streams
// never share state, so suites can draw cases in any order (or in parallel)
// and still reproduce byte-identical reports.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::string_view stream, std::uint64_t case_index)
      : key_(mix(mix(seed ^ fnv1a(stream)) ^ (0x9e3779b97f4a7c15ull * (case_index + 1)))) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  std::complex<double> complex_in_disk(double radius = 1.0) {
    // rejection-free: sqrt-radial for uniform area
    double r = radius * std::sqrt(uniform());
    double phi = 2.0 * 3.14159265358979323846 * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return h;
  }

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    std::uint64_t z = key_ + 0x9e3779b97f4a7c15ull * (++counter_);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qdisk

#endif
