#pragma once

#include <cstdint>

namespace avrpid {

/// SplitMix64 stream keyed by (seed, iteration, candidate index). Candidate
/// draws are independent of evaluation/scheduling order, which is what makes
/// optimizer runs bit-reproducible under any parallelism degree.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::size_t below(std::size_t n);  // [0, n)

 private:
  std::uint64_t state_;
};

}  // namespace avrpid
