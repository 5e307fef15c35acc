#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ssv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error taxonomy shared by all modules. Argument errors are caller bugs,
// precondition errors are mathematically meaningful refusals (the hypothesis
// of a statement does not hold for the given input).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DetectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless counter-based hash: a fully avalanched word per (seed, i, j).
/// Entry streams keyed this way can be generated in any order (or in
/// parallel) and still agree bit for bit.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t i,
                                  std::uint64_t j) {
  std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dULL);
  h = mix64(h ^ (i * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL));
  h = mix64(h ^ (j * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
  return h;
}

/// Map a 64-bit word to the open interval (0,1); never returns 0 or 1,
/// so inverse-cdf transforms stay finite.
inline double to_unit_open(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t i,
                              std::uint64_t j) {
  return to_unit_open(counter_hash(seed, i, j));
}

/// Per-trial seed derivation used by the experiment harness:
/// seed_t = mix64(master ^ mix64(t + C)). Stateless, so trials can be
/// partitioned across workers without changing results.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t index) {
  return mix64(master_seed ^ mix64(index + 0x0b5e715b2d9e4e11ULL));
}

}  // namespace ssv
