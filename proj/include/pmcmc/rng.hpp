#ifndef PMCMC_RNG_HPP
#define PMCMC_RNG_HPP

#include <array>
#include <cstdint>

namespace pmcmc {

// Counter-based pseudo-random streams (Philox4x32-10). A stream is fully
// determined by (seed, iteration, slot), so the proposal slots of one chain
// iteration can be evaluated by any number of workers in any order while
// producing bit-identical draws. Slot ids 0..p address proposal slots;
// the reserved ids below address the per-iteration auxiliary draws.
class RngStream {
 public:
  static constexpr std::uint32_t kSelectionSlot = 0xFFFFFFFFu;
  static constexpr std::uint32_t kAuxSlot = 0xFFFFFFFEu;

  RngStream(std::uint64_t seed, std::uint64_t iteration, std::uint32_t slot);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random mantissa bits.
  double uniform();

  // Standard normal via Box-Muller; second draw of each pair is cached.
  double gaussian();

  // Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> prefix_;  // slot, iteration lo, iteration hi
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives a decorrelated per-chain seed from a run seed (splitmix64 finalizer).
std::uint64_t derive_chain_seed(std::uint64_t seed, std::uint64_t chain_index);

}  // namespace pmcmc

#endif
