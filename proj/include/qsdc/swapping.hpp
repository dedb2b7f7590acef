#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qsdc/bidirectional.hpp"

namespace qsdc {

struct SwapSessionConfig {
  std::size_t n_groups = 8;
  double purification_yield = 1.0;
  double sample_fraction = 0.2;
  double error_threshold = 0.0;
  AttackModel attack = NoAttack{};  ///< acts only while the channel is set up
  AttackTarget attack_target = AttackTarget::Both;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// floor(yield * n_groups).
  std::size_t usable_groups() const;
  /// Pairs reserved for the groups (two per group).
  std::size_t group_pairs() const { return 2 * n_groups; }
  /// Extra pairs spent on the sample check: ceil(sample_fraction * group_pairs).
  std::size_t check_pairs() const { return sample_count(group_pairs(), sample_fraction); }
};

/// Shared pairs after setup, sampling and purification.
struct SwapChannel {
  ChannelReport report;            ///< distribution and sample-check record
  std::size_t usable_groups = 0;   ///< floor(yield * n_groups) when the check passed
  std::vector<QuantumState> pairs; ///< 2 * usable_groups ideal |psi-> pairs over (B, C)
};

/// Distributes group_pairs() + check_pairs() pairs through the attacked
/// channel, runs the sample check, then hands the unsampled pairs to an
/// ideal purification oracle that keeps floor(yield * n_groups) groups and
/// resets them to |psi->. When the check fails, `pairs` is empty and
/// report.passed is false.
SwapChannel setup_channel(const SwapSessionConfig& config, RandomStream& rand);

struct SwapGroupRecord {
  PauliOp encoding = PauliOp::U0;
  BellIndex bob_outcome = BellIndex::PsiMinus;
  BellIndex carol_outcome = BellIndex::PsiMinus;
  PauliOp decoded = PauliOp::U0;
};

struct SwapCapacity {
  std::size_t message_bits = 0;
  std::size_t pairs_consumed = 0;
  double bits_per_pair = 0.0;
};

struct SwapTranscript {
  SwapSessionConfig config;
  SessionStatus status = SessionStatus::Completed;
  ChannelReport setup;  ///< `remaining` is cleared before returning
  std::size_t usable_groups = 0;
  std::vector<SwapGroupRecord> groups;
  Message input;
  Message decoded;
  SwapCapacity capacity;
};

/// Runs the entanglement-swapping session. The message must carry exactly
/// two bits per usable group, otherwise CapacityMismatch is thrown.
SwapTranscript run_swap_session(const SwapSessionConfig& config, const Message& message);

/// One group: the two (B, C) pair states become B1C1 and B2C2, `encoding`
/// is applied on B1, then Bell measurements on (B1,B2) and (C1,C2) are
/// decoded with decode_swap.
SwapGroupRecord run_swap_group(const QuantumState& first, const QuantumState& second,
                               PauliOp encoding, RandomStream& rand);

}  // namespace qsdc
