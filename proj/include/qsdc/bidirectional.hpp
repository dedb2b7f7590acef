#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/codes.hpp"
#include "qsdc/message.hpp"
#include "qsdc/quantum.hpp"
#include "qsdc/random.hpp"

namespace qsdc {

/// Base class for protocol-level failures that are not eavesdropping detections.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The message does not fit the session (odd length or more bits than message pairs).
class CapacityMismatch : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

/// Which photon sequences Eve touches on their way from the server to the users.
enum class AttackTarget { SB, SC, Both };

std::string_view to_string(AttackTarget target);
AttackTarget parse_attack_target(std::string_view text);

/// Labels of the two photons inside every pair state.
inline constexpr std::string_view kBobPhoton = "B";
inline constexpr std::string_view kCarolPhoton = "C";

/// Number of check samples drawn from n pairs: ceil(fraction * n).
std::size_t sample_count(std::size_t n, double fraction);

struct SessionConfig {
  std::size_t n_pairs = 256;
  double sample_fraction = 0.2;
  std::size_t k_decoys = 16;
  double error_threshold = 0.0;
  double loss_prob = 0.0;
  AttackModel attack = NoAttack{};
  AttackTarget attack_target = AttackTarget::Both;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  std::size_t n_samples() const { return sample_count(n_pairs, sample_fraction); }
  /// Message pairs available without loss.
  std::size_t capacity_pairs() const;
  std::size_t capacity_bits() const { return 2 * capacity_pairs(); }
};

enum class SessionStatus { Completed, AbortAtSampleCheck, AbortAtVerification };

std::string_view to_string(SessionStatus status);

/// One EPR pair held by the users, labeled B and C (plus any attached ancillas).
struct PairState {
  std::size_t index = 0;
  QuantumState state;
};

struct SampleRecord {
  std::size_t index = 0;
  MeasurementBasis bob_basis = MeasurementBasis::Z;
  int bob_outcome = 0;
  MeasurementBasis carol_basis = MeasurementBasis::Z;
  int carol_outcome = 0;
};

struct SampleCheckReport {
  std::vector<SampleRecord> records;
  std::size_t compared = 0;
  std::size_t errors = 0;
  double rate = 0.0;
  bool insufficient = false;  ///< no same-basis sample; rate reported as 0
  std::size_t compared_z = 0;
  std::size_t errors_z = 0;
  std::size_t compared_x = 0;
  std::size_t errors_x = 0;
};

struct TrojanRecord {
  std::size_t index = 0;
  BeamSplitterRecord bob;
  BeamSplitterRecord carol;
};

struct TrojanCheckReport {
  std::vector<TrojanRecord> records;
  std::size_t tested = 0;
  std::size_t detections = 0;  ///< pairs where either party saw both detectors click
  double rate = 0.0;
};

struct InterceptEvent {
  std::size_t index = 0;
  EveRecord record;
};

struct PositionedOp {
  std::size_t index = 0;
  PauliOp op = PauliOp::U0;
};

struct VerificationReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  double rate = 0.0;
};

struct EfficiencyReport {
  std::size_t q_u = 0;  ///< pairs carrying message bits
  std::size_t q_t = 0;  ///< pairs transmitted
  double eta_q = 0.0;
};

/// Knobs shared by the channel-establishment phase of both protocols.
struct ChannelParams {
  std::size_t n_pairs = 0;
  double sample_fraction = 0.2;
  double error_threshold = 0.0;
  double loss_prob = 0.0;
  AttackModel attack = NoAttack{};
  AttackTarget attack_target = AttackTarget::Both;
  /// Fixed number of check samples; when unset, sample_fraction of the
  /// arrived pairs is used.
  std::optional<std::size_t> n_samples;
};

/// Result of preparing, distributing and checking the pairs.
struct ChannelReport {
  std::size_t prepared_pairs = 0;
  std::vector<std::size_t> lost;
  std::vector<InterceptEvent> interceptions;
  TrojanCheckReport trojan_check;
  SampleCheckReport sample_check;
  bool passed = false;
  std::vector<PairState> remaining;  ///< arrived, unsampled pairs in index order
};

/// Prepares n copies of |psi->, sends the photons through the (attacked,
/// lossy) channel, and runs the two-part sample check: half the samples to
/// the beam-splitter test, the rest to the random-basis test.
ChannelReport establish_channel(const ChannelParams& params, RandomStream& rand);

/// Each party picks Z or X per sample; same-basis outcomes must anticorrelate.
SampleCheckReport sample_check(std::span<const PairState> pairs, RandomStream& rand);

/// Mismatch when bits(published) != bits(decoy) XOR bits(mask). The three
/// lists are aligned by position.
VerificationReport verify_decoys(std::span<const PauliOp> published,
                                 std::span<const PauliOp> decoy_ops,
                                 std::span<const PauliOp> mask_ops);

/// Full record of one bidirectional session.
struct Transcript {
  SessionConfig config;
  SessionStatus status = SessionStatus::Completed;
  std::size_t prepared_pairs = 0;
  std::vector<std::size_t> lost;
  std::vector<InterceptEvent> interceptions;
  TrojanCheckReport trojan_check;
  SampleCheckReport sample_check;
  std::vector<PositionedOp> carol_masks;  ///< secret: known to Carol only
  std::vector<PositionedOp> bob_decoys;
  std::vector<PositionedOp> bob_encodings;
  std::vector<PositionedOp> published;
  VerificationReport verification;
  Message input;
  std::size_t padding_bits = 0;
  std::size_t truncated_bits = 0;
  Message decoded;
  EfficiencyReport efficiency;
};

/// Runs the seven-step session. Eavesdropping detections end the session
/// with an abort status; malformed configs throw std::invalid_argument and
/// oversized or odd messages throw CapacityMismatch. Messages shorter than
/// the capacity are padded with U0 pairs, which are stripped on decoding.
Transcript run_session(const SessionConfig& config, const Message& message);

}  // namespace qsdc
