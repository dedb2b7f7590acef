#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsdc/codes.hpp"
#include "qsdc/quantum.hpp"
#include "qsdc/random.hpp"

namespace qsdc {

enum class BasisPolicy { RandomZX, FixedZ, FixedX };

struct NoAttack {};

/// Eve measures each photon in transit and forwards the collapsed eigenstate.
struct InterceptResend {
  BasisPolicy basis_policy = BasisPolicy::RandomZX;
};

/// Eve entangles an ancilla with each photon in transit. `d` is the
/// probability that the photon is flipped (fidelity F = 1 - d).
struct AncillaEntangling {
  double d = 0.0;
};

/// The server announces a wrong Bell result with probability `lie_fraction`.
struct DishonestServer {
  double lie_fraction = 0.0;
};

/// Multi-photon probe signals riding along each photon in transit.
struct TrojanHorse {
  int extra_photons = 1;
};

using AttackModel =
    std::variant<NoAttack, InterceptResend, AncillaEntangling, DishonestServer, TrojanHorse>;

/// Names accepted by parse_attack_kind, in declaration order.
inline constexpr std::string_view kAttackNames[] = {"none", "intercept-resend", "ancilla",
                                                    "dishonest-server", "trojan-horse"};

std::string_view attack_name(const AttackModel& attack);
/// Attack with default parameters. Unknown names throw std::invalid_argument
/// listing the accepted ones.
AttackModel parse_attack_kind(std::string_view name);
std::string_view to_string(BasisPolicy policy);
BasisPolicy parse_basis_policy(std::string_view text);

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const AttackModel& attack);

/// Ancilla states used by the entangling attack. Only the images of
/// ancilla |0> are pinned by these; the rest of the unitary is completed
/// by Gram-Schmidt.
struct AncillaConvention {
  StateVector e00, e01, e10, e11;

  /// e00 = e11 = |0>, e01 = e10 = |1>.
  static AncillaConvention standard();

  /// Largest violation of the unitarity relations at detection probability d:
  /// unit norm of both images of ancilla |0>, and <e00|e10> + <e01|e11> = 0.
  double residual(double d) const;
};

/// 4x4 unitary on (photon, ancilla) with
///   E|0>|0> = sqrt(F)|0>|e00> + sqrt(D)|1>|e01>,
///   E|1>|0> = sqrt(D)|0>|e10> + sqrt(F)|1>|e11>.
Operator attack_unitary(double d, const AncillaConvention& convention = AncillaConvention::standard());

/// Label of the ancilla Eve attaches to `target`.
std::string ancilla_label(std::string_view target);

/// Appends an ancilla in |0> and applies attack_unitary(d) on (target, ancilla).
QuantumState apply_ancilla_attack(const QuantumState& state, const std::string& target, double d);

struct EveRecord {
  std::string target;
  MeasurementBasis basis = MeasurementBasis::Z;
  int outcome = 0;
};

struct InterceptResult {
  QuantumState state;
  EveRecord record;
};

InterceptResult apply_intercept_resend(const QuantumState& state, const std::string& target,
                                       BasisPolicy policy, RandomStream& rand);

/// With probability lie_fraction, a uniformly random Pauli different from `truth`.
PauliOp server_lie(PauliOp truth, double lie_fraction, RandomStream& rand);

struct BeamSplitterRecord {
  bool detector_a = false;
  bool detector_b = false;

  bool both_clicked() const { return detector_a && detector_b; }
};

/// Routes 1 + extra_photons photons through a 50/50 splitter onto two
/// threshold detectors. extra_photons = 0 models an honest single photon.
BeamSplitterRecord trojan_beam_splitter_check(int extra_photons, RandomStream& rand);

/// 1 - 2^(1-n) for n photons.
double both_click_probability(int photons);

}  // namespace qsdc
