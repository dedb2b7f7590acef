#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qsdc/codes.hpp"
#include "qsdc/random.hpp"

namespace qsdc {

using Amplitude = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

/// Largest supported Hilbert-space dimension (four qubits).
inline constexpr std::size_t kMaxDimension = 16;

/// Norm, trace and Hermiticity tolerance for stored states.
inline constexpr double kStateTolerance = 1e-10;

/// Most negative eigenvalue accepted in a density matrix; smaller magnitudes
/// are treated as round-off and clamped to zero.
inline constexpr double kEigenvalueFloor = -1e-9;

/// Raised for malformed states, unknown or duplicate labels, and
/// non-unitary or non-Hermitian operators.
class QuantumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MeasurementBasis { Z, X };

std::string_view to_string(MeasurementBasis basis);

/// Exact state of a small labeled multi-qubit system.
///
/// Labels fix the tensor-factor order: the first label is the most
/// significant bit of the computational-basis index. The representation is
/// either a pure state vector or a density matrix; values are immutable.
class QuantumState {
 public:
  /// Validated factories. Throw QuantumError on malformed input.
  static QuantumState pure(std::vector<std::string> labels, StateVector amplitudes);
  static QuantumState mixed(std::vector<std::string> labels, Operator rho);
  static QuantumState basis(std::vector<std::string> labels, std::size_t index);

  /// The zero-qubit state (scalar 1), left over when every qubit is measured away.
  static QuantumState scalar();

  bool is_pure() const { return std::holds_alternative<StateVector>(repr_); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t dimension() const { return std::size_t{1} << labels_.size(); }

  bool has_label(std::string_view label) const;
  /// Factor position of a label; throws QuantumError naming the label if absent.
  std::size_t position(std::string_view label) const;

  /// Amplitudes of a pure state; throws QuantumError for a mixed state.
  const StateVector& amplitudes() const;
  /// Density matrix (|psi><psi| for a pure state).
  Operator density_matrix() const;

  /// Trace of the density matrix (squared norm for pure states).
  double trace() const;

 private:
  struct Unchecked {};
  QuantumState(Unchecked, std::vector<std::string> labels, std::variant<StateVector, Operator> repr)
      : labels_(std::move(labels)), repr_(std::move(repr)) {}

  friend struct StateAccess;

  std::vector<std::string> labels_;
  std::variant<StateVector, Operator> repr_;
};

/// Outcome of a single-qubit projective measurement.
struct MeasurementOutcome {
  int value = 0;  ///< 0 or 1; for X, 0 is |+> and 1 is |->
  double probability = 0.0;
  QuantumState post_state = QuantumState::scalar();
};

/// Outcome of a two-qubit Bell measurement. The measured qubits are removed
/// from post_state.
struct BellMeasurementOutcome {
  BellIndex value = BellIndex::PsiMinus;
  double probability = 0.0;
  QuantumState post_state = QuantumState::scalar();
};

/// Amplitudes of a Bell state over (first, second) qubits, first qubit MSB.
StateVector bell_vector(BellIndex b);

/// Eigenvector of the given basis for outcome bit 0 or 1.
StateVector basis_vector(MeasurementBasis basis, int bit);

/// Tensor product; labels of a and b must be disjoint.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// Applies a 2x2 unitary to one target or a 4x4 unitary to two targets
/// (first target is the more significant factor of u).
QuantumState apply_unitary(const QuantumState& state, const Operator& u,
                           std::span<const std::string> targets);
QuantumState apply_unitary(const QuantumState& state, const Operator& u,
                           const std::string& target);

/// Born probabilities of outcomes 0 and 1.
std::array<double, 2> measurement_probabilities(const QuantumState& state,
                                                const std::string& target,
                                                MeasurementBasis basis);

/// Projects onto a fixed outcome. The returned post_state is renormalized;
/// with zero probability it is left unnormalized and must not be used.
MeasurementOutcome project(const QuantumState& state, const std::string& target,
                           MeasurementBasis basis, int value);

/// Samples a projective measurement. The measured qubit stays in post_state,
/// collapsed onto the observed eigenstate. Consumes exactly one draw.
MeasurementOutcome measure(const QuantumState& state, const std::string& target,
                           MeasurementBasis basis, RandomStream& rand);

/// Probabilities of the four Bell outcomes, in kAllBellStates order.
std::array<double, 4> bell_probabilities(const QuantumState& state, const std::string& first,
                                         const std::string& second);

/// Projects (first, second) onto one Bell state and removes both qubits.
BellMeasurementOutcome project_bell(const QuantumState& state, const std::string& first,
                                   const std::string& second, BellIndex value);

/// Samples a Bell measurement on two distinct qubits. Consumes exactly one draw.
BellMeasurementOutcome bell_measure(const QuantumState& state, const std::string& first,
                                    const std::string& second, RandomStream& rand);

/// Reduced density matrix over `keep`, in the order given.
QuantumState partial_trace(const QuantumState& state, std::span<const std::string> keep);

/// Reorders tensor factors; `order` must be a permutation of the labels.
QuantumState permute(const QuantumState& state, std::span<const std::string> order);

/// Renames labels positionally.
QuantumState relabel(const QuantumState& state, std::vector<std::string> labels);

/// |<a|b>| for pure states with identical label order.
double overlap(const QuantumState& a, const QuantumState& b);

/// True when a and b are the same pure state up to a global phase.
bool equal_up_to_phase(const QuantumState& a, const QuantumState& b, double tol = 1e-10);

struct EigenDecomposition {
  Eigen::VectorXd values;  ///< ascending
  Operator vectors;        ///< columns are eigenvectors
  int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Iterates
/// until the off-diagonal Frobenius norm drops below 1e-12 (relative to the
/// matrix norm when it exceeds one), at most 100 sweeps.
EigenDecomposition hermitian_eigen(const Operator& m);

bool is_hermitian(const Operator& m, double tol = kStateTolerance);
bool is_unitary(const Operator& m, double tol = kStateTolerance);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const Operator& rho);
double von_neumann_entropy(const QuantumState& state);

}  // namespace qsdc
