#include "qsdc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace qsdc {

struct StateAccess {
  static QuantumState make_pure(std::vector<std::string> labels, StateVector v) {
    return QuantumState(QuantumState::Unchecked{}, std::move(labels), std::move(v));
  }
  static QuantumState make_mixed(std::vector<std::string> labels, Operator rho) {
    return QuantumState(QuantumState::Unchecked{}, std::move(labels), std::move(rho));
  }
};

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bit of basis index `i` belonging to factor `pos` in an n-qubit register.
inline std::size_t bit_at(std::size_t i, std::size_t pos, std::size_t n) {
  return (i >> (n - 1 - pos)) & 1U;
}

// Packs the bits of `i` at `positions` into a small index, first position MSB.
std::size_t gather(std::size_t i, std::span<const std::size_t> positions, std::size_t n) {
  std::size_t out = 0;
  for (std::size_t p : positions) out = (out << 1) | bit_at(i, p, n);
  return out;
}

void check_labels(const std::vector<std::string>& labels) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw QuantumError("subsystem labels must be non-empty");
    if (!seen.insert(l).second) throw QuantumError("duplicate subsystem label '" + l + "'");
  }
  if ((std::size_t{1} << labels.size()) > kMaxDimension) {
    throw QuantumError("state over " + std::to_string(labels.size()) +
                       " qubits exceeds the dimension cap of " + std::to_string(kMaxDimension));
  }
}

template <typename M>
void check_finite(const M& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Amplitude z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw QuantumError("state contains a non-finite amplitude");
    }
  }
}

std::vector<std::size_t> positions_of(const QuantumState& state,
                                      std::span<const std::string> targets) {
  std::vector<std::size_t> out;
  out.reserve(targets.size());
  for (const auto& t : targets) {
    const std::size_t p = state.position(t);
    if (std::find(out.begin(), out.end(), p) != out.end()) {
      throw QuantumError("target label '" + t + "' given twice");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> positions) {
  std::vector<std::size_t> rest;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) rest.push_back(p);
  }
  return rest;
}

// Lifts a 2^k x 2^k operator on `targets` to the full register.
Operator embed(const Operator& u, std::span<const std::size_t> targets, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const auto rest = complement(n, targets);
  Operator full = Operator::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (gather(i, rest, n) != gather(j, rest, n)) continue;
      full(i, j) = u(gather(i, targets, n), gather(j, targets, n));
    }
  }
  return full;
}

// Maps the full register onto the complement of `targets` by contracting
// with <v| on the targets.
Operator contraction(const StateVector& v, std::span<const std::size_t> targets, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const auto rest = complement(n, targets);
  const std::size_t rest_dim = std::size_t{1} << rest.size();
  Operator k = Operator::Zero(rest_dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    k(gather(i, rest, n), i) = std::conj(v(gather(i, targets, n)));
  }
  return k;
}

std::vector<std::string> labels_at(const QuantumState& state, std::span<const std::size_t> pos) {
  std::vector<std::string> out;
  out.reserve(pos.size());
  for (std::size_t p : pos) out.push_back(state.labels()[p]);
  return out;
}

// Applies a linear map L to the state: L psi, or L rho L^dagger.
QuantumState transform(const QuantumState& state, const Operator& l,
                       std::vector<std::string> labels) {
  if (state.is_pure()) return StateAccess::make_pure(std::move(labels), l * state.amplitudes());
  const Operator rho = state.density_matrix();
  return StateAccess::make_mixed(std::move(labels), l * rho * l.adjoint());
}

double weight(const QuantumState& state, const Operator& l) {
  if (state.is_pure()) return (l * state.amplitudes()).squaredNorm();
  const Operator rho = state.density_matrix();
  return (l * rho * l.adjoint()).trace().real();
}

QuantumState renormalized(QuantumState s, double p) {
  if (p <= 0.0) return s;
  if (s.is_pure()) {
    return StateAccess::make_pure(s.labels(), s.amplitudes() / std::sqrt(p));
  }
  Operator rho = s.density_matrix() / p;
  rho = (rho + rho.adjoint()) / 2.0;
  return StateAccess::make_mixed(s.labels(), std::move(rho));
}

std::size_t pick(std::span<const double> probs, double u) {
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last_nonzero = k;
    cum += probs[k];
    if (u < cum && probs[k] > 0.0) return k;
  }
  return last_nonzero;
}

}  // namespace

std::string_view to_string(MeasurementBasis basis) {
  return basis == MeasurementBasis::Z ? "Z" : "X";
}

// --- QuantumState ---------------------------------------------------------

QuantumState QuantumState::pure(std::vector<std::string> labels, StateVector amplitudes) {
  check_labels(labels);
  const std::size_t dim = std::size_t{1} << labels.size();
  if (static_cast<std::size_t>(amplitudes.size()) != dim) {
    throw QuantumError("state vector has " + std::to_string(amplitudes.size()) +
                       " amplitudes, expected " + std::to_string(dim));
  }
  check_finite(amplitudes);
  if (std::abs(amplitudes.norm() - 1.0) > kStateTolerance) {
    throw QuantumError("state vector is not normalized");
  }
  return QuantumState(Unchecked{}, std::move(labels), std::move(amplitudes));
}

QuantumState QuantumState::mixed(std::vector<std::string> labels, Operator rho) {
  check_labels(labels);
  const std::size_t dim = std::size_t{1} << labels.size();
  if (static_cast<std::size_t>(rho.rows()) != dim || static_cast<std::size_t>(rho.cols()) != dim) {
    throw QuantumError("density matrix must be " + std::to_string(dim) + "x" +
                       std::to_string(dim));
  }
  check_finite(rho);
  if (!is_hermitian(rho)) throw QuantumError("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > kStateTolerance) {
    throw QuantumError("density matrix does not have unit trace");
  }
  if (hermitian_eigen(rho).values.minCoeff() < kEigenvalueFloor) {
    throw QuantumError("density matrix has a negative eigenvalue");
  }
  return QuantumState(Unchecked{}, std::move(labels), std::move(rho));
}

QuantumState QuantumState::basis(std::vector<std::string> labels, std::size_t index) {
  check_labels(labels);
  const std::size_t dim = std::size_t{1} << labels.size();
  if (index >= dim) throw QuantumError("basis index out of range");
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return QuantumState(Unchecked{}, std::move(labels), std::move(v));
}

QuantumState QuantumState::scalar() {
  StateVector v(1);
  v(0) = 1.0;
  return QuantumState(Unchecked{}, {}, std::move(v));
}

bool QuantumState::has_label(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t QuantumState::position(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw QuantumError("unknown subsystem label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

const StateVector& QuantumState::amplitudes() const {
  if (const auto* v = std::get_if<StateVector>(&repr_)) return *v;
  throw QuantumError("amplitudes requested from a mixed state");
}

Operator QuantumState::density_matrix() const {
  if (const auto* v = std::get_if<StateVector>(&repr_)) return (*v) * v->adjoint();
  return std::get<Operator>(repr_);
}

double QuantumState::trace() const {
  if (const auto* v = std::get_if<StateVector>(&repr_)) return v->squaredNorm();
  return std::get<Operator>(repr_).trace().real();
}

// --- basis data -----------------------------------------------------------

StateVector bell_vector(BellIndex b) {
  StateVector v = StateVector::Zero(4);
  switch (b) {
    case BellIndex::PsiMinus: v(0b01) = kInvSqrt2; v(0b10) = -kInvSqrt2; break;
    case BellIndex::PsiPlus: v(0b01) = kInvSqrt2; v(0b10) = kInvSqrt2; break;
    case BellIndex::PhiMinus: v(0b00) = kInvSqrt2; v(0b11) = -kInvSqrt2; break;
    case BellIndex::PhiPlus: v(0b00) = kInvSqrt2; v(0b11) = kInvSqrt2; break;
  }
  return v;
}

StateVector basis_vector(MeasurementBasis basis, int bit) {
  if (bit != 0 && bit != 1) throw QuantumError("measurement outcome must be 0 or 1");
  StateVector v(2);
  if (basis == MeasurementBasis::Z) {
    v << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0);
  } else {
    v << kInvSqrt2, (bit == 0 ? kInvSqrt2 : -kInvSqrt2);
  }
  return v;
}

// --- operations -----------------------------------------------------------

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);

  const auto da = static_cast<Eigen::Index>(a.dimension());
  const auto db = static_cast<Eigen::Index>(b.dimension());
  if (a.is_pure() && b.is_pure()) {
    StateVector v(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < db; ++j) v(i * db + j) = a.amplitudes()(i) * b.amplitudes()(j);
    }
    return StateAccess::make_pure(std::move(labels), std::move(v));
  }
  const Operator ra = a.density_matrix();
  const Operator rb = b.density_matrix();
  Operator rho(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) rho.block(i * db, j * db, db, db) = ra(i, j) * rb;
  }
  return StateAccess::make_mixed(std::move(labels), std::move(rho));
}

QuantumState apply_unitary(const QuantumState& state, const Operator& u,
                           std::span<const std::string> targets) {
  if (targets.empty() || targets.size() > 2) {
    throw QuantumError("apply_unitary acts on one or two target qubits");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (u.rows() != dim || u.cols() != dim) {
    throw QuantumError("operator dimension does not match the number of targets");
  }
  check_finite(u);
  if (!is_unitary(u)) throw QuantumError("operator is not unitary");
  const auto pos = positions_of(state, targets);
  return transform(state, embed(u, pos, state.num_qubits()), state.labels());
}

QuantumState apply_unitary(const QuantumState& state, const Operator& u,
                           const std::string& target) {
  return apply_unitary(state, u, std::span<const std::string>(&target, 1));
}

std::array<double, 2> measurement_probabilities(const QuantumState& state,
                                                const std::string& target,
                                                MeasurementBasis basis) {
  const std::size_t pos = state.position(target);
  std::array<double, 2> p{};
  for (int bit = 0; bit < 2; ++bit) {
    const StateVector v = basis_vector(basis, bit);
    p[bit] = weight(state, embed(v * v.adjoint(), std::span(&pos, 1), state.num_qubits()));
  }
  return p;
}

MeasurementOutcome project(const QuantumState& state, const std::string& target,
                           MeasurementBasis basis, int value) {
  const std::size_t pos = state.position(target);
  const StateVector v = basis_vector(basis, value);
  const Operator proj = embed(v * v.adjoint(), std::span(&pos, 1), state.num_qubits());
  const double p = weight(state, proj);
  return {value, p, renormalized(transform(state, proj, state.labels()), p)};
}

MeasurementOutcome measure(const QuantumState& state, const std::string& target,
                           MeasurementBasis basis, RandomStream& rand) {
  const auto probs = measurement_probabilities(state, target, basis);
  const int value = static_cast<int>(pick(probs, rand.uniform()));
  return project(state, target, basis, value);
}

std::array<double, 4> bell_probabilities(const QuantumState& state, const std::string& first,
                                         const std::string& second) {
  if (first == second) throw QuantumError("Bell measurement needs two distinct qubits");
  const std::array<std::string, 2> targets{first, second};
  const auto pos = positions_of(state, targets);
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    p[k] = weight(state, contraction(bell_vector(kAllBellStates[k]), pos, state.num_qubits()));
  }
  return p;
}

BellMeasurementOutcome project_bell(const QuantumState& state, const std::string& first,
                                   const std::string& second, BellIndex value) {
  if (first == second) throw QuantumError("Bell measurement needs two distinct qubits");
  const std::array<std::string, 2> targets{first, second};
  const auto pos = positions_of(state, targets);
  const std::size_t n = state.num_qubits();
  const Operator k = contraction(bell_vector(value), pos, n);
  const double p = weight(state, k);
  auto rest = labels_at(state, complement(n, pos));
  return {value, p, renormalized(transform(state, k, std::move(rest)), p)};
}

BellMeasurementOutcome bell_measure(const QuantumState& state, const std::string& first,
                                    const std::string& second, RandomStream& rand) {
  const auto probs = bell_probabilities(state, first, second);
  const std::size_t k = pick(probs, rand.uniform());
  return project_bell(state, first, second, kAllBellStates[k]);
}

QuantumState partial_trace(const QuantumState& state, std::span<const std::string> keep) {
  if (keep.empty()) throw QuantumError("partial_trace needs at least one label to keep");
  const auto kept = positions_of(state, keep);
  const std::size_t n = state.num_qubits();
  const auto traced = complement(n, kept);
  const std::size_t dim = state.dimension();
  const auto kdim = static_cast<Eigen::Index>(std::size_t{1} << kept.size());

  const Operator rho = state.density_matrix();
  Operator reduced = Operator::Zero(kdim, kdim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (gather(i, traced, n) != gather(j, traced, n)) continue;
      reduced(gather(i, kept, n), gather(j, kept, n)) += rho(i, j);
    }
  }
  return StateAccess::make_mixed(std::vector<std::string>(keep.begin(), keep.end()),
                                 std::move(reduced));
}

QuantumState permute(const QuantumState& state, std::span<const std::string> order) {
  if (order.size() != state.num_qubits()) {
    throw QuantumError("permute needs every label exactly once");
  }
  const auto pos = positions_of(state, order);
  const std::size_t n = state.num_qubits();
  const std::size_t dim = state.dimension();
  Operator p = Operator::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) p(gather(i, pos, n), i) = 1.0;
  return transform(state, p, std::vector<std::string>(order.begin(), order.end()));
}

QuantumState relabel(const QuantumState& state, std::vector<std::string> labels) {
  if (labels.size() != state.num_qubits()) {
    throw QuantumError("relabel needs one new label per qubit");
  }
  check_labels(labels);
  if (state.is_pure()) return StateAccess::make_pure(std::move(labels), state.amplitudes());
  return StateAccess::make_mixed(std::move(labels), state.density_matrix());
}

double overlap(const QuantumState& a, const QuantumState& b) {
  if (a.labels() != b.labels()) throw QuantumError("overlap needs identical label order");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

bool equal_up_to_phase(const QuantumState& a, const QuantumState& b, double tol) {
  return overlap(a, b) >= 1.0 - tol;
}

// --- spectral -------------------------------------------------------------

bool is_hermitian(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Operator id = Operator::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

EigenDecomposition hermitian_eigen(const Operator& m) {
  if (m.rows() != m.cols()) throw QuantumError("eigen-decomposition needs a square matrix");
  check_finite(m);
  const double scale = std::max(1.0, m.norm());
  if (!is_hermitian(m, kStateTolerance * scale)) {
    throw QuantumError("matrix is not Hermitian");
  }

  const Eigen::Index n = m.rows();
  Operator a = (m + m.adjoint()) / 2.0;
  Operator v = Operator::Identity(n, n);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        if (p != q) s += std::norm(a(p, q));
      }
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  const double target = 1e-12 * scale;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() >= target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        // Phase the pair onto a real symmetric block, then apply a real rotation.
        const Amplitude phase = std::conj(a(p, q) / g);
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Amplitude rpp = c, rpq = s, rqp = -s * phase, rqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Amplitude akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * rpp + akq * rqp;
          a(k, q) = akp * rpq + akq * rqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Amplitude apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
          a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Amplitude vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * rpp + vkq * rqp;
          v(k, q) = vkp * rpq + vkq * rqq;
        }
      }
    }
  }
  if (off_norm() >= target) {
    throw std::runtime_error("Jacobi eigensolver did not converge in 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

double von_neumann_entropy(const Operator& rho) {
  if (!is_hermitian(rho)) throw QuantumError("entropy of a non-Hermitian matrix");
  if (std::abs(rho.trace().real() - 1.0) > kStateTolerance) {
    throw QuantumError("entropy needs a unit-trace density matrix");
  }
  const auto eig = hermitian_eigen(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    double lambda = eig.values(k);
    if (lambda < kEigenvalueFloor) throw QuantumError("density matrix has a negative eigenvalue");
    if (lambda <= 0.0) continue;
    s -= lambda * std::log2(lambda);
  }
  return s;
}

double von_neumann_entropy(const QuantumState& state) {
  if (state.is_pure()) return 0.0;
  return von_neumann_entropy(state.density_matrix());
}

}  // namespace qsdc
