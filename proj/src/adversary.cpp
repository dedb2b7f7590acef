#include "qsdc/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc {

namespace {

void check_probability(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(value));
  }
}

StateVector ket(int bit) {
  StateVector v = StateVector::Zero(2);
  v(bit) = 1.0;
  return v;
}

// |photon> (x) |ancilla> with the photon as the more significant factor.
StateVector product(int photon, const StateVector& ancilla) {
  StateVector v = StateVector::Zero(4);
  v.segment(photon * 2, 2) = ancilla;
  return v;
}

}  // namespace

std::string_view attack_name(const AttackModel& attack) {
  return kAttackNames[attack.index()];
}

AttackModel parse_attack_kind(std::string_view name) {
  if (name == kAttackNames[0]) return NoAttack{};
  if (name == kAttackNames[1]) return InterceptResend{};
  if (name == kAttackNames[2]) return AncillaEntangling{};
  if (name == kAttackNames[3]) return DishonestServer{};
  if (name == kAttackNames[4]) return TrojanHorse{};
  std::string valid;
  for (auto n : kAttackNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw std::invalid_argument("unknown attack '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string_view to_string(BasisPolicy policy) {
  switch (policy) {
    case BasisPolicy::RandomZX: return "random";
    case BasisPolicy::FixedZ: return "z";
    case BasisPolicy::FixedX: return "x";
  }
  return "?";
}

BasisPolicy parse_basis_policy(std::string_view text) {
  for (auto p : {BasisPolicy::RandomZX, BasisPolicy::FixedZ, BasisPolicy::FixedX}) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown basis policy '" + std::string(text) +
                              "' (expected random, z or x)");
}

void validate(const AttackModel& attack) {
  if (const auto* a = std::get_if<AncillaEntangling>(&attack)) {
    check_probability(a->d, "ancilla attack d");
  } else if (const auto* s = std::get_if<DishonestServer>(&attack)) {
    check_probability(s->lie_fraction, "lie_fraction");
  } else if (const auto* t = std::get_if<TrojanHorse>(&attack)) {
    if (t->extra_photons < 1) {
      throw std::invalid_argument("extra_photons must be at least 1, got " +
                                  std::to_string(t->extra_photons));
    }
  }
}

AncillaConvention AncillaConvention::standard() {
  return {ket(0), ket(1), ket(1), ket(0)};
}

double AncillaConvention::residual(double d) const {
  const double f = 1.0 - d;
  const StateVector c0 = std::sqrt(f) * product(0, e00) + std::sqrt(d) * product(1, e01);
  const StateVector c1 = std::sqrt(d) * product(0, e10) + std::sqrt(f) * product(1, e11);
  double r = std::abs(c0.squaredNorm() - 1.0);
  r = std::max(r, std::abs(c1.squaredNorm() - 1.0));
  r = std::max(r, std::abs(c0.dot(c1)));
  r = std::max(r, std::abs(e00.dot(e10) + e01.dot(e11)));
  return r;
}

Operator attack_unitary(double d, const AncillaConvention& convention) {
  check_probability(d, "detection probability d");
  const double f = 1.0 - d;
  Operator u = Operator::Zero(4, 4);
  u.col(0) = std::sqrt(f) * product(0, convention.e00) + std::sqrt(d) * product(1, convention.e01);
  u.col(2) = std::sqrt(d) * product(0, convention.e10) + std::sqrt(f) * product(1, convention.e11);

  // Complete the columns for ancilla input |1> by Gram-Schmidt.
  std::vector<StateVector> basis = {u.col(0), u.col(2)};
  int next = 1;
  for (int candidate : {1, 3, 0, 2}) {
    if (next > 3) break;
    StateVector v = StateVector::Zero(4);
    v(candidate) = 1.0;
    for (const auto& b : basis) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    basis.push_back(v);
    u.col(next) = v;
    next += 2;
  }
  return u;
}

std::string ancilla_label(std::string_view target) { return "e_" + std::string(target); }

QuantumState apply_ancilla_attack(const QuantumState& state, const std::string& target, double d) {
  check_probability(d, "detection probability d");
  state.position(target);
  const std::string anc = ancilla_label(target);
  if (state.has_label(anc)) {
    throw QuantumError("ancilla label '" + anc + "' is already in use");
  }
  const QuantumState extended = tensor(state, QuantumState::basis({anc}, 0));
  const std::array<std::string, 2> targets{target, anc};
  return apply_unitary(extended, attack_unitary(d), targets);
}

InterceptResult apply_intercept_resend(const QuantumState& state, const std::string& target,
                                       BasisPolicy policy, RandomStream& rand) {
  MeasurementBasis basis = MeasurementBasis::Z;
  switch (policy) {
    case BasisPolicy::RandomZX:
      basis = rand.below(2) == 0 ? MeasurementBasis::Z : MeasurementBasis::X;
      break;
    case BasisPolicy::FixedZ: basis = MeasurementBasis::Z; break;
    case BasisPolicy::FixedX: basis = MeasurementBasis::X; break;
  }
  auto outcome = measure(state, target, basis, rand);
  return {std::move(outcome.post_state), EveRecord{target, basis, outcome.value}};
}

PauliOp server_lie(PauliOp truth, double lie_fraction, RandomStream& rand) {
  check_probability(lie_fraction, "lie_fraction");
  if (!rand.bernoulli(lie_fraction)) return truth;
  std::array<PauliOp, 3> others{};
  std::size_t n = 0;
  for (PauliOp op : kAllPaulis) {
    if (op != truth) others[n++] = op;
  }
  return others[rand.below(3)];
}

BeamSplitterRecord trojan_beam_splitter_check(int extra_photons, RandomStream& rand) {
  if (extra_photons < 0) throw std::invalid_argument("extra_photons must be non-negative");
  BeamSplitterRecord rec;
  for (int i = 0; i < 1 + extra_photons; ++i) {
    if (rand.below(2) == 0) {
      rec.detector_a = true;
    } else {
      rec.detector_b = true;
    }
  }
  return rec;
}

double both_click_probability(int photons) {
  if (photons < 1) throw std::invalid_argument("photon count must be at least 1");
  return 1.0 - std::ldexp(1.0, 1 - photons);
}

}  // namespace qsdc
