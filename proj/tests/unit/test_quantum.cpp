#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "oracle.hpp"
#include "qsdc/quantum.hpp"

using namespace qsdc;

namespace {

StateVector to_eigen(const oracle::Vec& v) {
  StateVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

oracle::Vec random_vec(std::size_t dim, RandomStream& r) {
  oracle::Vec v(dim);
  double norm = 0;
  for (auto& a : v) {
    a = {r.uniform() - 0.5, r.uniform() - 0.5};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

Operator random_hermitian(Eigen::Index n, RandomStream& r) {
  Operator a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {r.uniform() - 0.5, r.uniform() - 0.5};
  return (a + a.adjoint()) / 2.0;
}

double max_diff(const StateVector& a, const oracle::Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    m = std::max(m, std::abs(a[static_cast<Eigen::Index>(i)] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("factories validate their input") {
  CHECK_THROWS_AS(QuantumState::pure({"A"}, StateVector::Ones(2)), QuantumError);
  CHECK_THROWS_AS(QuantumState::pure({"A", "A"}, to_eigen(oracle::bell("psi-"))), QuantumError);
  CHECK_THROWS_AS(QuantumState::pure({"A", ""}, to_eigen(oracle::bell("psi-"))), QuantumError);
  CHECK_THROWS_AS(QuantumState::pure({"A"}, to_eigen(oracle::bell("psi-"))), QuantumError);
  CHECK_THROWS_AS(QuantumState::basis({"A", "B", "C", "D", "E"}, 0), QuantumError);

  Operator bad = Operator::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(QuantumState::mixed({"A"}, bad), QuantumError);

  Operator nonherm = Operator::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(QuantumState::mixed({"A"}, nonherm), QuantumError);
}

TEST_CASE("unknown label errors name the label") {
  const auto s = QuantumState::basis({"A"}, 0);
  try {
    (void)s.position("Zed");
    FAIL("expected an exception");
  } catch (const QuantumError& e) {
    CHECK(std::string(e.what()).find("Zed") != std::string::npos);
  }
}

TEST_CASE("bell vectors match their definitions") {
  for (auto b : kAllBellStates) {
    CHECK(max_diff(bell_vector(b), oracle::bell(to_string(b))) < 1e-15);
  }
}

TEST_CASE("tensor puts the first factor in the high bits") {
  const auto a = QuantumState::basis({"A"}, 0);
  const auto b = QuantumState::basis({"B"}, 1);
  const auto ab = tensor(a, b);
  CHECK(ab.labels() == std::vector<std::string>{"A", "B"});
  CHECK(std::abs(ab.amplitudes()[1] - 1.0) < 1e-15);
  CHECK_THROWS_AS(tensor(a, a), QuantumError);
}

TEST_CASE("single-qubit gates agree with the reference on every target") {
  RandomStream r("q", 1);
  const auto v = random_vec(8, r);
  const auto s = QuantumState::pure({"A", "B", "C"}, to_eigen(v));
  for (int k = 0; k < 4; ++k) {
    const auto m = oracle::pauli(k);
    Operator u(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u(i, j) = m[i][j];
    for (int q = 0; q < 3; ++q) {
      const auto out = apply_unitary(s, u, s.labels()[q]);
      CHECK(max_diff(out.amplitudes(), oracle::apply1(v, 3, q, m)) < 1e-14);
    }
  }
}

TEST_CASE("two-qubit gate respects target order") {
  // CNOT with the first target as control.
  Operator cnot = Operator::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  const auto s = QuantumState::basis({"A", "B", "C"}, 0b001);  // C = 1
  const std::array<std::string, 2> ca{"C", "A"};
  const auto out = apply_unitary(s, cnot, ca);
  CHECK(std::abs(out.amplitudes()[0b101] - 1.0) < 1e-15);

  const std::array<std::string, 2> ac{"A", "C"};
  const auto same = apply_unitary(s, cnot, ac);
  CHECK(std::abs(same.amplitudes()[0b001] - 1.0) < 1e-15);

  CHECK_THROWS_AS(apply_unitary(s, Operator::Ones(2, 2), std::string("A")), QuantumError);
}

TEST_CASE("unitary on mixed state matches pure evolution") {
  RandomStream r("mix", 2);
  const auto v = random_vec(4, r);
  const auto pure = QuantumState::pure({"A", "B"}, to_eigen(v));
  const auto mixed = QuantumState::mixed({"A", "B"}, pure.density_matrix());
  const Operator h = [] {
    Operator m(2, 2);
    m << 1, 1, 1, -1;
    return Operator(m / std::sqrt(2.0));
  }();
  const auto a = apply_unitary(pure, h, std::string("B"));
  const auto b = apply_unitary(mixed, h, std::string("B"));
  CHECK((a.density_matrix() - b.density_matrix()).norm() < 1e-14);
}

TEST_CASE("singlet outcomes anticorrelate in both bases") {
  const auto s = QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PsiMinus));
  for (auto basis : {MeasurementBasis::Z, MeasurementBasis::X}) {
    const auto p = measurement_probabilities(s, "B", basis);
    CHECK(p[0] == doctest::Approx(0.5));
    for (int v = 0; v < 2; ++v) {
      const auto after = project(s, "B", basis, v);
      CHECK(after.probability == doctest::Approx(0.5));
      CHECK(after.post_state.num_qubits() == 2);
      const auto pc = measurement_probabilities(after.post_state, "C", basis);
      CHECK(pc[v] == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(pc[1 - v] == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("measure consumes exactly one draw") {
  const auto s = QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PhiPlus));
  RandomStream a("m", 3), b("m", 3);
  (void)measure(s, "C", MeasurementBasis::X, a);
  (void)b.next_u64();
  CHECK(a.next_u64() == b.next_u64());

  (void)bell_measure(s, "B", "C", a);
  (void)b.next_u64();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("measurement frequencies follow the Born rule") {
  // cos(pi/8)|0> + sin(pi/8)|1>
  StateVector v(2);
  v << std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8);
  const auto s = QuantumState::pure({"A"}, v);
  RandomStream r("born", 4);
  const int n = 20000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += measure(s, "A", MeasurementBasis::Z, r).value;
  const double p1 = std::pow(std::sin(std::numbers::pi / 8), 2);
  CHECK(oracle::within_sigma(ones / double(n), p1, n, 4));
}

TEST_CASE("bell measurement identifies each bell state and removes the qubits") {
  for (auto b : kAllBellStates) {
    const auto s = tensor(QuantumState::pure({"X", "Y"}, bell_vector(b)), QuantumState::basis({"Z"}, 1));
    const auto p = bell_probabilities(s, "X", "Y");
    for (int i = 0; i < 4; ++i) {
      CHECK(p[i] == doctest::Approx(kAllBellStates[i] == b ? 1.0 : 0.0).epsilon(1e-12));
    }
    RandomStream r("bm", 5);
    const auto out = bell_measure(s, "X", "Y", r);
    CHECK(out.value == b);
    CHECK(out.post_state.labels() == std::vector<std::string>{"Z"});
    CHECK(std::abs(out.post_state.amplitudes()[1]) == doctest::Approx(1.0));
  }
}

TEST_CASE("partial trace of a singlet is maximally mixed") {
  const auto s = QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PsiMinus));
  const std::array<std::string, 1> keep{"C"};
  const auto rho = partial_trace(s, keep).density_matrix();
  CHECK((rho - Operator::Identity(2, 2) / 2.0).norm() < 1e-15);
}

TEST_CASE("partial trace matches a reference contraction and honors keep order") {
  RandomStream r("pt", 6);
  const auto v = random_vec(8, r);
  const auto s = QuantumState::pure({"A", "B", "C"}, to_eigen(v));
  const std::array<std::string, 2> keep{"C", "A"};
  const auto rho = partial_trace(s, keep).density_matrix();
  // rho[(c,a),(c',a')] = sum_b v[a b c] conj(v[a' b c'])
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int c2 = 0; c2 < 2; ++c2)
        for (int a2 = 0; a2 < 2; ++a2) {
          oracle::cd ref = 0;
          for (int b = 0; b < 2; ++b) ref += v[a * 4 + b * 2 + c] * std::conj(v[a2 * 4 + b * 2 + c2]);
          CHECK(std::abs(rho(c * 2 + a, c2 * 2 + a2) - ref) < 1e-15);
        }
}

TEST_CASE("permute matches a reference reordering") {
  RandomStream r("perm", 7);
  const auto v = random_vec(16, r);
  const auto s = QuantumState::pure({"A", "B", "C", "D"}, to_eigen(v));
  const std::array<std::string, 4> order{"C", "A", "D", "B"};
  const auto p = permute(s, order);
  CHECK(p.labels() == std::vector<std::string>{"C", "A", "D", "B"});
  CHECK(max_diff(p.amplitudes(), oracle::reorder(v, 4, {2, 0, 3, 1})) < 1e-15);

  const std::array<std::string, 4> bad{"C", "A", "D", "D"};
  CHECK_THROWS_AS(permute(s, bad), QuantumError);
}

TEST_CASE("relabel and phase-insensitive comparison") {
  const auto s = QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PsiPlus));
  const auto t = QuantumState::pure({"B", "C"}, StateVector(bell_vector(BellIndex::PsiPlus) * Amplitude(0, 1)));
  CHECK(equal_up_to_phase(s, t));
  CHECK(overlap(s, QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PsiMinus))) < 1e-15);
  CHECK(relabel(s, {"X", "Y"}).labels() == std::vector<std::string>{"X", "Y"});
}

TEST_CASE("jacobi eigenvalues agree with Eigen's solver") {
  RandomStream r("eig", 8);
  for (Eigen::Index n : {1, 2, 3, 4, 8, 16}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Operator m = random_hermitian(n, r);
      const auto mine = hermitian_eigen(m);
      Eigen::SelfAdjointEigenSolver<Operator> ref(m);
      CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-11);
      const Operator rebuilt =
          mine.vectors * mine.values.cast<Amplitude>().asDiagonal() * mine.vectors.adjoint();
      CHECK((rebuilt - m).norm() < 1e-11);
      CHECK((mine.vectors.adjoint() * mine.vectors - Operator::Identity(n, n)).norm() < 1e-11);
      CHECK(mine.sweeps <= 100);
    }
  }
}

TEST_CASE("jacobi handles degenerate spectra") {
  const Operator m = Operator::Identity(4, 4) * 0.25;
  const auto e = hermitian_eigen(m);
  CHECK((e.values.array() - 0.25).abs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(hermitian_eigen(Operator::Ones(2, 3)), QuantumError);
}

TEST_CASE("von neumann entropy") {
  Operator d = Operator::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  CHECK(von_neumann_entropy(d) == doctest::Approx(oracle::binary_entropy(0.25)).epsilon(1e-14));
  CHECK(von_neumann_entropy(Operator(Operator::Identity(4, 4) / 4.0)) == doctest::Approx(2.0));
  const auto bell = QuantumState::pure({"B", "C"}, bell_vector(BellIndex::PsiMinus));
  CHECK(von_neumann_entropy(bell) == 0.0);
  CHECK(std::abs(von_neumann_entropy(bell.density_matrix())) < 1e-12);
  CHECK_THROWS_AS(von_neumann_entropy(Operator(Operator::Identity(2, 2))), QuantumError);
}

TEST_CASE("unitarity and hermiticity predicates") {
  Operator h(2, 2);
  h << 1, 1, 1, -1;
  CHECK(is_unitary(h / std::sqrt(2.0)));
  CHECK_FALSE(is_unitary(h));
  CHECK(is_hermitian(h));
  h(0, 1) = Amplitude(0, 1);
  CHECK_FALSE(is_hermitian(h));
}
