#include "qsdc/security.hpp"

#include <atomic>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsdc/adversary.hpp"
#include "qsdc/bell.hpp"
#include "qsdc/bidirectional.hpp"
#include "qsdc/quantum.hpp"

namespace qsdc {

namespace {

void check_d(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("d must lie in [0, 1], got " + std::to_string(d));
  }
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SweepRow sweep_row(double d, std::size_t trials, RandomStream rand) {
  const std::string b{kBobPhoton}, c{kCarolPhoton};
  const QuantumState attacked = apply_ancilla_attack(bell_state(BellIndex::PsiMinus, b, c), b, d);
  std::vector<PairState> pairs;
  pairs.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) pairs.push_back({i, attacked});

  const SampleCheckReport check = sample_check(pairs, rand);
  const LeakageReport leak = holevo_numeric(d);

  SweepRow row;
  row.d = d;
  row.error_rate_z = check.compared_z == 0 ? 0.0
                                           : static_cast<double>(check.errors_z) /
                                                 static_cast<double>(check.compared_z);
  row.error_rate_x = check.compared_x == 0 ? 0.0
                                           : static_cast<double>(check.errors_x) /
                                                 static_cast<double>(check.compared_x);
  row.i0_closed = leak.i0_closed;
  row.i0_numeric = leak.i0_numeric;
  row.twice_i0 = leak.twice_i0;
  return row;
}

}  // namespace

void PriorVector::validate() const {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument("prior probabilities must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("prior probabilities must sum to 1");
  }
}

double i0_closed_form(double d) {
  check_d(d);
  double h = 0.0;
  if (d > 0.0) h -= d * std::log2(d);
  if (d < 1.0) h -= (1.0 - d) * std::log2(1.0 - d);
  return h;
}

LeakageReport holevo_numeric(double d, const PriorVector& priors) {
  check_d(d);
  priors.validate();

  const std::string photon{kBobPhoton};
  const QuantumState rho_b =
      QuantumState::mixed({photon}, Operator::Identity(2, 2) / 2.0);
  const QuantumState attacked = apply_ancilla_attack(rho_b, photon, d);

  LeakageReport report;
  report.d = d;
  Operator mixture = Operator::Zero(4, 4);
  for (std::size_t i = 0; i < kAllPaulis.size(); ++i) {
    const QuantumState branch = apply_unitary(attacked, pauli_matrix(kAllPaulis[i]), photon);
    const Operator rho = branch.density_matrix();
    report.s_branches[i] = von_neumann_entropy(rho);
    mixture += priors.p[i] * rho;
  }
  report.s_mix = von_neumann_entropy(mixture);

  double conditional = 0.0;
  for (std::size_t i = 0; i < 4; ++i) conditional += priors.p[i] * report.s_branches[i];
  report.i0_numeric = report.s_mix - conditional;
  report.i0_closed = i0_closed_form(d);
  report.twice_i0 = 2.0 * report.i0_closed;
  return report;
}

std::vector<SweepRow> attack_sweep(std::span<const double> d_grid, std::size_t trials,
                                   std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (double d : d_grid) check_d(d);

  std::vector<SweepRow> rows(d_grid.size());
  const RandomStream root("sweep", seed);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < d_grid.size(); i = next++) {
      try {
        rows[i] = sweep_row(d_grid[i], trials, root.derive("row", i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, d_grid.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.d) << ',' << format_double(r.error_rate_z) << ','
        << format_double(r.error_rate_x) << ',' << format_double(r.i0_closed) << ','
        << format_double(r.i0_numeric) << ',' << format_double(r.twice_i0) << '\n';
  }
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

}  // namespace qsdc
