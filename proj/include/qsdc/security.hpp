#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qsdc {

/// Probabilities of Bob applying U0..U3.
struct PriorVector {
  std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};

  static PriorVector uniform() { return {}; }
  /// Throws std::invalid_argument unless entries are non-negative and sum to 1 within 1e-12.
  void validate() const;
};

/// Leakage bound for one value of the detection probability d.
struct LeakageReport {
  double d = 0.0;
  double i0_closed = 0.0;   ///< binary entropy of d, bits
  double i0_numeric = 0.0;  ///< Holevo quantity from the density-matrix pipeline, bits
  double twice_i0 = 0.0;    ///< 2 * i0_closed (bit and phase leakage)
  double s_mix = 0.0;       ///< entropy of the prior-weighted mixture
  std::array<double, 4> s_branches{};  ///< entropy of each encoded branch
};

/// -d log2 d - (1-d) log2 (1-d), with 0 log 0 = 0. Throws for d outside [0, 1].
double i0_closed_form(double d);

/// Builds rho_B (x) |0><0|_e with rho_B = I/2, applies the ancilla attack,
/// then each U_i on B, and evaluates S(sum P_i rho_i) - sum P_i S(rho_i).
LeakageReport holevo_numeric(double d, const PriorVector& priors = PriorVector::uniform());

struct SweepRow {
  double d = 0.0;
  double error_rate_z = 0.0;
  double error_rate_x = 0.0;
  double i0_closed = 0.0;
  double i0_numeric = 0.0;
  double twice_i0 = 0.0;
};

/// For each d, pushes `trials` |psi-> pairs through the ancilla attack on
/// photon B, runs the random-basis sample check, and joins the per-basis
/// error rates with the leakage numbers. Row i uses a stream derived from
/// (seed, i); rows are computed on up to `threads` workers (0 = hardware
/// concurrency) and returned in grid order.
std::vector<SweepRow> attack_sweep(std::span<const double> d_grid, std::size_t trials,
                                   std::uint64_t seed, unsigned threads = 0);

inline constexpr const char* kSweepCsvHeader = "d,error_rate_z,error_rate_x,i0_closed,i0_numeric,twice_i0";

/// Header line plus one row per grid point, 17 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace qsdc
