// qsdc_sim: batch front-end for the bidirectional and swapping sessions,
// the ancilla-attack sweep, the leakage calculation and the trojan click test.
//
// Exit codes: 0 success, 1 usage or config error, 2 eavesdropping detected.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qsdc/config.hpp"
#include "qsdc/random.hpp"
#include "qsdc/transcript_io.hpp"

namespace {

using namespace qsdc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDetected = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repetitions, threads, trials;
  std::optional<std::string> message_hex;
  std::optional<std::size_t> pairs, decoys, groups;
  std::optional<double> sample_fraction, threshold, loss, yield;
  std::optional<std::string> attack, basis_policy, attack_target;
  std::optional<double> d, lie_fraction;
  std::optional<int> extra_photons;
  std::optional<std::vector<double>> grid, priors;
  std::optional<std::string> transcript, csv;
};

template <class T>
void set_if(const std::optional<T>& value, T& target) {
  if (value) target = *value;
}

template <class F>
void convert_flag(const std::optional<std::string>& value, const char* path, F&& apply) {
  if (!value) return;
  try {
    apply(*value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

void apply(const Overrides& o, CliConfig& c) {
  set_if(o.seed, c.seed);
  set_if(o.repetitions, c.repetitions);
  if (o.threads) c.threads = static_cast<unsigned>(*o.threads);
  set_if(o.trials, c.trials);
  set_if(o.message_hex, c.message_hex);
  set_if(o.pairs, c.pairs);
  set_if(o.decoys, c.decoys);
  set_if(o.groups, c.groups);
  set_if(o.sample_fraction, c.sample_fraction);
  set_if(o.threshold, c.error_threshold);
  set_if(o.loss, c.loss_prob);
  set_if(o.yield, c.purification_yield);
  convert_flag(o.attack, "attack.kind", [&](const std::string& v) {
    parse_attack_kind(v);
    c.attack = v;
  });
  convert_flag(o.basis_policy, "attack.basis_policy",
               [&](const std::string& v) { c.basis_policy = parse_basis_policy(v); });
  convert_flag(o.attack_target, "attack.target",
               [&](const std::string& v) { c.attack_target = parse_attack_target(v); });
  if (o.d) (c.command == Command::Holevo ? c.holevo_d : c.attack_d) = *o.d;
  set_if(o.lie_fraction, c.lie_fraction);
  set_if(o.extra_photons, c.extra_photons);
  set_if(o.grid, c.d_grid);
  if (o.priors) {
    if (o.priors->size() != 4) throw ConfigError("holevo.priors", "must have exactly 4 entries");
    std::copy(o.priors->begin(), o.priors->end(), c.priors.p.begin());
  }
  set_if(o.transcript, c.transcript_path);
  set_if(o.csv, c.csv_path);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::uint64_t repetition_seed(const CliConfig& c, std::size_t r) {
  return c.repetitions == 1 ? c.seed : derive_seed(c.seed, "repetition", r);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output", "cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("output", "failed writing '" + path + "'");
}

std::string describe(const Message& m) {
  if (m.size() == 0) return "(empty)";
  return m.size() % 4 == 0 ? m.to_hex() : m.to_bit_string() + " (binary)";
}

std::string prefix(const CliConfig& c, std::size_t r) {
  return c.repetitions == 1 ? std::string() : "[" + std::to_string(r) + "] ";
}

void print_detection(const std::string& pre, const SampleCheckReport& sc,
                     const TrojanCheckReport& tr, double threshold) {
  if (tr.detections > 0) {
    std::printf("%sDETECTED trojan-horse probe: %zu of %zu pairs showed a double click\n",
                pre.c_str(), tr.detections, tr.tested);
  } else {
    std::printf("%sDETECTED eavesdropping: sample error rate %.4f > threshold %.4f\n",
                pre.c_str(), sc.rate, threshold);
  }
}

int run_bidirectional(const CliConfig& c) {
  const Message msg = c.message();
  auto transcripts = parallel_map<Transcript>(c.repetitions, c.threads, [&](std::size_t r) {
    SessionConfig s = c.session_config();
    s.seed = repetition_seed(c, r);
    return run_session(s, msg);
  });
  write_file(c.transcript_path,
             transcripts.size() == 1 ? to_json(transcripts.front()) : to_json(transcripts));

  std::size_t detected = 0;
  for (std::size_t r = 0; r < transcripts.size(); ++r) {
    const Transcript& t = transcripts[r];
    const std::string pre = prefix(c, r);
    std::printf("%sstatus %s\n", pre.c_str(), std::string(to_string(t.status)).c_str());
    std::printf("%ssample_check compared %zu errors %zu rate %.4f%s\n", pre.c_str(),
                t.sample_check.compared, t.sample_check.errors, t.sample_check.rate,
                t.sample_check.insufficient ? " (insufficient)" : "");
    std::printf("%strojan_check tested %zu detections %zu\n", pre.c_str(), t.trojan_check.tested,
                t.trojan_check.detections);
    switch (t.status) {
      case SessionStatus::AbortAtSampleCheck:
        ++detected;
        print_detection(pre, t.sample_check, t.trojan_check, c.error_threshold);
        break;
      case SessionStatus::AbortAtVerification:
        ++detected;
        std::printf("%sDETECTED dishonest server: %zu of %zu decoys mismatched\n", pre.c_str(),
                    t.verification.mismatches, t.verification.checked);
        break;
      case SessionStatus::Completed:
        std::printf("%sverification checked %zu mismatches %zu\n", pre.c_str(),
                    t.verification.checked, t.verification.mismatches);
        std::printf("%sdecoded %s\n", pre.c_str(), describe(t.decoded).c_str());
        if (t.truncated_bits > 0) {
          std::printf("%struncated_bits %zu (photon loss)\n", pre.c_str(), t.truncated_bits);
        }
        std::printf("%seta_q %.6f (q_u %zu, q_t %zu)\n", pre.c_str(), t.efficiency.eta_q,
                    t.efficiency.q_u, t.efficiency.q_t);
        break;
    }
  }
  if (c.repetitions > 1) std::printf("detected %zu of %zu sessions\n", detected, c.repetitions);
  std::printf("transcript %s\n", c.transcript_path.c_str());
  return detected > 0 ? kExitDetected : kExitOk;
}

int run_swapping(const CliConfig& c) {
  const Message msg = c.message();
  auto transcripts = parallel_map<SwapTranscript>(c.repetitions, c.threads, [&](std::size_t r) {
    SwapSessionConfig s = c.swap_config();
    s.seed = repetition_seed(c, r);
    return run_swap_session(s, msg);
  });
  write_file(c.transcript_path,
             transcripts.size() == 1 ? to_json(transcripts.front()) : to_json(transcripts));

  std::size_t detected = 0;
  for (std::size_t r = 0; r < transcripts.size(); ++r) {
    const SwapTranscript& t = transcripts[r];
    const std::string pre = prefix(c, r);
    std::printf("%sstatus %s\n", pre.c_str(), std::string(to_string(t.status)).c_str());
    std::printf("%ssample_check compared %zu errors %zu rate %.4f\n", pre.c_str(),
                t.setup.sample_check.compared, t.setup.sample_check.errors,
                t.setup.sample_check.rate);
    if (t.status != SessionStatus::Completed) {
      ++detected;
      print_detection(pre, t.setup.sample_check, t.setup.trojan_check, c.error_threshold);
      continue;
    }
    std::printf("%sgroups %zu usable %zu\n", pre.c_str(), t.config.n_groups, t.usable_groups);
    std::printf("%sdecoded %s\n", pre.c_str(), describe(t.decoded).c_str());
    std::printf("%sbits_per_pair %.4f\n", pre.c_str(), t.capacity.bits_per_pair);
  }
  if (c.repetitions > 1) std::printf("detected %zu of %zu sessions\n", detected, c.repetitions);
  std::printf("transcript %s\n", c.transcript_path.c_str());
  return detected > 0 ? kExitDetected : kExitOk;
}

int run_sweep(const CliConfig& c) {
  const auto rows = attack_sweep(c.d_grid, c.trials, c.seed, c.threads);
  write_file(c.csv_path, sweep_csv(rows));
  std::printf("%-6s %-13s %-13s %-10s %-10s\n", "d", "error_rate_z", "error_rate_x", "i0",
              "twice_i0");
  for (const auto& r : rows) {
    std::printf("%-6.3f %-13.4f %-13.4f %-10.4f %-10.4f\n", r.d, r.error_rate_z, r.error_rate_x,
                r.i0_closed, r.twice_i0);
  }
  std::printf("csv %s\n", c.csv_path.c_str());
  return kExitOk;
}

int run_holevo(const CliConfig& c) {
  const LeakageReport r = holevo_numeric(c.holevo_d, c.priors);
  std::printf("d %.4f\n", r.d);
  std::printf("i0_closed %.4f\n", r.i0_closed);
  std::printf("i0_numeric %.4f\n", r.i0_numeric);
  std::printf("twice_i0 %.4f\n", r.twice_i0);
  std::printf("s_mix %.4f\n", r.s_mix);
  std::printf("full precision: i0_closed %.17g i0_numeric %.17g twice_i0 %.17g\n", r.i0_closed,
              r.i0_numeric, r.twice_i0);
  return kExitOk;
}

int run_trojan_check(const CliConfig& c) {
  RandomStream rand("trojan-check", c.seed);
  std::size_t both = 0;
  for (std::size_t i = 0; i < c.trials; ++i) {
    if (trojan_beam_splitter_check(c.extra_photons, rand).both_clicked()) ++both;
  }
  const int photons = 1 + c.extra_photons;
  const double p = both_click_probability(photons);
  const double freq = static_cast<double>(both) / static_cast<double>(c.trials);
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(c.trials));
  std::printf("photons %d trials %zu\n", photons, c.trials);
  std::printf("both_click_frequency %.4f\n", freq);
  std::printf("expected %.4f sigma %.4f\n", p, sigma);
  return kExitOk;
}

void add_session_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--pairs", o.pairs, "EPR pairs prepared by the server (N)");
  sub->add_option("--sample-frac", o.sample_fraction, "fraction of arrived pairs sampled");
  sub->add_option("--decoys", o.decoys, "decoy pairs k");
  sub->add_option("--threshold", o.threshold, "abort when the sample error rate exceeds this");
  sub->add_option("--loss", o.loss, "per-photon loss probability");
}

void add_attack_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--attack", o.attack,
                  "none | intercept-resend | ancilla | dishonest-server | trojan-horse");
  sub->add_option("--basis-policy", o.basis_policy, "intercept-resend basis: random | z | x");
  sub->add_option("--d", o.d, "ancilla attack detection probability");
  sub->add_option("--lie-fraction", o.lie_fraction, "dishonest server lie probability");
  sub->add_option("--extra-photons", o.extra_photons, "trojan-horse probe photons per signal");
  sub->add_option("--attack-target", o.attack_target, "sb | sc | both");
}

void add_run_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--message-hex", o.message_hex, "message as hex digits");
  sub->add_option("--repetitions", o.repetitions, "independent sessions with derived seeds");
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  sub->add_option("--transcript", o.transcript, "transcript output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QSDC protocol simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "root seed for all randomness");

  auto* bidi = app.add_subcommand("run-bidirectional", "run the bidirectional session");
  add_session_flags(bidi, o);
  add_attack_flags(bidi, o);
  add_run_flags(bidi, o);

  auto* swap = app.add_subcommand("run-swapping", "run the entanglement-swapping session");
  swap->add_option("--groups", o.groups, "groups of two pairs (0 = fit the message)");
  swap->add_option("--yield", o.yield, "purification yield in (0, 1]");
  swap->add_option("--sample-frac", o.sample_fraction, "fraction of pairs sampled");
  swap->add_option("--threshold", o.threshold, "abort when the sample error rate exceeds this");
  add_attack_flags(swap, o);
  add_run_flags(swap, o);

  auto* sweep = app.add_subcommand("sweep", "ancilla attack error rate and leakage over d");
  sweep->add_option("--grid", o.grid, "comma-separated d values")->delimiter(',');
  sweep->add_option("--trials", o.trials, "sampled pairs per grid point");
  sweep->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  sweep->add_option("--csv", o.csv, "CSV output path");

  auto* holevo = app.add_subcommand("holevo", "leakage bound at one d");
  holevo->add_option("--d", o.d, "detection probability");
  holevo->add_option("--priors", o.priors, "four comma-separated probabilities")->delimiter(',');

  auto* trojan = app.add_subcommand("trojan-check", "beam-splitter click statistics");
  trojan->add_option("--extra-photons", o.extra_photons, "probe photons added to each signal");
  trojan->add_option("--trials", o.trials, "signals tested");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CliConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::ostringstream text;
      text << in.rdbuf();
      config = parse_config_text(text.str());
    }
    const auto* chosen = app.get_subcommands().front();
    config.command = parse_command(chosen->get_name());
    apply(o, config);
    config.validate();

    switch (config.command) {
      case Command::RunBidirectional: return run_bidirectional(config);
      case Command::RunSwapping: return run_swapping(config);
      case Command::Sweep: return run_sweep(config);
      case Command::Holevo: return run_holevo(config);
      case Command::TrojanCheck: return run_trojan_check(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
