#include "qsdc/swapping.hpp"

#include <cmath>

#include "qsdc/bell.hpp"

namespace qsdc {

void SwapSessionConfig::validate() const {
  if (n_groups < 1) throw std::invalid_argument("n_groups must be at least 1");
  if (!(purification_yield > 0.0 && purification_yield <= 1.0)) {
    throw std::invalid_argument("purification_yield must lie in (0, 1]");
  }
  if (!(sample_fraction > 0.0 && sample_fraction < 1.0)) {
    throw std::invalid_argument("sample_fraction must lie in (0, 1)");
  }
  if (!(error_threshold >= 0.0 && error_threshold <= 1.0)) {
    throw std::invalid_argument("error_threshold must lie in [0, 1]");
  }
  if (usable_groups() < 1) {
    throw std::invalid_argument("purification_yield * n_groups leaves no usable group");
  }
  qsdc::validate(attack);
}

std::size_t SwapSessionConfig::usable_groups() const {
  return static_cast<std::size_t>(
      std::floor(purification_yield * static_cast<double>(n_groups) + 1e-9));
}

SwapChannel setup_channel(const SwapSessionConfig& config, RandomStream& rand) {
  config.validate();
  ChannelParams params;
  params.n_pairs = config.group_pairs() + config.check_pairs();
  params.sample_fraction = config.sample_fraction;
  params.error_threshold = config.error_threshold;
  params.attack = config.attack;
  params.attack_target = config.attack_target;
  params.n_samples = config.check_pairs();

  SwapChannel channel;
  channel.report = establish_channel(params, rand);
  if (!channel.report.passed) return channel;

  // Ideal purification oracle: keep whole groups, reset them to |psi->.
  channel.usable_groups = config.usable_groups();
  const QuantumState epr =
      bell_state(BellIndex::PsiMinus, std::string(kBobPhoton), std::string(kCarolPhoton));
  channel.pairs.assign(2 * channel.usable_groups, epr);
  return channel;
}

SwapGroupRecord run_swap_group(const QuantumState& first, const QuantumState& second,
                               PauliOp encoding, RandomStream& rand) {
  const std::string b{kBobPhoton}, c{kCarolPhoton};
  const std::array<std::string, 2> pair_order{b, c};
  const QuantumState p1 = relabel(permute(first, pair_order), {"B1", "C1"});
  const QuantumState p2 = relabel(permute(second, pair_order), {"B2", "C2"});

  QuantumState group = tensor(p1, p2);
  group = apply_unitary(group, pauli_matrix(encoding), std::string("B1"));

  SwapGroupRecord rec;
  rec.encoding = encoding;
  const auto bob = bell_measure(group, "B1", "B2", rand);
  const auto carol = bell_measure(bob.post_state, "C1", "C2", rand);
  rec.bob_outcome = bob.value;
  rec.carol_outcome = carol.value;
  rec.decoded = decode_swap(rec.bob_outcome, rec.carol_outcome);
  return rec;
}

SwapTranscript run_swap_session(const SwapSessionConfig& config, const Message& message) {
  config.validate();
  const std::size_t expected_bits = 2 * config.usable_groups();
  if (message.size() != expected_bits) {
    throw CapacityMismatch("swapping session carries exactly " + std::to_string(expected_bits) +
                           " bits, message has " + std::to_string(message.size()));
  }

  SwapTranscript t;
  t.config = config;
  t.input = message;

  RandomStream root("swap-session", config.seed);
  RandomStream setup_rand = root.derive("setup");
  RandomStream group_rand = root.derive("groups");

  SwapChannel channel = setup_channel(config, setup_rand);
  t.setup = std::move(channel.report);
  t.setup.remaining.clear();
  if (!t.setup.passed) {
    t.status = SessionStatus::AbortAtSampleCheck;
    return t;
  }
  t.usable_groups = channel.usable_groups;

  const auto ops = message.to_paulis();
  std::vector<PauliOp> decoded;
  decoded.reserve(ops.size());
  for (std::size_t g = 0; g < t.usable_groups; ++g) {
    auto rec = run_swap_group(channel.pairs[2 * g], channel.pairs[2 * g + 1], ops[g], group_rand);
    decoded.push_back(rec.decoded);
    t.groups.push_back(rec);
  }
  t.decoded = Message::from_paulis(decoded);

  t.capacity.message_bits = t.decoded.size();
  t.capacity.pairs_consumed = 2 * t.usable_groups;
  t.capacity.bits_per_pair = t.capacity.pairs_consumed == 0
                                 ? 0.0
                                 : static_cast<double>(t.capacity.message_bits) /
                                       static_cast<double>(t.capacity.pairs_consumed);
  t.status = SessionStatus::Completed;
  return t;
}

}  // namespace qsdc
