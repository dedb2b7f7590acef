#include "qsdc/bidirectional.hpp"

#include <algorithm>
#include <cmath>

#include "qsdc/bell.hpp"

namespace qsdc {

namespace {

const std::string kB{kBobPhoton};
const std::string kC{kCarolPhoton};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool targets_photon(AttackTarget target, const std::string& photon) {
  switch (target) {
    case AttackTarget::SB: return photon == kB;
    case AttackTarget::SC: return photon == kC;
    case AttackTarget::Both: return true;
  }
  return false;
}

// Eve's action on one photon in transit.
QuantumState transit(QuantumState state, const std::string& photon, std::size_t index,
                     const ChannelParams& params, RandomStream& eve,
                     std::vector<InterceptEvent>& log) {
  if (!targets_photon(params.attack_target, photon)) return state;
  if (const auto* ir = std::get_if<InterceptResend>(&params.attack)) {
    auto result = apply_intercept_resend(state, photon, ir->basis_policy, eve);
    log.push_back({index, std::move(result.record)});
    return std::move(result.state);
  }
  if (const auto* anc = std::get_if<AncillaEntangling>(&params.attack)) {
    return apply_ancilla_attack(state, photon, anc->d);
  }
  return state;
}

int extra_photons(const ChannelParams& params, const std::string& photon) {
  const auto* trojan = std::get_if<TrojanHorse>(&params.attack);
  if (trojan == nullptr || !targets_photon(params.attack_target, photon)) return 0;
  return trojan->extra_photons;
}

TrojanCheckReport trojan_check(std::span<const PairState> pairs, const ChannelParams& params,
                               RandomStream& rand) {
  TrojanCheckReport report;
  const int extra_b = extra_photons(params, kB);
  const int extra_c = extra_photons(params, kC);
  for (const auto& pair : pairs) {
    TrojanRecord rec{pair.index, trojan_beam_splitter_check(extra_b, rand),
                     trojan_beam_splitter_check(extra_c, rand)};
    if (rec.bob.both_clicked() || rec.carol.both_clicked()) ++report.detections;
    report.records.push_back(rec);
  }
  report.tested = pairs.size();
  report.rate = report.tested == 0 ? 0.0
                                   : static_cast<double>(report.detections) /
                                         static_cast<double>(report.tested);
  return report;
}

MeasurementBasis random_basis(RandomStream& rand) {
  return rand.below(2) == 0 ? MeasurementBasis::Z : MeasurementBasis::X;
}

}  // namespace

std::string_view to_string(AttackTarget target) {
  switch (target) {
    case AttackTarget::SB: return "sb";
    case AttackTarget::SC: return "sc";
    case AttackTarget::Both: return "both";
  }
  return "?";
}

AttackTarget parse_attack_target(std::string_view text) {
  for (auto t : {AttackTarget::SB, AttackTarget::SC, AttackTarget::Both}) {
    if (to_string(t) == text) return t;
  }
  throw std::invalid_argument("unknown attack target '" + std::string(text) +
                              "' (expected sb, sc or both)");
}

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Completed: return "completed";
    case SessionStatus::AbortAtSampleCheck: return "abort_at_sample_check";
    case SessionStatus::AbortAtVerification: return "abort_at_verification";
  }
  return "?";
}

std::size_t sample_count(std::size_t n, double fraction) {
  // The small offset keeps products such as 0.2 * 1000 from rounding up.
  const double raw = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

std::size_t SessionConfig::capacity_pairs() const {
  const std::size_t used = n_samples() + k_decoys;
  return used >= n_pairs ? 0 : n_pairs - used;
}

void SessionConfig::validate() const {
  require(n_pairs >= 4, "n_pairs must be at least 4");
  require(sample_fraction > 0.0 && sample_fraction < 1.0, "sample_fraction must lie in (0, 1)");
  require(k_decoys >= 1, "k_decoys must be at least 1");
  require(error_threshold >= 0.0 && error_threshold <= 1.0, "error_threshold must lie in [0, 1]");
  require(loss_prob >= 0.0 && loss_prob <= 1.0, "loss_prob must lie in [0, 1]");
  require(n_samples() + k_decoys < n_pairs,
          "n_pairs leaves no message pair after " + std::to_string(n_samples()) +
              " samples and " + std::to_string(k_decoys) + " decoys");
  qsdc::validate(attack);
}

SampleCheckReport sample_check(std::span<const PairState> pairs, RandomStream& rand) {
  SampleCheckReport report;
  report.records.reserve(pairs.size());
  for (const auto& pair : pairs) {
    SampleRecord rec;
    rec.index = pair.index;
    rec.bob_basis = random_basis(rand);
    rec.carol_basis = random_basis(rand);
    auto bob = measure(pair.state, kB, rec.bob_basis, rand);
    auto carol = measure(bob.post_state, kC, rec.carol_basis, rand);
    rec.bob_outcome = bob.value;
    rec.carol_outcome = carol.value;

    if (rec.bob_basis == rec.carol_basis) {
      // |psi-> anticorrelates in both bases; equal outcomes are errors.
      const bool error = rec.bob_outcome == rec.carol_outcome;
      ++report.compared;
      if (error) ++report.errors;
      if (rec.bob_basis == MeasurementBasis::Z) {
        ++report.compared_z;
        if (error) ++report.errors_z;
      } else {
        ++report.compared_x;
        if (error) ++report.errors_x;
      }
    }
    report.records.push_back(rec);
  }
  report.insufficient = report.compared == 0;
  report.rate = report.insufficient ? 0.0
                                    : static_cast<double>(report.errors) /
                                          static_cast<double>(report.compared);
  return report;
}

VerificationReport verify_decoys(std::span<const PauliOp> published,
                                 std::span<const PauliOp> decoy_ops,
                                 std::span<const PauliOp> mask_ops) {
  if (published.size() != decoy_ops.size() || published.size() != mask_ops.size()) {
    throw std::invalid_argument("verify_decoys: published, decoy and mask lists must align");
  }
  VerificationReport report;
  report.checked = published.size();
  for (std::size_t i = 0; i < published.size(); ++i) {
    if (bits(published[i]) != (bits(decoy_ops[i]) ^ bits(mask_ops[i]))) ++report.mismatches;
  }
  report.rate = report.checked == 0 ? 0.0
                                    : static_cast<double>(report.mismatches) /
                                          static_cast<double>(report.checked);
  return report;
}

ChannelReport establish_channel(const ChannelParams& params, RandomStream& rand) {
  ChannelReport report;
  report.prepared_pairs = params.n_pairs;

  RandomStream loss = rand.derive("loss");
  RandomStream eve = rand.derive("eve");
  RandomStream select = rand.derive("sample-select");
  RandomStream splitter = rand.derive("beam-splitter");
  RandomStream bases = rand.derive("basis-check");

  const QuantumState epr = bell_state(BellIndex::PsiMinus, kB, kC);
  std::vector<PairState> arrived;
  arrived.reserve(params.n_pairs);
  for (std::size_t i = 0; i < params.n_pairs; ++i) {
    const bool lost_b = loss.bernoulli(params.loss_prob);
    const bool lost_c = loss.bernoulli(params.loss_prob);
    if (lost_b || lost_c) {
      report.lost.push_back(i);
      continue;
    }
    QuantumState s = transit(epr, kB, i, params, eve, report.interceptions);
    s = transit(std::move(s), kC, i, params, eve, report.interceptions);
    arrived.push_back({i, std::move(s)});
  }

  const std::size_t n_samples =
      std::min(params.n_samples.value_or(sample_count(arrived.size(), params.sample_fraction)),
               arrived.size());
  const auto chosen = select.choose(arrived.size(), n_samples);
  // First half of the selection goes to the beam-splitter test.
  std::vector<std::size_t> trojan_slots(chosen.begin(), chosen.begin() + n_samples / 2);
  std::vector<std::size_t> basis_slots(chosen.begin() + n_samples / 2, chosen.end());
  std::sort(trojan_slots.begin(), trojan_slots.end());
  std::sort(basis_slots.begin(), basis_slots.end());

  std::vector<PairState> trojan_pairs, basis_pairs;
  for (auto slot : trojan_slots) trojan_pairs.push_back(arrived[slot]);
  for (auto slot : basis_slots) basis_pairs.push_back(arrived[slot]);

  report.trojan_check = trojan_check(trojan_pairs, params, splitter);
  report.sample_check = sample_check(basis_pairs, bases);
  report.passed = report.trojan_check.rate <= params.error_threshold &&
                  report.sample_check.rate <= params.error_threshold;

  std::vector<bool> sampled(arrived.size(), false);
  for (auto slot : chosen) sampled[slot] = true;
  for (std::size_t slot = 0; slot < arrived.size(); ++slot) {
    if (!sampled[slot]) report.remaining.push_back(std::move(arrived[slot]));
  }
  return report;
}

Transcript run_session(const SessionConfig& config, const Message& message) {
  config.validate();
  if (message.size() % 2 != 0) {
    throw CapacityMismatch("message has an odd number of bits (" +
                           std::to_string(message.size()) + ")");
  }
  if (message.size() > config.capacity_bits()) {
    throw CapacityMismatch("message has " + std::to_string(message.size()) +
                           " bits but the session carries at most " +
                           std::to_string(config.capacity_bits()));
  }

  Transcript t;
  t.config = config;
  t.input = message;

  RandomStream root("session", config.seed);
  RandomStream channel_rand = root.derive("channel");
  RandomStream carol_rand = root.derive("carol");
  RandomStream bob_rand = root.derive("bob");
  RandomStream alice_rand = root.derive("alice");
  RandomStream server_rand = root.derive("server");

  // Steps 1-3.
  const ChannelParams params{config.n_pairs,   config.sample_fraction, config.error_threshold,
                             config.loss_prob, config.attack,          config.attack_target,
                             std::nullopt};
  ChannelReport channel = establish_channel(params, channel_rand);
  t.prepared_pairs = channel.prepared_pairs;
  t.lost = std::move(channel.lost);
  t.interceptions = std::move(channel.interceptions);
  t.trojan_check = std::move(channel.trojan_check);
  t.sample_check = std::move(channel.sample_check);
  std::vector<PairState> pairs = std::move(channel.remaining);

  const std::size_t n_decoys = std::min(config.k_decoys, pairs.size());
  t.efficiency.q_t = config.n_pairs;
  t.efficiency.q_u = pairs.size() - n_decoys;
  t.efficiency.eta_q =
      static_cast<double>(t.efficiency.q_u) / static_cast<double>(t.efficiency.q_t);

  if (!channel.passed) {
    t.status = SessionStatus::AbortAtSampleCheck;
    return t;
  }

  // Step 4: Carol masks every remaining C photon.
  for (auto& pair : pairs) {
    const PauliOp mask = kAllPaulis[carol_rand.below(4)];
    t.carol_masks.push_back({pair.index, mask});
    pair.state = apply_unitary(pair.state, pauli_matrix(mask), kC);
  }

  // Step 5: Bob hides k random decoys among the message pairs.
  auto decoy_slots = bob_rand.choose(pairs.size(), n_decoys);
  std::sort(decoy_slots.begin(), decoy_slots.end());
  std::vector<bool> is_decoy(pairs.size(), false);
  for (auto slot : decoy_slots) is_decoy[slot] = true;

  const std::vector<PauliOp> message_ops = message.to_paulis();
  std::size_t next_message = 0;
  std::vector<std::size_t> message_slots;
  for (std::size_t slot = 0; slot < pairs.size(); ++slot) {
    PauliOp op = PauliOp::U0;
    if (is_decoy[slot]) {
      op = kAllPaulis[bob_rand.below(4)];
      t.bob_decoys.push_back({pairs[slot].index, op});
    } else {
      if (next_message < message_ops.size()) {
        op = message_ops[next_message++];
      } else {
        t.padding_bits += 2;
      }
      t.bob_encodings.push_back({pairs[slot].index, op});
      message_slots.push_back(slot);
    }
    pairs[slot].state = apply_unitary(pairs[slot].state, pauli_matrix(op), kB);
  }
  t.truncated_bits = 2 * (message_ops.size() - next_message);

  // Step 6: the server Bell-measures every pair and announces U_A.
  const auto* liar = std::get_if<DishonestServer>(&config.attack);
  std::vector<PauliOp> published(pairs.size());
  for (std::size_t slot = 0; slot < pairs.size(); ++slot) {
    const auto outcome = bell_measure(pairs[slot].state, kB, kC, alice_rand);
    PauliOp announced = bell_to_pauli(outcome.value);
    if (liar != nullptr) announced = server_lie(announced, liar->lie_fraction, server_rand);
    published[slot] = announced;
    t.published.push_back({pairs[slot].index, announced});
  }

  // Step 7: Bob reveals the decoys, Carol audits them, then decodes.
  std::vector<PauliOp> decoy_published, decoy_ops, decoy_masks;
  for (std::size_t j = 0; j < decoy_slots.size(); ++j) {
    const auto slot = decoy_slots[j];
    decoy_published.push_back(published[slot]);
    decoy_ops.push_back(t.bob_decoys[j].op);
    decoy_masks.push_back(t.carol_masks[slot].op);
  }
  t.verification = verify_decoys(decoy_published, decoy_ops, decoy_masks);
  if (t.verification.rate > config.error_threshold) {
    t.status = SessionStatus::AbortAtVerification;
    return t;
  }

  std::vector<PauliOp> decoded;
  for (std::size_t j = 0; j < next_message; ++j) {
    const auto slot = message_slots[j];
    decoded.push_back(decode_pauli(published[slot], t.carol_masks[slot].op));
  }
  t.decoded = Message::from_paulis(decoded);
  t.status = SessionStatus::Completed;
  return t;
}

}  // namespace qsdc
