#include "qsdc/transcript_io.hpp"

#include <json.hpp>

namespace qsdc {

namespace {

using json = nlohmann::ordered_json;

json attack_json(const AttackModel& attack, AttackTarget target) {
  json j;
  j["kind"] = attack_name(attack);
  if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
    j["basis_policy"] = to_string(ir->basis_policy);
  } else if (const auto* anc = std::get_if<AncillaEntangling>(&attack)) {
    j["d"] = anc->d;
  } else if (const auto* lie = std::get_if<DishonestServer>(&attack)) {
    j["lie_fraction"] = lie->lie_fraction;
  } else if (const auto* trojan = std::get_if<TrojanHorse>(&attack)) {
    j["extra_photons"] = trojan->extra_photons;
  }
  j["target"] = to_string(target);
  return j;
}

json ops_json(const std::vector<PositionedOp>& ops) {
  json arr = json::array();
  for (const auto& p : ops) arr.push_back(json{{"index", p.index}, {"op", to_string(p.op)}});
  return arr;
}

json splitter_json(const BeamSplitterRecord& r) {
  return json{{"detector_a", r.detector_a}, {"detector_b", r.detector_b}};
}

json channel_json(std::size_t prepared, const std::vector<std::size_t>& lost,
                  const std::vector<InterceptEvent>& interceptions,
                  const TrojanCheckReport& trojan, const SampleCheckReport& sample) {
  json j;
  j["prepared"] = json{{"pairs", prepared}, {"state", to_string(BellIndex::PsiMinus)}};
  j["lost"] = lost;

  json eve = json::array();
  for (const auto& e : interceptions) {
    eve.push_back(json{{"index", e.index},
                       {"photon", e.record.target},
                       {"basis", to_string(e.record.basis)},
                       {"outcome", e.record.outcome}});
  }
  j["interceptions"] = std::move(eve);

  json tr;
  tr["tested"] = trojan.tested;
  tr["detections"] = trojan.detections;
  tr["rate"] = trojan.rate;
  json tr_records = json::array();
  for (const auto& r : trojan.records) {
    tr_records.push_back(
        json{{"index", r.index}, {"bob", splitter_json(r.bob)}, {"carol", splitter_json(r.carol)}});
  }
  tr["records"] = std::move(tr_records);
  j["trojan_check"] = std::move(tr);

  json sc;
  sc["compared"] = sample.compared;
  sc["errors"] = sample.errors;
  sc["rate"] = sample.rate;
  sc["insufficient"] = sample.insufficient;
  sc["compared_z"] = sample.compared_z;
  sc["errors_z"] = sample.errors_z;
  sc["compared_x"] = sample.compared_x;
  sc["errors_x"] = sample.errors_x;
  json sc_records = json::array();
  for (const auto& r : sample.records) {
    sc_records.push_back(json{{"index", r.index},
                              {"bob_basis", to_string(r.bob_basis)},
                              {"bob_outcome", r.bob_outcome},
                              {"carol_basis", to_string(r.carol_basis)},
                              {"carol_outcome", r.carol_outcome}});
  }
  sc["records"] = std::move(sc_records);
  j["sample_check"] = std::move(sc);
  return j;
}

json message_json(const Message& m) {
  json j;
  j["bits"] = m.size();
  j["binary"] = m.to_bit_string();
  if (m.size() % 4 == 0) j["hex"] = m.to_hex();
  return j;
}

json transcript_json(const Transcript& t) {
  const SessionConfig& c = t.config;
  json j;
  j["protocol"] = "bidirectional";
  j["config"] = json{{"n_pairs", c.n_pairs},
                     {"sample_fraction", c.sample_fraction},
                     {"k_decoys", c.k_decoys},
                     {"error_threshold", c.error_threshold},
                     {"loss_prob", c.loss_prob},
                     {"attack", attack_json(c.attack, c.attack_target)},
                     {"seed", c.seed}};
  j["status"] = to_string(t.status);
  j["channel"] =
      channel_json(t.prepared_pairs, t.lost, t.interceptions, t.trojan_check, t.sample_check);
  j["carol_masks"] = json{{"visibility", "secret"}, {"ops", ops_json(t.carol_masks)}};
  j["bob_decoys"] = ops_json(t.bob_decoys);
  j["bob_encodings"] = ops_json(t.bob_encodings);
  j["published"] = ops_json(t.published);
  j["verification"] = json{{"checked", t.verification.checked},
                           {"mismatches", t.verification.mismatches},
                           {"rate", t.verification.rate}};
  j["message"] = json{{"input", message_json(t.input)},
                      {"padding_bits", t.padding_bits},
                      {"truncated_bits", t.truncated_bits},
                      {"decoded", message_json(t.decoded)}};
  j["efficiency"] = json{{"q_u", t.efficiency.q_u},
                         {"q_t", t.efficiency.q_t},
                         {"eta_q", t.efficiency.eta_q}};
  return j;
}

json swap_transcript_json(const SwapTranscript& t) {
  const SwapSessionConfig& c = t.config;
  json j;
  j["protocol"] = "swapping";
  j["config"] = json{{"n_groups", c.n_groups},
                     {"purification_yield", c.purification_yield},
                     {"sample_fraction", c.sample_fraction},
                     {"error_threshold", c.error_threshold},
                     {"attack", attack_json(c.attack, c.attack_target)},
                     {"seed", c.seed}};
  j["status"] = to_string(t.status);
  j["setup"] = channel_json(t.setup.prepared_pairs, t.setup.lost, t.setup.interceptions,
                            t.setup.trojan_check, t.setup.sample_check);
  j["usable_groups"] = t.usable_groups;
  json groups = json::array();
  for (const auto& g : t.groups) {
    groups.push_back(json{{"encoding", to_string(g.encoding)},
                          {"bob_outcome", to_string(g.bob_outcome)},
                          {"carol_outcome", to_string(g.carol_outcome)},
                          {"decoded", to_string(g.decoded)}});
  }
  j["groups"] = std::move(groups);
  j["message"] = json{{"input", message_json(t.input)}, {"decoded", message_json(t.decoded)}};
  j["capacity"] = json{{"message_bits", t.capacity.message_bits},
                       {"pairs_consumed", t.capacity.pairs_consumed},
                       {"bits_per_pair", t.capacity.bits_per_pair}};
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const Transcript& transcript) { return dump(transcript_json(transcript)); }

std::string to_json(const SwapTranscript& transcript) {
  return dump(swap_transcript_json(transcript));
}

std::string to_json(const LeakageReport& r) {
  json j;
  j["d"] = r.d;
  j["i0_closed"] = r.i0_closed;
  j["i0_numeric"] = r.i0_numeric;
  j["twice_i0"] = r.twice_i0;
  j["s_mix"] = r.s_mix;
  j["s_branches"] = r.s_branches;
  return dump(j);
}

std::string to_json(const std::vector<Transcript>& transcripts) {
  json arr = json::array();
  for (const auto& t : transcripts) arr.push_back(transcript_json(t));
  return dump(arr);
}

std::string to_json(const std::vector<SwapTranscript>& transcripts) {
  json arr = json::array();
  for (const auto& t : transcripts) arr.push_back(swap_transcript_json(t));
  return dump(arr);
}

}  // namespace qsdc
