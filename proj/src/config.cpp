#include "qsdc/config.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace qsdc {

namespace {

using json = nlohmann::json;

struct FlagEntry {
  std::string_view path;
  std::string_view flag;
};

constexpr FlagEntry kFlags[] = {
    {"command", ""},
    {"seed", "--seed"},
    {"repetitions", "--repetitions"},
    {"threads", "--threads"},
    {"trials", "--trials"},
    {"message_hex", "--message-hex"},
    {"session.pairs", "--pairs"},
    {"session.sample_fraction", "--sample-frac"},
    {"session.decoys", "--decoys"},
    {"session.error_threshold", "--threshold"},
    {"session.loss_prob", "--loss"},
    {"swapping.groups", "--groups"},
    {"swapping.purification_yield", "--yield"},
    {"attack.kind", "--attack"},
    {"attack.basis_policy", "--basis-policy"},
    {"attack.d", "--d"},
    {"attack.lie_fraction", "--lie-fraction"},
    {"attack.extra_photons", "--extra-photons"},
    {"attack.target", "--attack-target"},
    {"sweep.d_grid", "--grid"},
    {"holevo.d", "--d"},
    {"holevo.priors", "--priors"},
    {"output.transcript", "--transcript"},
    {"output.csv", "--csv"},
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path, message);
}

void check(bool ok, const std::string& path, const std::string& message) {
  if (!ok) fail(path, message);
}

std::string join_names(std::span<const std::string_view> names) {
  std::string out;
  for (auto n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

// Typed readers over one JSON object; every key read is remembered so that
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) fail(prefix_.empty() ? "<root>" : prefix_, "must be an object");
  }

  const json* find(const std::string& key) {
    seen_.push_back(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  void read(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      check(v->is_number_integer() && v->get<std::int64_t>() >= 0, path(key),
            "must be a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void read(const std::string& key, unsigned& out) {
    std::size_t tmp = out;
    read(key, tmp);
    out = static_cast<unsigned>(tmp);
  }

  void read(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      check(v->is_number_integer(), path(key), "must be an integer");
      out = v->get<int>();
    }
  }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      check(v->is_number(), path(key), "must be a number");
      out = v->get<double>();
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      check(v->is_string(), path(key), "must be a string");
      out = v->get<std::string>();
    }
  }

  void read(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      check(v->is_array(), path(key), "must be an array of numbers");
      std::vector<double> values;
      for (const auto& x : *v) {
        check(x.is_number(), path(key), "must be an array of numbers");
        values.push_back(x.get<double>());
      }
      out = std::move(values);
    }
  }

  template <class F>
  void read_string_as(const std::string& key, F&& convert) {
    if (const json* v = find(key)) {
      check(v->is_string(), path(key), "must be a string");
      try {
        convert(v->get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(path(key), e.what());
      }
    }
  }

  template <class F>
  void section(const std::string& key, F&& body) {
    if (const json* v = find(key)) {
      Section sub(*v, path(key));
      body(sub);
      sub.finish();
    }
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        fail(path(key), "unknown key");
      }
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<std::string> seen_;
};

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::invalid_argument([&] {
        std::string text = path;
        const auto flag = flag_for(path);
        if (!flag.empty()) text += " (" + std::string(flag) + ")";
        return text + ": " + message;
      }()),
      path_(std::move(path)) {}

std::string_view flag_for(std::string_view path) {
  for (const auto& e : kFlags) {
    if (e.path == path) return e.flag;
  }
  return {};
}

std::string_view to_string(Command command) {
  return kCommandNames[static_cast<std::size_t>(command)];
}

Command parse_command(std::string_view text) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i) {
    if (kCommandNames[i] == text) return static_cast<Command>(i);
  }
  throw std::invalid_argument("unknown command '" + std::string(text) +
                              "' (valid: " + join_names(kCommandNames) + ")");
}

std::vector<double> CliConfig::default_d_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 20.0);
  return grid;
}

AttackModel CliConfig::attack_model() const {
  AttackModel model;
  try {
    model = parse_attack_kind(attack);
  } catch (const std::invalid_argument& e) {
    fail("attack.kind", e.what());
  }
  if (auto* ir = std::get_if<InterceptResend>(&model)) ir->basis_policy = basis_policy;
  if (auto* anc = std::get_if<AncillaEntangling>(&model)) anc->d = attack_d;
  if (auto* lie = std::get_if<DishonestServer>(&model)) lie->lie_fraction = lie_fraction;
  if (auto* tr = std::get_if<TrojanHorse>(&model)) tr->extra_photons = extra_photons;
  return model;
}

SessionConfig CliConfig::session_config() const {
  SessionConfig c;
  c.n_pairs = pairs;
  c.sample_fraction = sample_fraction;
  c.k_decoys = decoys;
  c.error_threshold = error_threshold;
  c.loss_prob = loss_prob;
  c.attack = attack_model();
  c.attack_target = attack_target;
  c.seed = seed;
  return c;
}

Message CliConfig::message() const {
  try {
    return Message::from_hex(message_hex);
  } catch (const std::invalid_argument& e) {
    fail("message_hex", e.what());
  }
}

SwapSessionConfig CliConfig::swap_config() const {
  SwapSessionConfig c;
  c.purification_yield = purification_yield;
  c.sample_fraction = sample_fraction;
  c.error_threshold = error_threshold;
  c.attack = attack_model();
  c.attack_target = attack_target;
  c.seed = seed;
  c.n_groups = groups;
  if (c.n_groups == 0) {
    // usable_groups(g) <= g, so the search starts at the group count itself.
    const std::size_t needed = message().size() / 2;
    c.n_groups = std::max<std::size_t>(needed, 1);
    while (c.usable_groups() < needed) ++c.n_groups;
  }
  return c;
}

void CliConfig::validate() const {
  check(repetitions >= 1, "repetitions", "must be at least 1");
  check(pairs >= 4, "session.pairs", "must be at least 4");
  check(sample_fraction > 0.0 && sample_fraction < 1.0, "session.sample_fraction",
        "must lie in (0, 1)");
  check(decoys >= 1, "session.decoys", "must be at least 1");
  check(is_probability(error_threshold), "session.error_threshold", "must lie in [0, 1]");
  check(is_probability(loss_prob), "session.loss_prob", "must lie in [0, 1]");
  check(purification_yield > 0.0 && purification_yield <= 1.0, "swapping.purification_yield",
        "must lie in (0, 1]");
  check(is_probability(attack_d), "attack.d", "must lie in [0, 1]");
  check(is_probability(lie_fraction), "attack.lie_fraction", "must lie in [0, 1]");
  check(trials >= 1, "trials", "must be at least 1");
  check(!d_grid.empty(), "sweep.d_grid", "must not be empty");
  for (double d : d_grid) check(is_probability(d), "sweep.d_grid", "values must lie in [0, 1]");
  check(is_probability(holevo_d), "holevo.d", "must lie in [0, 1]");
  try {
    priors.validate();
  } catch (const std::invalid_argument& e) {
    fail("holevo.priors", e.what());
  }
  check(!transcript_path.empty(), "output.transcript", "must not be empty");
  check(!csv_path.empty(), "output.csv", "must not be empty");

  const AttackModel model = attack_model();
  if (std::holds_alternative<TrojanHorse>(model) || command == Command::TrojanCheck) {
    check(extra_photons >= (command == Command::TrojanCheck ? 0 : 1), "attack.extra_photons",
          command == Command::TrojanCheck ? "must be non-negative" : "must be at least 1");
  }

  if (command == Command::RunBidirectional || command == Command::RunSwapping) {
    check(!message_hex.empty(), "message_hex", "required for " + std::string(to_string(command)));
    const Message msg = message();
    if (command == Command::RunBidirectional) {
      const SessionConfig s = session_config();
      check(s.n_samples() + s.k_decoys < s.n_pairs, "session.pairs",
            "leaves no message pair after " + std::to_string(s.n_samples()) + " samples and " +
                std::to_string(s.k_decoys) + " decoys");
      check(msg.size() <= s.capacity_bits(), "message_hex",
            std::to_string(msg.size()) + " bits exceed the session capacity of " +
                std::to_string(s.capacity_bits()) + " bits");
    } else {
      const SwapSessionConfig s = swap_config();
      check(s.usable_groups() >= 1, "swapping.groups", "leaves no usable group");
      check(msg.size() == 2 * s.usable_groups(), "message_hex",
            std::to_string(msg.size()) + " bits but the session carries exactly " +
                std::to_string(2 * s.usable_groups()));
    }
  }
}

CliConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }

  CliConfig c;
  Section root(doc, "");
  root.read_string_as("command", [&](const std::string& s) { c.command = parse_command(s); });
  root.read("seed", c.seed);
  root.read("repetitions", c.repetitions);
  root.read("threads", c.threads);
  root.read("trials", c.trials);
  root.read("message_hex", c.message_hex);
  root.section("session", [&](Section& s) {
    s.read("pairs", c.pairs);
    s.read("sample_fraction", c.sample_fraction);
    s.read("decoys", c.decoys);
    s.read("error_threshold", c.error_threshold);
    s.read("loss_prob", c.loss_prob);
  });
  root.section("swapping", [&](Section& s) {
    s.read("groups", c.groups);
    s.read("purification_yield", c.purification_yield);
  });
  root.section("attack", [&](Section& s) {
    s.read_string_as("kind", [&](const std::string& v) {
      parse_attack_kind(v);
      c.attack = v;
    });
    s.read_string_as("basis_policy",
                     [&](const std::string& v) { c.basis_policy = parse_basis_policy(v); });
    s.read("d", c.attack_d);
    s.read("lie_fraction", c.lie_fraction);
    s.read("extra_photons", c.extra_photons);
    s.read_string_as("target",
                     [&](const std::string& v) { c.attack_target = parse_attack_target(v); });
  });
  root.section("sweep", [&](Section& s) { s.read("d_grid", c.d_grid); });
  root.section("holevo", [&](Section& s) {
    s.read("d", c.holevo_d);
    std::vector<double> p;
    s.read("priors", p);
    if (s.find("priors")) {
      check(p.size() == 4, "holevo.priors", "must have exactly 4 entries");
      std::copy(p.begin(), p.end(), c.priors.p.begin());
    }
  });
  root.section("output", [&](Section& s) {
    s.read("transcript", c.transcript_path);
    s.read("csv", c.csv_path);
  });
  root.finish();
  return c;
}

CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<document>", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  CliConfig c = parse_config_text(buf.str());
  c.validate();
  return c;
}

}  // namespace qsdc
