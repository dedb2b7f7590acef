#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsdc/bell.hpp"
#include "qsdc/config.hpp"
#include "qsdc/transcript_io.hpp"

namespace py = pybind11;
using namespace qsdc;

namespace {

std::string run_bidirectional_json(const CliConfig& c) {
  c.validate();
  return to_json(run_session(c.session_config(), c.message()));
}

std::string run_swapping_json(const CliConfig& c) {
  c.validate();
  return to_json(run_swap_session(c.swap_config(), c.message()));
}

double trojan_frequency(int extra_photons, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  RandomStream rand("trojan-check", seed);
  std::size_t both = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    if (trojan_beam_splitter_check(extra_photons, rand).both_clicked()) ++both;
  }
  return static_cast<double>(both) / static_cast<double>(trials);
}

}  // namespace

PYBIND11_MODULE(_qsdc, m) {
  m.doc() = "EPR-pair QSDC simulator core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CapacityMismatch>(m, "CapacityMismatch", PyExc_ValueError);

  py::enum_<PauliOp>(m, "PauliOp")
      .value("U0", PauliOp::U0)
      .value("U1", PauliOp::U1)
      .value("U2", PauliOp::U2)
      .value("U3", PauliOp::U3);

  py::enum_<BellIndex>(m, "BellIndex")
      .value("PSI_MINUS", BellIndex::PsiMinus)
      .value("PSI_PLUS", BellIndex::PsiPlus)
      .value("PHI_MINUS", BellIndex::PhiMinus)
      .value("PHI_PLUS", BellIndex::PhiPlus);

  py::enum_<Side>(m, "Side").value("B", Side::B).value("C", Side::C);

  m.def("code", [](PauliOp op) { return static_cast<int>(bits(op)); });
  m.def("bell_code", [](BellIndex b) { return static_cast<int>(bits(b)); });
  m.def("pauli_matrix", &pauli_matrix);
  m.def("bell_vector", &bell_vector);
  m.def("pauli_on_bell", &pauli_on_bell, py::arg("state"), py::arg("op"), py::arg("side") = Side::B);
  m.def("pauli_compose", &pauli_compose);
  m.def("decode_pauli", &decode_pauli, py::arg("published"), py::arg("own"));
  m.def("decode_swap", &decode_swap, py::arg("bob_outcome"), py::arg("carol_outcome"));
  m.def("swap_expand", [](BellIndex first, BellIndex second) {
    py::list out;
    for (const auto& t : swap_expand(first, second)) {
      out.append(py::make_tuple(t.bob_result, t.carol_result, t.probability, t.sign));
    }
    return out;
  });

  m.def("eigvalsh", [](const Operator& mat) { return hermitian_eigen(mat).values; });
  m.def("von_neumann_entropy", py::overload_cast<const Operator&>(&von_neumann_entropy));

  m.def("i0_closed_form", &i0_closed_form, py::arg("d"));
  py::class_<LeakageReport>(m, "LeakageReport")
      .def_readonly("d", &LeakageReport::d)
      .def_readonly("i0_closed", &LeakageReport::i0_closed)
      .def_readonly("i0_numeric", &LeakageReport::i0_numeric)
      .def_readonly("twice_i0", &LeakageReport::twice_i0)
      .def_readonly("s_mix", &LeakageReport::s_mix)
      .def_readonly("s_branches", &LeakageReport::s_branches);
  m.def(
      "holevo_numeric",
      [](double d, std::array<double, 4> priors) {
        PriorVector p;
        p.p = priors;
        return holevo_numeric(d, p);
      },
      py::arg("d"), py::arg("priors") = PriorVector::uniform().p);

  m.def(
      "sweep_csv",
      [](const std::vector<double>& grid, std::size_t trials, std::uint64_t seed,
         unsigned threads) {
        py::gil_scoped_release release;
        return sweep_csv(attack_sweep(grid, trials, seed, threads));
      },
      py::arg("d_grid"), py::arg("trials"), py::arg("seed") = 0, py::arg("threads") = 0);

  m.def("both_click_probability", &both_click_probability, py::arg("photons"));
  m.def("trojan_frequency", &trojan_frequency, py::arg("extra_photons"), py::arg("trials"),
        py::arg("seed") = 0);

  py::class_<CliConfig>(m, "Config")
      .def(py::init<>())
      .def_readwrite("seed", &CliConfig::seed)
      .def_readwrite("message_hex", &CliConfig::message_hex)
      .def_readwrite("pairs", &CliConfig::pairs)
      .def_readwrite("sample_fraction", &CliConfig::sample_fraction)
      .def_readwrite("decoys", &CliConfig::decoys)
      .def_readwrite("error_threshold", &CliConfig::error_threshold)
      .def_readwrite("loss_prob", &CliConfig::loss_prob)
      .def_readwrite("groups", &CliConfig::groups)
      .def_readwrite("purification_yield", &CliConfig::purification_yield)
      .def_readwrite("attack", &CliConfig::attack)
      .def_readwrite("attack_d", &CliConfig::attack_d)
      .def_readwrite("lie_fraction", &CliConfig::lie_fraction)
      .def_readwrite("extra_photons", &CliConfig::extra_photons)
      .def_property(
          "basis_policy", [](const CliConfig& c) { return std::string(to_string(c.basis_policy)); },
          [](CliConfig& c, const std::string& v) { c.basis_policy = parse_basis_policy(v); })
      .def_property(
          "attack_target", [](const CliConfig& c) { return std::string(to_string(c.attack_target)); },
          [](CliConfig& c, const std::string& v) { c.attack_target = parse_attack_target(v); });

  m.def("parse_config", &parse_config_text, py::arg("text"));
  m.def("run_bidirectional_json", &run_bidirectional_json, py::arg("config"));
  m.def("run_swapping_json", &run_swapping_json, py::arg("config"));
}
