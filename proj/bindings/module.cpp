#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nql/bell.hpp"
#include "nql/happy.hpp"
#include "nql/harness.hpp"
#include "nql/ident.hpp"
#include "nql/lemmas.hpp"
#include "nql/noise.hpp"
#include "nql/pauli.hpp"
#include "nql/purity.hpp"
#include "nql/shadows.hpp"
#include "nql/simon.hpp"

namespace py = pybind11;
using namespace nql;

namespace {

BellHypothesis hypothesis_from(const std::optional<std::string>& pauli) {
  if (!pauli) return std::nullopt;
  return PauliString::from_str(*pauli);
}

py::dict report_to_dict(const LemmaReport& r) {
  py::dict d;
  d["lemma_id"] = r.lemma_id;
  d["n"] = r.n;
  d["lambda"] = r.lambda;
  d["observed"] = r.observed;
  d["bound_or_target"] = r.bound_or_target;
  d["kind"] = r.kind == LemmaKind::kEquality ? "equality" : "upper-bound";
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_nql, m) {
  m.doc() = "noisy quantum learning simulations (C++ core)";

  py::register_exception<capacity_error>(m, "CapacityError");
  py::register_exception<numerical_error>(m, "NumericalError");

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::from_str), py::arg("text"))
      .def_readonly("n", &PauliString::n)
      .def_readonly("x_bits", &PauliString::x)
      .def_readonly("z_bits", &PauliString::z)
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; })
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; })
      .def("weight", [](const PauliString& p) { return weight(p); })
      .def("phase_form", [](const PauliString& p) { return phase_form(p); })
      .def("symplectic_product",
           [](const PauliString& p, const PauliString& q) { return symplectic_product(p, q); })
      .def("__mul__",
           [](const PauliString& p, const PauliString& q) { return multiply(p, q); });

  m.def("random_pauli", [](int n, bool include_identity, uint64_t seed) {
    Rng rng(seed);
    return random_pauli(n, include_identity, rng);
  });
  m.def("enumerate_group", &enumerate_group, py::arg("n"), py::arg("include_identity"));

  m.def("f_lambda", &f_lambda);
  m.def("pauli_damping",
        [](const std::string& p, double lambda) {
          return pauli_damping(PauliString::from_str(p), lambda);
        });

  m.def("bell_prob", [](const std::optional<std::string>& pauli, int n, double lambda,
                        uint64_t sx, uint64_t sz) {
    return bell_outcome_prob(n, hypothesis_from(pauli), lambda, BellSample{n, sx, sz});
  });
  m.def("sample_bell_hex",
        [](const std::optional<std::string>& pauli, int n, double lambda, size_t count,
           uint64_t seed) {
          Rng rng(seed);
          const auto hyp = hypothesis_from(pauli);
          std::vector<std::string> out;
          out.reserve(count);
          for (size_t i = 0; i < count; ++i) out.push_back(sample_bell(n, hyp, lambda, rng).hex());
          return out;
        });

  m.def("required_samples", &required_samples, py::arg("n"), py::arg("lambda"), py::arg("C"));
  m.def("identify_pauli_trial",
        [](int n, double lambda, uint64_t samples, bool h1, uint64_t seed) {
          Rng rng(seed);
          BellHypothesis hyp;
          if (h1) hyp = random_pauli(n, false, rng);
          const auto res = identify_pauli(
              [&]() { return sample_bell(n, hyp, lambda, rng); }, n, lambda, samples);
          py::dict d;
          d["truth"] = h1 ? py::cast(hyp->str()) : py::cast(nullptr);
          d["decision_h1"] = res.h1;
          d["argmax"] = res.argmax ? py::cast(res.argmax->str()) : py::cast(nullptr);
          d["z_max"] = res.z_max;
          d["threshold"] = res.threshold;
          return d;
        });

  m.def("median_of_means", [](const std::vector<double>& values, size_t batches) {
    return median_of_means(values, batches);
  });
  m.def("shadow_weight", [](const std::string& p, double lambda) {
    return shadow_weight(PauliString::from_str(p), lambda);
  });
  m.def("shadow_estimate_trial",
        [](const std::string& pauli, double lambda, size_t count, size_t batches,
           uint64_t seed) {
          Rng rng(seed);
          const PauliString p = PauliString::from_str(pauli);
          const auto snaps = collect_shadows(p, lambda, count, rng);
          return estimate_observable(snaps, p, lambda, batches).value;
        });

  m.def("purity_trial", [](int n, double lambda, int tests, uint64_t seed) {
    Rng rng(seed);
    const auto t = purity_test_trial(n, lambda, tests, rng);
    py::dict d;
    d["truth_pure"] = t.truth_pure;
    d["decided_pure"] = t.decided_pure;
    d["accepts"] = t.accepts;
    d["tests"] = t.tests;
    d["accept_prob"] = t.accept_prob;
    return d;
  });

  m.def("check_depol_swap", [](int n, double lambda, bool product, int trials, uint64_t seed) {
    Rng rng(seed);
    return report_to_dict(check_depol_swap(
        n, lambda, product ? StateFamily::kProduct : StateFamily::kHaar, trials, rng));
  });
  m.def("check_depol_swap2", [](int n, double lambda, int trials, uint64_t seed) {
    Rng rng(seed);
    return report_to_dict(check_depol_swap2(n, lambda, trials, rng));
  });
  m.def("check_purity_trace_identity", [](int n, double lambda) {
    return report_to_dict(check_purity_trace_identity(n, lambda));
  });
  m.def("check_node_concentration", [](int n, double lambda, int trials, uint64_t seed) {
    Rng rng(seed);
    return report_to_dict(check_node_concentration(n, lambda, PovmFamily::kHaarBasis,
                                                   trials, rng));
  });

  m.def("bulk_leg_count", &bulk_leg_count);
  m.def("tile_census", [](int R) {
    const auto t = build_tiling(R);
    std::vector<std::pair<int64_t, int64_t>> census;
    for (int k = 1; k <= R; ++k) {
      census.emplace_back(t.one_parent_count[static_cast<size_t>(k)],
                          t.two_parent_count[static_cast<size_t>(k)]);
    }
    return census;
  });
  m.def("decode_failure_bound", &decode_failure_bound);
  m.def("black_hole_experiment",
        [](int R, int r, double rate, int64_t trials, int swap_reps, uint64_t seed) {
          const auto tiling = build_tiling(R);
          const auto rep = black_hole_experiment(tiling, r, rate, trials, swap_reps, seed);
          py::dict d;
          d["R"] = rep.R;
          d["r"] = rep.r;
          d["rate"] = rep.erasure_rate;
          d["trials"] = rep.trials;
          d["decode_fail_rate"] = rep.decode_fail_rate;
          d["bound"] = rep.bound;
          d["success_rate"] = rep.success_rate;
          return d;
        });

  m.def("simon_recovery_trial", [](int n, double lambda, int queries, uint64_t seed) {
    Rng rng(seed);
    const auto oracle = make_simon_instance(n, true, rng);
    const auto run = run_noisy_simon(oracle, lambda, queries, rng);
    py::dict d;
    d["secret"] = *oracle.secret;
    d["recovered"] = run.recovered ? py::cast(*run.recovered) : py::cast(nullptr);
    d["rank"] = run.rank;
    return d;
  });
  m.def("oracle_identity_tv", [](int n, double lambda, int depth, uint64_t seed) {
    Rng rng(seed);
    const auto oracle = make_simon_instance(n, true, rng);
    return oracle_identity_tv(oracle, lambda, depth);
  });

  m.def("child_seed", &child_seed);
}
