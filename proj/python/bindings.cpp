// Python bindings. Labels cross the boundary as their text form, so pair
// labels read "(x,y)"; matrices are complex numpy arrays.

#include "qop/demo.hpp"
#include "qop/error.hpp"
#include "qop/harness.hpp"
#include "qop/instrument.hpp"
#include "qop/matrix.hpp"
#include "qop/observable.hpp"
#include "qop/serialize.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace qop;

namespace {

Label lab(const std::string& text) { return Label::parse(text); }

LabelList labs(const std::vector<std::string>& texts) {
  LabelList out;
  for (const auto& t : texts) out.push_back(lab(t));
  return out;
}

std::vector<std::string> texts(const LabelList& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.text());
  return out;
}

Observable make_observable(const std::vector<std::pair<std::string, Matrix>>& outcomes) {
  std::vector<Observable::Outcome> list;
  for (const auto& [label, m] : outcomes) list.emplace_back(lab(label), m);
  return Observable(std::move(list));
}

Instrument make_instrument(const std::vector<std::pair<std::string, std::vector<Matrix>>>& outcomes) {
  std::vector<Instrument::Outcome> list;
  for (const auto& [label, kraus] : outcomes) list.emplace_back(lab(label), Operation(kraus));
  return Instrument(std::move(list));
}

OutcomeMap make_map(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::pair<Label, Label>> mapping;
  LabelList target;
  for (const auto& [x, y] : pairs) {
    mapping.emplace_back(lab(x), lab(y));
    const Label t = lab(y);
    if (std::find(target.begin(), target.end(), t) == target.end()) target.push_back(t);
  }
  return OutcomeMap(mapping, std::move(target));
}

std::vector<State> make_states(const std::vector<Matrix>& ms) {
  std::vector<State> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

std::map<std::string, double> dist_dict(const Distribution& p) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < p.size(); ++i) out[p.labels()[i].text()] = p.at(i);
  return out;
}

GeneratorConfig config(std::uint64_t seed, std::size_t dim, std::size_t outcomes, std::size_t kraus,
                       std::size_t trials) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.outcome_count = outcomes;
  cfg.kraus_per_outcome = kraus;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_qop, m) {
  m.doc() = "Combinators for finite observables and instruments";

  py::register_exception<Error>(m, "QopError", PyExc_ValueError);

  // matrix-core
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const Matrix& a, std::size_t n1, std::size_t n2, int traced) {
        if (traced != 1 && traced != 2) throw Error(ErrorCode::DimensionMismatch, "subsystem must be 1 or 2");
        return partial_trace(a, {n1, n2}, traced == 1 ? Subsystem::First : Subsystem::Second);
      },
      py::arg("m"), py::arg("n1"), py::arg("n2"), py::arg("traced"));
  m.def("psd_sqrt", [](const Matrix& a) { return psd_sqrt(a); }, py::arg("m"));
  m.def(
      "hermitian_eig",
      [](const Matrix& a) {
        const HermitianEig e = hermitian_eig(a);
        return py::make_tuple(e.values, e.vectors);
      },
      py::arg("m"));
  m.def("loewner_leq", [](const Matrix& a, const Matrix& b) { return loewner_leq(a, b); }, py::arg("a"),
        py::arg("b"));

  // observables
  py::class_<Observable>(m, "Observable")
      .def(py::init(&make_observable), py::arg("outcomes"))
      .def_property_readonly("dim", &Observable::dim)
      .def_property_readonly("labels", [](const Observable& a) { return texts(a.labels()); })
      .def("effect", [](const Observable& a, const std::string& l) { return a.effect(lab(l)); })
      .def("effects", [](const Observable& a) {
        std::vector<Matrix> out;
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.effect(i));
        return out;
      })
      .def("__len__", &Observable::size)
      .def("to_json", [](const Observable& a) { return to_json(a).dump(); })
      .def_static("from_json", [](const std::string& s) { return observable_from_json(Json::parse(s)); });

  py::class_<Instrument>(m, "Instrument")
      .def(py::init(&make_instrument), py::arg("outcomes"))
      .def_property_readonly("dim", &Instrument::dim)
      .def_property_readonly("labels", [](const Instrument& i) { return texts(i.labels()); })
      .def("kraus", [](const Instrument& i, const std::string& l) { return i.operation(lab(l)).kraus(); })
      .def("apply", [](const Instrument& i, const std::string& l, const Matrix& rho) {
        return i.operation(lab(l))(rho);
      })
      .def("choi", [](const Instrument& i, const std::string& l) { return choi(i.operation(lab(l))); })
      .def("__len__", &Instrument::size)
      .def("to_json", [](const Instrument& i) { return to_json(i).dump(); })
      .def_static("from_json", [](const std::string& s) { return instrument_from_json(Json::parse(s)); });

  m.def("distribution", [](const Observable& a, const Matrix& rho) { return dist_dict(distribution(a, State(rho))); });
  m.def("part", [](const Observable& a, const std::vector<std::pair<std::string, std::string>>& f) {
    return part(a, make_map(f));
  }, py::arg("a"), py::arg("f"));
  m.def(
      "post_process",
      [](const Eigen::MatrixXd& mu, const std::vector<std::string>& cols, const Observable& a) {
        return post_process(TransitionMatrix(a.labels(), labs(cols), mu), a);
      },
      py::arg("mu"), py::arg("cols"), py::arg("a"));
  m.def("gen_convex", [](const std::vector<double>& w, const std::vector<Observable>& obs) {
    return gen_convex(w, obs);
  }, py::arg("weights"), py::arg("observables"));
  m.def("identity_observable", [](const std::vector<std::string>& labels, const std::string& at, std::size_t dim) {
    return identity_observable(labs(labels), lab(at), dim);
  });
  m.def("noisy_observable", [](const Observable& a, double lambda, const std::string& at) {
    return noisy_observable(a, lambda, lab(at));
  });
  m.def("seq_obs", [](const Observable& a, const Observable& b) { return seq_obs(a, b); });
  m.def("conditioned", [](const Observable& b, const Observable& a) { return conditioned(b, a); });
  m.def("tensor_obs", [](const Observable& a, const Observable& b) { return tensor_obs(a, b); });
  m.def(
      "reduce_obs",
      [](const Observable& a, std::size_t n1, std::size_t n2, int keep) {
        if (keep != 1 && keep != 2) throw Error(ErrorCode::DimensionMismatch, "subsystem must be 1 or 2");
        return reduce_obs(a, {n1, n2}, keep == 1 ? Subsystem::First : Subsystem::Second);
      },
      py::arg("a"), py::arg("n1"), py::arg("n2"), py::arg("keep"));
  m.def("observable_distance", &observable_distance);
  m.def("commutes", [](const Observable& a, const Observable& b) { return commutes(a, b); });

  // instruments
  m.def("make_luders", [](const Observable& a) { return make_luders(a); });
  m.def("make_trivial", [](const Observable& a, const Matrix& alpha) { return make_trivial(a, State(alpha)); });
  m.def("make_semitrivial", [](const Observable& a, const std::vector<Matrix>& alpha) {
    return make_semitrivial(a, make_states(alpha));
  });
  m.def("make_kraus", [](const std::vector<std::pair<std::string, Matrix>>& ops) {
    std::vector<std::pair<Label, Matrix>> list;
    for (const auto& [l, s] : ops) list.emplace_back(lab(l), s);
    return make_kraus(list);
  });
  m.def("measured_observable", [](const Instrument& i) { return measured_observable(i); });
  m.def("instrument_distribution",
        [](const Instrument& i, const Matrix& rho) { return dist_dict(instrument_distribution(i, State(rho))); });
  m.def("seq_instrument", [](const Instrument& a, const Instrument& b) { return seq_instrument(a, b); });
  m.def("conditional_instrument",
        [](const Instrument& second, const Instrument& first) { return conditional_instrument(second, first); });
  m.def("part_instrument", [](const Instrument& i, const std::vector<std::pair<std::string, std::string>>& f) {
    return part_instrument(i, make_map(f));
  });
  m.def("gen_convex_instrument", [](const std::vector<double>& w, const std::vector<Instrument>& insts) {
    return gen_convex_instrument(w, insts);
  });
  m.def("instrument_choi_distance", &instrument_choi_distance);
  m.def("classify", [](const Instrument& i) {
    const InstrumentKind k = classify(i);
    py::dict d;
    d["type"] = std::string(to_string(k.type));
    d["kraus"] = k.kraus;
    d["lueders"] = k.lueders;
    d["trivial"] = k.trivial;
    d["semitrivial"] = k.semitrivial;
    d["kraus_deviation"] = k.kraus_deviation;
    d["lueders_deviation"] = k.lueders_deviation;
    d["semitrivial_deviation"] = k.semitrivial_deviation;
    d["trivial_deviation"] = k.trivial_deviation;
    return d;
  });
  m.def("choi_from_kraus", [](const std::vector<Matrix>& kraus) { return choi(Operation(kraus)); });
  m.def("kraus_from_choi", [](const Matrix& c, std::size_t dim) { return Operation::from_choi(c, dim).kraus(); });

  // harness
  m.def("random_observable", [](std::uint64_t seed, std::size_t dim, std::size_t outcomes) {
    return gen_observable(config(seed, dim, outcomes, 1, 1));
  }, py::arg("seed"), py::arg("dim"), py::arg("outcomes"));
  m.def("random_instrument", [](std::uint64_t seed, std::size_t dim, std::size_t outcomes, std::size_t kraus) {
    return gen_instrument(config(seed, dim, outcomes, kraus, 1));
  }, py::arg("seed"), py::arg("dim"), py::arg("outcomes"), py::arg("kraus") = 1);
  m.def("random_state", [](std::uint64_t seed, std::size_t dim) {
    return gen_state(config(seed, dim, 1, 1, 1)).matrix();
  }, py::arg("seed"), py::arg("dim"));
  m.def("list_checks", [] {
    std::vector<std::string> out;
    for (const auto& e : list_checks()) out.push_back(e.id);
    return out;
  });
  m.def("list_searches", [] {
    std::vector<std::string> out;
    for (const auto& e : list_searches()) out.push_back(e.id);
    return out;
  });
  m.def(
      "run_check",
      [](const std::string& id, std::size_t dim, std::size_t outcomes, std::size_t kraus, std::size_t trials,
         std::uint64_t seed, double tol) {
        return to_json(run_check(id, config(seed, dim, outcomes, kraus, trials), tol), false).dump();
      },
      py::arg("check_id"), py::arg("dim") = 2, py::arg("outcomes") = 2, py::arg("kraus") = 1,
      py::arg("trials") = 100, py::arg("seed") = 42, py::arg("tol") = 1e-9);
  m.def(
      "run_search",
      [](const std::string& id, std::size_t dim, std::size_t outcomes, std::size_t trials, std::uint64_t seed,
         double threshold) {
        return to_json(run_search(id, config(seed, dim, outcomes, 1, trials), threshold), false).dump();
      },
      py::arg("search_id"), py::arg("dim") = 2, py::arg("outcomes") = 2, py::arg("trials") = 1000,
      py::arg("seed") = 42, py::arg("threshold") = 1e-6);
  m.def("replay_witness", [](const std::string& id, const std::string& witness) {
    return replay_witness(id, Json::parse(witness));
  });
  m.def("run_demo", [](std::uint64_t seed) {
    const DemoResult r = run_demo(seed);
    return py::make_tuple(r.all_passed(), r.text);
  }, py::arg("seed") = 42);
}
