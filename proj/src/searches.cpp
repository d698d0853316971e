#include "registry.hpp"

#include <algorithm>
#include <cmath>

namespace qop::detail {

namespace {

Json observables_to_json(std::span<const Observable> list) {
  Json out = Json::array();
  for (const auto& a : list) out.push_back(to_json(a));
  return out;
}

std::vector<Observable> observables_from_json(const Json& j) {
  std::vector<Observable> out;
  for (const auto& e : j) out.push_back(observable_from_json(e));
  return out;
}

Json states_to_json(std::span<const State> list) {
  Json out = Json::array();
  for (const auto& s : list) out.push_back(to_json(s));
  return out;
}

std::vector<State> states_from_json(const Json& j) {
  std::vector<State> out;
  for (const auto& e : j) out.push_back(state_from_json(e));
  return out;
}

double hat_gap(const Instrument& i, const Instrument& j) {
  return observable_distance(measured_observable(seq_instrument(i, j)),
                             seq_obs(measured_observable(i), measured_observable(j)));
}

// Source size for the merging searches; at least three outcomes so that some
// target collects two of them.
std::size_t merge_source(const GeneratorConfig& cfg) { return std::max<std::size_t>(3, cfg.outcome_count); }

// ---------------------------------------------------------------------------

Json sample_reduce(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = cfg.dim * 2;
  const LabelList xs = numbered_labels(cfg.outcome_count, "x");
  const LabelList ys = numbered_labels(cfg.outcome_count, "y");
  return {{"dims", {cfg.dim, 2}}, {"A", to_json(g.observable(n, xs))}, {"B", to_json(g.observable(n, ys))}};
}

double eval_reduce(const Json& j) {
  const SplitDims dims{j.at("dims").at(0).get<std::size_t>(), j.at("dims").at(1).get<std::size_t>()};
  const Observable a = observable_from_json(j.at("A"));
  const Observable b = observable_from_json(j.at("B"));
  return observable_distance(reduce_obs(seq_obs(a, b), dims, Subsystem::First),
                             seq_obs(reduce_obs(a, dims, Subsystem::First), reduce_obs(b, dims, Subsystem::First)));
}

Json sample_convex_seq(Generator& g, const GeneratorConfig& cfg) {
  // Shared outcome space: overlap is what breaks the identity.
  const LabelList ys = numbered_labels(cfg.outcome_count, "y");
  const std::vector<Observable> family{g.observable(cfg.dim, ys), g.observable(cfg.dim, ys)};
  const Observable a = g.observable(cfg.dim, numbered_labels(cfg.outcome_count, "x"));
  return {{"weights", g.weights(2)}, {"B", observables_to_json(family)}, {"A", to_json(a)}};
}

double eval_convex_seq(const Json& j) {
  const auto w = j.at("weights").get<std::vector<double>>();
  const auto family = observables_from_json(j.at("B"));
  const Observable a = observable_from_json(j.at("A"));
  std::vector<Observable> terms;
  for (const auto& b : family) terms.push_back(seq_obs(b, a));
  return observable_distance(seq_obs(gen_convex(w, family), a), gen_convex(w, terms));
}

Json sample_hat_kraus(Generator& g, const GeneratorConfig& cfg) {
  return {{"I", to_json(g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "x"), 1))},
          {"J", to_json(g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "y"), 1))}};
}

double eval_hat_kraus(const Json& j) {
  return hat_gap(instrument_from_json(j.at("I")), instrument_from_json(j.at("J")));
}

Json sample_hat_trivial(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = g.observable(cfg.dim, numbered_labels(cfg.outcome_count, "x"));
  const Observable b = g.observable(cfg.dim, numbered_labels(cfg.outcome_count, "y"));
  const State alpha = g.state(cfg.dim);
  const State beta = g.state(cfg.dim);
  return {{"A", to_json(a)}, {"alpha", to_json(alpha)}, {"B", to_json(b)}, {"beta", to_json(beta)}};
}

double eval_hat_trivial(const Json& j) {
  return hat_gap(make_trivial(observable_from_json(j.at("A")), state_from_json(j.at("alpha"))),
                 make_trivial(observable_from_json(j.at("B")), state_from_json(j.at("beta"))));
}

Json sample_part_luders(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t m = merge_source(cfg);
  const Observable a = g.observable(cfg.dim, numbered_labels(m, "x"));
  return {{"A", to_json(a)}, {"f", to_json(g.surjection(a.labels(), m - 1))}};
}

double eval_part_luders(const Json& j) {
  const Instrument inst =
      part_instrument(make_luders(observable_from_json(j.at("A"))), outcome_map_from_json(j.at("f")));
  return classify(inst).lueders_deviation;
}

Json sample_part_semitrivial(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t m = merge_source(cfg);
  const Observable a = g.observable(cfg.dim, numbered_labels(m, "x"));
  return {{"A", to_json(a)},
          {"alpha", states_to_json(g.states(cfg.dim, m))},
          {"f", to_json(g.surjection(a.labels(), m - 1))}};
}

double eval_part_semitrivial(const Json& j) {
  const Instrument inst = make_semitrivial(observable_from_json(j.at("A")), states_from_json(j.at("alpha")));
  return classify(part_instrument(inst, outcome_map_from_json(j.at("f")))).semitrivial_deviation;
}

// Joint measurability as literally defined: the product of the two
// distributions always has the right marginals, so this never finds a gap.
Json sample_l21_converse(Generator& g, const GeneratorConfig& cfg) {
  return {{"A", to_json(g.observable(cfg.dim, numbered_labels(cfg.outcome_count, "x")))},
          {"B", to_json(g.observable(cfg.dim, numbered_labels(cfg.outcome_count, "y")))},
          {"rho", to_json(g.state(cfg.dim))}};
}

double eval_l21_converse(const Json& j) {
  const Observable a = observable_from_json(j.at("A"));
  const Observable b = observable_from_json(j.at("B"));
  const State rho = state_from_json(j.at("rho"));
  const Distribution pa = distribution(a, rho);
  const Distribution pb = distribution(b, rho);
  std::vector<double> ma(a.size(), 0.0);
  std::vector<double> mb(b.size(), 0.0);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const double p = pa.at(x) * pb.at(y);
      ma[x] += p;
      mb[y] += p;
    }
  return std::max(max_abs_diff(ma, pa.values()), max_abs_diff(mb, pb.values()));
}

// Bell-basis measurement on two qubits against a random observable. Both
// reductions of the Bell measurement are multiples of the identity, so the
// reduced pair always coexists; a nonzero commutator only flags a candidate.
Json sample_t27_converse(Generator& g, const GeneratorConfig& cfg) {
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector4cd bell[] = {
      Eigen::Vector4cd(s, 0, 0, s), Eigen::Vector4cd(s, 0, 0, -s),
      Eigen::Vector4cd(0, s, s, 0), Eigen::Vector4cd(0, s, -s, 0)};
  std::vector<Observable::Outcome> outcomes;
  for (int k = 0; k < 4; ++k) {
    outcomes.emplace_back(Label("e" + std::to_string(k)), Matrix(bell[k] * bell[k].adjoint()));
  }
  const Observable a(std::move(outcomes));
  const Observable b = g.observable(4, numbered_labels(cfg.outcome_count, "y"));
  return {{"dims", {2, 2}}, {"A", to_json(a)}, {"B", to_json(b)}};
}

double eval_t27_converse(const Json& j) {
  const Observable a = observable_from_json(j.at("A"));
  const Observable b = observable_from_json(j.at("B"));
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      worst = std::max(worst, (a.effect(x) * b.effect(y) - b.effect(y) * a.effect(x)).norm());
  return worst;
}

const SearchDef kSearches[] = {
    {"N-reduce", "(A o B)^1 differs from A^1 o B^1", false, sample_reduce, eval_reduce},
    {"N-convex-seq", "(V l_i B^i) o A differs from V l_i (B^i o A)", false, sample_convex_seq, eval_convex_seq},
    {"N-hat-seq-kraus", "(I o J)^ differs from I^ o J^ for Kraus instruments", false, sample_hat_kraus,
     eval_hat_kraus},
    {"N-hat-seq-trivial", "(I o J)^ differs from I^ o J^ for trivial instruments", false, sample_hat_trivial,
     eval_hat_trivial},
    {"N-part-luders", "f(L^A) is not a Lueders instrument", false, sample_part_luders, eval_part_luders},
    {"N-part-semitrivial", "a part of a semitrivial instrument need not be semitrivial", false,
     sample_part_semitrivial, eval_part_semitrivial},
    {"Q-L2.1-converse", "joint measurability without coexistence (open)", true, sample_l21_converse,
     eval_l21_converse},
    {"Q-T2.7-converse", "reduced coexistence without coexistence (open)", true, sample_t27_converse,
     eval_t27_converse},
};

}  // namespace

std::span<const SearchDef> search_table() { return kSearches; }

}  // namespace qop::detail
