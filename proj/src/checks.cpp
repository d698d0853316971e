#include "registry.hpp"

#include "qop/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qop::detail {

namespace {

constexpr std::size_t kProbes = 10;
constexpr double kInf = std::numeric_limits<double>::infinity();

double frob(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

double tr_prod(const Matrix& a, const Matrix& b) { return (a * b).trace().real(); }

SplitDims qubit_split(const GeneratorConfig& cfg) { return {cfg.dim, 2}; }

Observable draw(Generator& g, std::size_t dim, std::size_t count, std::string_view prefix) {
  return g.observable(dim, numbered_labels(count, prefix));
}

std::vector<Observable> draw_family(Generator& g, std::size_t dim, const std::vector<LabelList>& sets) {
  std::vector<Observable> out;
  for (const auto& s : sets) out.push_back(g.observable(dim, s));
  return out;
}

std::vector<Instrument> draw_instruments(Generator& g, std::size_t dim, const std::vector<LabelList>& sets,
                                         std::size_t kraus) {
  std::vector<Instrument> out;
  for (const auto& s : sets) out.push_back(g.instrument(dim, s, kraus));
  return out;
}

// Target size for a merging surjection out of `n` labels.
std::size_t merged(std::size_t n) { return std::max<std::size_t>(1, n - 1); }

std::vector<State> probes(Generator& g, std::size_t dim) { return g.states(dim, kProbes); }

// ---------------------------------------------------------------------------
// Lemmas 2.1, 2.2

double l21_i(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count + 1, "x");
  const OutcomeMap f = g.surjection(a.labels(), cfg.outcome_count);
  const State rho = g.state(cfg.dim);
  const Distribution lhs = distribution(part(a, f), rho);
  const Distribution pa = distribution(a, rho);
  double worst = 0.0;
  for (const auto& y : f.target()) {
    double rhs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (f(a.labels()[i]) == y) rhs += pa.at(i);
    worst = std::max(worst, std::abs(lhs(y) - rhs));
  }
  return worst;
}

double l21_ii(Generator& g, const GeneratorConfig& cfg) {
  const Observable c = draw(g, cfg.dim, cfg.outcome_count + 2, "z");
  const OutcomeMap f = g.surjection(c.labels(), cfg.outcome_count, "a");
  const OutcomeMap h = g.surjection(c.labels(), 2, "b");
  const State rho = g.state(cfg.dim);
  const CoexistenceWitness w = CoexistenceWitness::from_joint(c, f, h);
  const Distribution mu = joint_distribution_product(w, rho);
  const Distribution pa = distribution(w.a(), rho);
  const Distribution pb = distribution(w.b(), rho);
  double worst = 0.0;
  for (const auto& x : w.a().labels()) {
    double s = 0.0;
    for (const auto& y : w.b().labels()) s += mu(Label::pair(x, y));
    worst = std::max(worst, std::abs(s - pa(x)));
  }
  for (const auto& y : w.b().labels()) {
    double s = 0.0;
    for (const auto& x : w.a().labels()) s += mu(Label::pair(x, y));
    worst = std::max(worst, std::abs(s - pb(y)));
  }
  return worst;
}

double l22_i(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const TransitionMatrix mu = g.transition(a.labels(), numbered_labels(cfg.outcome_count + 1, "y"));
  const State rho = g.state(cfg.dim);
  return distribution_distance(distribution(post_process(mu, a), rho),
                               post_process_distribution(mu, distribution(a, rho)));
}

double l22_ii(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, cfg.dim, cfg.outcome_count + 1, "y");
  const std::vector<State> alpha = g.states(cfg.dim, a.size());
  const State rho = g.state(cfg.dim);
  const Distribution lhs = distribution(post_process_relative(alpha, b, a), rho);
  double worst = 0.0;
  for (std::size_t y = 0; y < b.size(); ++y) {
    double rhs = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      rhs += tr_prod(alpha[x].matrix(), b.effect(y)) * tr_prod(rho.matrix(), a.effect(x));
    }
    worst = std::max(worst, std::abs(lhs(b.labels()[y]) - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Parts and convex combinations

double t23_i(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const auto sets = overlapping_label_sets(g, n, cfg.outcome_count, "x");
  const auto family = draw_family(g, cfg.dim, sets);
  const auto w = g.weights(n);
  const Observable mix = gen_convex(w, family);
  const OutcomeMap f = g.surjection(mix.labels(), merged(mix.size()));
  const Observable lhs = part(mix, f);
  double worst = 0.0;
  for (const auto& y : f.target()) {
    Matrix rhs = Matrix::Zero(lhs.effect(0).rows(), lhs.effect(0).cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t x = 0; x < family[i].size(); ++x)
        if (f(family[i].labels()[x]) == y) rhs += w[i] * family[i].effect(x);
    worst = std::max(worst, frob(lhs.effect(y), rhs));
  }
  return worst;
}

double t23_ii(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const LabelList labels = numbered_labels(cfg.outcome_count + 1, "x");
  const auto family = draw_family(g, cfg.dim, std::vector<LabelList>(n, labels));
  const auto w = g.weights(n);
  const OutcomeMap f = g.surjection(labels, cfg.outcome_count);
  std::vector<Observable> parts;
  for (const auto& a : family) parts.push_back(part(a, f));
  return observable_distance(part(gen_convex(w, family), f), gen_convex(w, parts));
}

double t23_iii(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const auto sets = disjoint_label_sets(n, cfg.outcome_count, "u");
  const auto family = draw_family(g, cfg.dim, sets);
  const auto w = g.weights(n);
  const Observable un = gen_convex(w, family);
  const OutcomeMap f = g.surjection(un.labels(), merged(un.size()));
  std::vector<Observable> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(part(family[i], f.restrict_to(sets[i])));
  return observable_distance(part(un, f), gen_convex(w, parts));
}

double t23_dist(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const LabelList labels = numbered_labels(cfg.outcome_count, "x");
  const auto family = draw_family(g, cfg.dim, std::vector<LabelList>(n, labels));
  const auto w = g.weights(n);
  const TransitionMatrix mu = g.transition(labels, numbered_labels(cfg.outcome_count + 1, "y"));
  std::vector<Observable> processed;
  for (const auto& a : family) processed.push_back(post_process(mu, a));
  return observable_distance(post_process(mu, gen_convex(w, family)), gen_convex(w, processed));
}

double t24(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const auto sets = disjoint_label_sets(n, cfg.outcome_count, "u");
  const auto family = draw_family(g, cfg.dim, sets);
  const auto w = g.weights(n);
  LabelList anchors;
  for (const auto& s : sets) anchors.push_back(s[g.index(s.size())]);
  const AlmostCoexistence ac = almost_coexist(w, family, anchors);
  const Matrix id = identity(cfg.dim);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Observable lhs = part(ac.joint, ac.maps[j]);
    if (lhs.size() != family[j].size()) return kInf;
    for (std::size_t x = 0; x < family[j].size(); ++x) {
      const Label& label = family[j].labels()[x];
      Matrix rhs = w[j] * family[j].effect(x);
      if (label == anchors[j]) rhs += (1.0 - w[j]) * id;
      worst = std::max(worst, frob(lhs.effect(label), rhs));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Sequential products and conditioning

double t25_i(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const std::size_t n = family_size(g);
  const auto family = draw_family(g, cfg.dim, overlapping_label_sets(g, n, cfg.outcome_count, "y"));
  const auto w = g.weights(n);
  std::vector<Observable> rhs;
  for (const auto& b : family) rhs.push_back(seq_obs(a, b));
  return observable_distance(seq_obs(a, gen_convex(w, family)), gen_convex(w, rhs));
}

double t25_ii(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const std::size_t n = family_size(g);
  const auto family = draw_family(g, cfg.dim, overlapping_label_sets(g, n, cfg.outcome_count, "y"));
  const auto w = g.weights(n);
  std::vector<Observable> rhs;
  for (const auto& b : family) rhs.push_back(conditioned(b, a));
  return observable_distance(conditioned(gen_convex(w, family), a), gen_convex(w, rhs));
}

// ---------------------------------------------------------------------------
// Tensor products (second factor is a qubit)

double t26_i(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, 2, cfg.outcome_count, "u");
  const TransitionMatrix mu = g.transition(a.labels(), numbered_labels(cfg.outcome_count + 1, "y"));
  const TransitionMatrix nu = g.transition(b.labels(), numbered_labels(2, "v"));
  return observable_distance(tensor_obs(post_process(mu, a), post_process(nu, b)),
                             post_process(tensor_transition(mu, nu), tensor_obs(a, b)));
}

double t26_ii(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count + 1, "x");
  const Observable b = draw(g, 2, cfg.outcome_count + 1, "u");
  const OutcomeMap f = g.surjection(a.labels(), cfg.outcome_count, "y");
  const OutcomeMap h = g.surjection(b.labels(), merged(cfg.outcome_count), "v");
  return observable_distance(tensor_obs(part(a, f), part(b, h)),
                             part(tensor_obs(a, b), product_outcome_map(f, h)));
}

double t26_iii(Generator& g, const GeneratorConfig& cfg, bool convex_first) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const std::size_t n = family_size(g);
  const auto family = draw_family(g, 2, overlapping_label_sets(g, n, cfg.outcome_count, "y"));
  const auto w = g.weights(n);
  std::vector<Observable> rhs;
  for (const auto& b : family) rhs.push_back(convex_first ? tensor_obs(b, a) : tensor_obs(a, b));
  const Observable mix = gen_convex(w, family);
  return observable_distance(convex_first ? tensor_obs(mix, a) : tensor_obs(a, mix), gen_convex(w, rhs));
}

double t26_iii_a(Generator& g, const GeneratorConfig& cfg) { return t26_iii(g, cfg, false); }
double t26_iii_b(Generator& g, const GeneratorConfig& cfg) { return t26_iii(g, cfg, true); }

double t26_iv(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable c = draw(g, cfg.dim, cfg.outcome_count, "u");
  const Observable b = draw(g, 2, cfg.outcome_count, "y");
  const Observable d = draw(g, 2, cfg.outcome_count, "v");
  const Observable lhs = seq_obs(tensor_obs(a, b), tensor_obs(c, d));
  const Observable rhs = tensor_obs(seq_obs(a, c), seq_obs(b, d));
  if (lhs.size() != rhs.size()) return kInf;
  double worst = 0.0;
  for (const auto& x : a.labels())
    for (const auto& y : b.labels())
      for (const auto& u : c.labels())
        for (const auto& v : d.labels()) {
          const Matrix& l = lhs.effect(Label::pair(Label::pair(x, y), Label::pair(u, v)));
          const Matrix& r = rhs.effect(Label::pair(Label::pair(x, u), Label::pair(y, v)));
          worst = std::max(worst, frob(l, r));
        }
  return worst;
}

// ---------------------------------------------------------------------------
// Reduced observables

Matrix reduced_effect(const Matrix& m, SplitDims dims, Subsystem keep) {
  const Subsystem traced = keep == Subsystem::First ? Subsystem::Second : Subsystem::First;
  const double n = static_cast<double>(keep == Subsystem::First ? dims.second : dims.first);
  return partial_trace(m, dims, traced) / n;
}

double r2_norm(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const Observable a = draw(g, dims.first * dims.second, cfg.outcome_count, "x");
  double worst = 0.0;
  for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
    const Observable r = reduce_obs(a, dims, keep);
    const std::size_t n = keep == Subsystem::First ? dims.first : dims.second;
    Matrix total = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < a.size(); ++x) {
      const Matrix e = reduced_effect(a.effect(x), dims, keep);
      worst = std::max(worst, frob(r.effect(x), e));
      total += e;
    }
    worst = std::max(worst, frob(total, identity(n)));
  }
  return worst;
}

double r2_product(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const Observable a = draw(g, dims.first, cfg.outcome_count, "x");
  const Observable b = draw(g, dims.second, cfg.outcome_count + 1, "y");
  const Observable ab = tensor_obs(a, b);
  const Observable r1 = reduce_obs(ab, dims, Subsystem::First);
  const Observable r2 = reduce_obs(ab, dims, Subsystem::Second);
  const double n1 = static_cast<double>(dims.first);
  const double n2 = static_cast<double>(dims.second);
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    Matrix marginal = Matrix::Zero(a.effect(x).rows(), a.effect(x).cols());
    for (std::size_t y = 0; y < b.size(); ++y) {
      const Label xy = Label::pair(a.labels()[x], b.labels()[y]);
      worst = std::max(worst, frob(r1.effect(xy), b.effect(y).trace().real() / n2 * a.effect(x)));
      worst = std::max(worst, frob(r2.effect(xy), a.effect(x).trace().real() / n1 * b.effect(y)));
      marginal += r1.effect(xy);
    }
    worst = std::max(worst, frob(marginal, a.effect(x)));
  }
  return worst;
}

double t27_i(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const Observable a = draw(g, dims.first * dims.second, cfg.outcome_count + 1, "x");
  const OutcomeMap f = g.surjection(a.labels(), cfg.outcome_count);
  double worst = 0.0;
  for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
    worst = std::max(worst, observable_distance(reduce_obs(part(a, f), dims, keep),
                                                part(reduce_obs(a, dims, keep), f)));
  }
  return worst;
}

double t27_ii(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const Observable c = draw(g, dims.first * dims.second, cfg.outcome_count + 2, "z");
  const OutcomeMap f = g.surjection(c.labels(), cfg.outcome_count, "a");
  const OutcomeMap h = g.surjection(c.labels(), 2, "b");
  const Observable a = part(c, f);
  const Observable b = part(c, h);
  double worst = 0.0;
  for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
    const Observable rc = reduce_obs(c, dims, keep);
    const Observable ra = reduce_obs(a, dims, keep);
    const Observable rb = reduce_obs(b, dims, keep);
    worst = std::max({worst, observable_distance(part(rc, f), ra), observable_distance(part(rc, h), rb)});
    // Throws if the reduced triple fails to certify coexistence.
    CoexistenceWitness(rc, f, h, ra, rb);
  }
  return worst;
}

double t27_iii(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const Observable a = draw(g, dims.first * dims.second, cfg.outcome_count, "x");
  const TransitionMatrix mu = g.transition(a.labels(), numbered_labels(cfg.outcome_count + 1, "y"));
  double worst = 0.0;
  for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
    worst = std::max(worst, observable_distance(reduce_obs(post_process(mu, a), dims, keep),
                                                post_process(mu, reduce_obs(a, dims, keep))));
  }
  return worst;
}

double t27_iv(Generator& g, const GeneratorConfig& cfg) {
  const SplitDims dims = qubit_split(cfg);
  const std::size_t n = family_size(g);
  const auto family =
      draw_family(g, dims.first * dims.second, overlapping_label_sets(g, n, cfg.outcome_count, "x"));
  const auto w = g.weights(n);
  double worst = 0.0;
  for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
    std::vector<Observable> reduced;
    for (const auto& a : family) reduced.push_back(reduce_obs(a, dims, keep));
    worst = std::max(worst, observable_distance(reduce_obs(gen_convex(w, family), dims, keep),
                                                gen_convex(w, reduced)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Instruments

double t31_i(Generator& g, const GeneratorConfig& cfg) {
  const Instrument inst = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count + 1, "x"),
                                       cfg.kraus_per_outcome);
  const OutcomeMap f = g.surjection(inst.labels(), cfg.outcome_count);
  return observable_distance(measured_observable(part_instrument(inst, f)),
                             part(measured_observable(inst), f));
}

double t31_ii(Generator& g, const GeneratorConfig& cfg) {
  const std::size_t n = family_size(g);
  const auto family = draw_instruments(g, cfg.dim, overlapping_label_sets(g, n, cfg.outcome_count, "x"),
                                       cfg.kraus_per_outcome);
  const auto w = g.weights(n);
  std::vector<Observable> hats;
  for (const auto& inst : family) hats.push_back(measured_observable(inst));
  return observable_distance(measured_observable(gen_convex_instrument(w, family)), gen_convex(w, hats));
}

double t31_iii(Generator& g, const GeneratorConfig& cfg) {
  const Instrument inst = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "x"), cfg.kraus_per_outcome);
  const TransitionMatrix mu = g.transition(inst.labels(), numbered_labels(cfg.outcome_count + 1, "y"));
  return observable_distance(measured_observable(post_process_instrument(mu, inst)),
                             post_process(mu, measured_observable(inst)));
}

double c32(Generator& g, const GeneratorConfig& cfg) {
  const Instrument k = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count + 2, "z"), cfg.kraus_per_outcome);
  const OutcomeMap f = g.surjection(k.labels(), cfg.outcome_count, "a");
  const OutcomeMap h = g.surjection(k.labels(), 2, "b");
  const Observable i_hat = measured_observable(part_instrument(k, f));
  const Observable j_hat = measured_observable(part_instrument(k, h));
  const Observable k_hat = measured_observable(k);
  const double dev = std::max(observable_distance(part(k_hat, f), i_hat), observable_distance(part(k_hat, h), j_hat));
  CoexistenceWitness(k_hat, f, h, i_hat, j_hat);
  return dev;
}

double t33(Generator& g, const GeneratorConfig& cfg, bool family_first) {
  const Instrument inst = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "x"), cfg.kraus_per_outcome);
  const std::size_t n = family_size(g);
  const auto family = draw_instruments(g, cfg.dim, overlapping_label_sets(g, n, cfg.outcome_count, "y"),
                                       cfg.kraus_per_outcome);
  const auto w = g.weights(n);
  const auto rho = probes(g, cfg.dim);
  const Instrument mix = gen_convex_instrument(w, family);
  std::vector<Instrument> terms;
  for (const auto& j : family) terms.push_back(family_first ? seq_instrument(j, inst) : seq_instrument(inst, j));
  const Instrument lhs = family_first ? seq_instrument(mix, inst) : seq_instrument(inst, mix);
  return instrument_output_distance(lhs, gen_convex_instrument(w, terms), rho);
}

double t33_i(Generator& g, const GeneratorConfig& cfg) { return t33(g, cfg, false); }
double t33_ii(Generator& g, const GeneratorConfig& cfg) { return t33(g, cfg, true); }

double t34_i(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, cfg.dim, cfg.outcome_count, "y");
  const Instrument la = make_luders(a);
  const Instrument lb = make_luders(b);
  const Observable ab = seq_obs(a, b);
  return std::max(observable_distance(measured_observable(seq_instrument(la, lb)), ab),
                  observable_distance(seq_obs(measured_observable(la), measured_observable(lb)), ab));
}

double t34_ii_commuting(Generator& g, const GeneratorConfig& cfg) {
  const Matrix u = g.unitary(cfg.dim);
  const Observable a = g.diagonal_observable(u, numbered_labels(cfg.outcome_count, "x"));
  const Observable b = g.diagonal_observable(u, numbered_labels(cfg.outcome_count, "y"));
  if (!commutes(a, b)) return 1.0;
  const Instrument seq = seq_instrument(make_luders(a), make_luders(b));
  const InstrumentKind kind = classify(seq);
  return std::max(kind.lueders_deviation, instrument_choi_distance(seq, make_luders(seq_obs(a, b))));
}

double t34_ii_generic(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, cfg.dim, cfg.outcome_count, "y");
  const bool lueders = classify(seq_instrument(make_luders(a), make_luders(b))).lueders;
  return lueders == commutes(a, b) ? 0.0 : 1.0;
}

double t34_iii(Generator& g, const GeneratorConfig& cfg) {
  const Instrument s = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "x"), 1);
  const Instrument t = g.instrument(cfg.dim, numbered_labels(cfg.outcome_count, "y"), 1);
  const auto rho = probes(g, cfg.dim);
  std::vector<std::pair<Label, Matrix>> ops;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < t.size(); ++y)
      ops.emplace_back(Label::pair(s.labels()[x], t.labels()[y]),
                       t.operation(y).kraus().front() * s.operation(x).kraus().front());
  const Instrument seq = seq_instrument(s, t);
  return std::max(instrument_output_distance(seq, make_kraus(ops), rho), classify(seq).kraus_deviation);
}

double t34_iv(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, cfg.dim, cfg.outcome_count, "y");
  const auto alpha = g.states(cfg.dim, a.size());
  const auto beta = g.states(cfg.dim, b.size());
  const auto rho = probes(g, cfg.dim);
  const Instrument i = make_semitrivial(a, alpha);
  const Instrument j = make_semitrivial(b, beta);
  const Instrument seq = seq_instrument(i, j);
  const Instrument cond = conditional_instrument(j, i);
  const Observable post = post_process_relative(alpha, b, measured_observable(i));

  double worst = std::max(classify(seq).semitrivial_deviation, classify(cond).semitrivial_deviation);
  for (const auto& r : rho) {
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        const double c = tr_prod(alpha[x].matrix(), b.effect(y)) * tr_prod(r.matrix(), a.effect(x));
        const Matrix out = seq.operation(Label::pair(a.labels()[x], b.labels()[y]))(r.matrix());
        worst = std::max(worst, trace_distance(out, c * beta[y].matrix()));
      }
    for (std::size_t y = 0; y < b.size(); ++y) {
      const Matrix expected = tr_prod(r.matrix(), post.effect(y)) * beta[y].matrix();
      worst = std::max(worst, trace_distance(cond.operation(y)(r.matrix()), expected));
    }
  }
  return worst;
}

double c35(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  const Observable b = draw(g, cfg.dim, cfg.outcome_count, "y");
  const State alpha = g.state(cfg.dim);
  const State beta = g.state(cfg.dim);
  const auto rho = probes(g, cfg.dim);
  const Instrument i = make_trivial(a, alpha);
  const Instrument j = make_trivial(b, beta);
  const Instrument seq = seq_instrument(i, j);
  const Instrument cond = conditional_instrument(j, i);

  double worst = std::max(classify(seq).trivial_deviation, classify(cond).trivial_deviation);
  for (const auto& r : rho) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      const double ab = tr_prod(alpha.matrix(), b.effect(y));
      for (std::size_t x = 0; x < a.size(); ++x) {
        const Matrix out = seq.operation(Label::pair(a.labels()[x], b.labels()[y]))(r.matrix());
        worst = std::max(worst, trace_distance(out, ab * tr_prod(r.matrix(), a.effect(x)) * beta.matrix()));
      }
      worst = std::max(worst, trace_distance(cond.operation(y)(r.matrix()), ab * beta.matrix()));
    }
  }
  return worst;
}

double s3_example(Generator& g, const GeneratorConfig& cfg) {
  const Observable a = draw(g, cfg.dim, cfg.outcome_count, "x");
  std::vector<State> alpha;
  for (std::size_t x = 0; x < a.size(); ++x) alpha.emplace_back(a.effect(x) / a.effect(x).trace().real());
  const auto rho = probes(g, cfg.dim);
  const Instrument inst = make_semitrivial(a, alpha);
  double worst = std::max(classify(inst).semitrivial_deviation,
                          observable_distance(measured_observable(inst), a));
  for (const auto& r : rho)
    for (std::size_t x = 0; x < a.size(); ++x) {
      const Matrix& ax = a.effect(x);
      const Matrix expected = tr_prod(r.matrix(), ax) / ax.trace().real() * ax;
      worst = std::max(worst, trace_distance(inst.operation(x)(r.matrix()), expected));
    }
  return worst;
}

const CheckDef kChecks[] = {
    {"L2.1.i", "distribution of a part is the pushed-forward distribution", l21_i, false},
    {"L2.1.ii", "joint distribution from a coexistence witness has the right marginals", l21_ii, false},
    {"L2.2.i", "distribution of mu.A equals mu applied to the distribution of A", l22_i, false},
    {"L2.2.ii", "relative post-processing distribution formula", l22_ii, false},
    {"T2.3.i", "part of a generalized convex combination, entrywise", t23_i, false},
    {"T2.3.ii", "part of a convex combination is the convex combination of parts", t23_ii, false},
    {"T2.3.iii", "part of a convex union via restricted maps", t23_iii, false},
    {"T2.3.dist", "post-processing distributes over convex combinations", t23_dist, false},
    {"T2.4", "noisy observables are parts of one convex union", t24, false},
    {"T2.5.i", "A o (V l_i B^i) = V l_i (A o B^i)", t25_i, false},
    {"T2.5.ii", "(V l_i B^i | A) = V l_i (B^i | A)", t25_ii, false},
    {"T2.6.i", "tensor product commutes with post-processing", t26_i, false},
    {"T2.6.ii", "f(A) (x) g(B) = (f x g)(A (x) B)", t26_ii, false},
    {"T2.6.iii.a", "A (x) (V l_i B^i) = V l_i (A (x) B^i)", t26_iii_a, false},
    {"T2.6.iii.b", "(V l_i B^i) (x) A = V l_i (B^i (x) A)", t26_iii_b, false},
    {"T2.6.iv", "sequential product of tensor products, permuted labels", t26_iv, false},
    {"R2.norm", "reduced effects sum to the identity", r2_norm, false},
    {"R2.product", "reductions of product observables", r2_product, false},
    {"T2.7.i", "reduction commutes with parts", t27_i, false},
    {"T2.7.ii", "reduced coexistence witness certifies the reduced pair", t27_ii, false},
    {"T2.7.iii", "reduction commutes with post-processing", t27_iii, false},
    {"T2.7.iv", "reduction commutes with generalized convex combinations", t27_iv, false},
    {"T3.1.i", "measured observable of a part is the part of the measured observable", t31_i, true},
    {"T3.1.ii", "measured observable of a convex combination of instruments", t31_ii, true},
    {"T3.1.iii", "measured observable of a post-processed instrument", t31_iii, true},
    {"C3.2", "instrument coexistence witness yields an observable witness", c32, true},
    {"T3.3.i", "I o (V l_i J^i) = V l_i (I o J^i)", t33_i, true},
    {"T3.3.ii", "(V l_i J^i) o I = V l_i (J^i o I)", t33_ii, true},
    {"T3.4.i", "(L^A o L^B)^ = A o B", t34_i, false},
    {"T3.4.ii.commuting", "commuting A, B: L^A o L^B = L^(A o B) and is Lueders", t34_ii_commuting, false},
    {"T3.4.ii.generic", "Lueders verdict on L^A o L^B agrees with commutation", t34_ii_generic, false},
    {"T3.4.iii", "Kraus instruments compose to Kraus operators T_y S_x", t34_iii, false},
    {"T3.4.iv", "semitrivial composition and conditioning laws", t34_iv, false},
    {"C3.5", "trivial composition and conditioning laws", c35, false},
    {"S3.example", "semitrivial instrument with alpha_x = A_x / tr A_x", s3_example, false},
};

}  // namespace

std::span<const CheckDef> check_table() { return kChecks; }

std::size_t family_size(Generator& g) { return 2 + g.index(2); }

std::vector<LabelList> overlapping_label_sets(Generator& g, std::size_t count, std::size_t size,
                                              std::string_view prefix) {
  const LabelList pool = numbered_labels(size + 1, prefix);
  std::vector<LabelList> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::shuffle(idx.begin(), idx.end(), g.engine());
    idx.resize(size);
    std::sort(idx.begin(), idx.end());
    LabelList set;
    for (std::size_t k : idx) set.push_back(pool[k]);
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<LabelList> disjoint_label_sets(std::size_t count, std::size_t size, std::string_view prefix) {
  std::vector<LabelList> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(numbered_labels(size, std::string(prefix) + std::to_string(i) + "_"));
  }
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace qop::detail
