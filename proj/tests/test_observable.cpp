#include "support.hpp"

using namespace qop;
using namespace qop::test;

namespace {

double gap(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Observable three_outcome(Generator& g, std::size_t d = 2) {
  return g.observable(d, {"x1", "x2", "x3"});
}

Matrix sandwich(const Matrix& a, const Matrix& b) {
  // a is a projector or diagonal in these tests, so its root is taken entrywise.
  Matrix root = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) root(i, i) = std::sqrt(a(i, i).real());
  return root * b * root;
}

}  // namespace

TEST_SUITE("effects") {
  TEST_CASE("effect and state validation") {
    CHECK_NOTHROW(Effect(0.5 * identity(2)));
    CHECK_CODE(Effect(2.0 * identity(2)), ErrorCode::InvalidEffect);
    CHECK_CODE(Effect(diag({-0.1, 0.5})), ErrorCode::InvalidEffect);
    CHECK_CODE(Effect(mat2(0, 1, 0, 0)), ErrorCode::InvalidEffect);
    CHECK_NOTHROW(State{p0()});
    CHECK_CODE(State(identity(2)), ErrorCode::InvalidState);
    CHECK_CODE(State(diag({1.5, -0.5})), ErrorCode::InvalidState);
    CHECK_NOTHROW(PartialState(0.25 * p0()));
    CHECK_CODE(PartialState(diag({1, 1})), ErrorCode::InvalidState);
    CHECK((State::maximally_mixed(3).matrix() - identity(3) / 3.0).norm() < 1e-15);
  }

  TEST_CASE("seq_effect examples") {
    Generator g(1);
    const Effect b(g.observable(2, {"u", "v"}).effect(0));
    CHECK(gap(seq_effect(Effect(identity(2)), b).matrix(), b.matrix()) < 1e-12);
    CHECK(gap(seq_effect(b, Effect(identity(2))).matrix(), b.matrix()) < 1e-12);
    CHECK(gap(seq_effect(Effect(p0()), Effect(plus())).matrix(), 0.5 * p0()) < 1e-12);
    CHECK_CODE(seq_effect(Effect(p0()), Effect(identity(3))), ErrorCode::DimensionMismatch);
  }

  TEST_CASE("effect_of_set examples") {
    Generator g(2);
    const Observable a = three_outcome(g);
    const std::vector<Label> all = a.labels();
    CHECK(gap(effect_of_set(a, all).matrix(), identity(2)) < 1e-12);
    CHECK(effect_of_set(a, std::vector<Label>{}).matrix().norm() == 0.0);
    const std::vector<Label> pair{"x2", "x3"};
    CHECK(gap(effect_of_set(a, pair).matrix(), a.effect(1) + a.effect(2)) < 1e-15);
    const std::vector<Label> bad{"nope"};
    CHECK_CODE(effect_of_set(a, bad), ErrorCode::UnknownLabel);
  }
}

TEST_SUITE("observable") {
  TEST_CASE("construction invariants") {
    CHECK_CODE(Observable(std::vector<Observable::Outcome>{}), ErrorCode::InvalidObservable);
    CHECK_CODE(Observable({{"a", p0()}}), ErrorCode::InvalidObservable);
    CHECK_CODE(Observable({{"a", p0()}, {"a", p1()}}), ErrorCode::DuplicateLabel);
    CHECK_CODE(Observable({{"a", p0()}, {"b", identity(3)}}), ErrorCode::DimensionMismatch);
    const Observable z = z_basis();
    CHECK(z.size() == 2);
    CHECK(z.dim() == 2);
    CHECK(z.index_of("1") == 1u);
    CHECK_FALSE(z.contains("2"));
    CHECK_CODE(z.effect(Label("2")), ErrorCode::UnknownLabel);
  }

  TEST_CASE("distribution examples") {
    const Distribution d0 = distribution(z_basis(), State(p0()));
    CHECK(d0("0") == doctest::Approx(1.0));
    CHECK(d0("1") == doctest::Approx(0.0));
    const Distribution dp = distribution(z_basis(), State(plus()));
    CHECK(dp("0") == doctest::Approx(0.5));
    CHECK(dp("1") == doctest::Approx(0.5));
    Generator g(3);
    const Observable a = g.observable(3, numbered_labels(4, "x"));
    const Distribution mixed = distribution(a, State::maximally_mixed(3));
    for (std::size_t x = 0; x < a.size(); ++x)
      CHECK(std::abs(mixed.at(x) - a.effect(x).trace().real() / 3.0) < 1e-12);
    CHECK_CODE(distribution(a, State(p0())), ErrorCode::DimensionMismatch);
    CHECK_CODE(Distribution({"a", "b"}, {0.5, 0.6}), ErrorCode::InvalidDistribution);
  }

  TEST_CASE("part examples") {
    Generator g(4);
    const Observable a = three_outcome(g);
    CHECK(observable_distance(part(a, OutcomeMap::identity(a.labels())), a) < 1e-15);
    const Observable one = part(a, OutcomeMap::constant(a.labels(), "all"));
    CHECK(one.size() == 1);
    CHECK(gap(one.effect(0), identity(2)) < 1e-12);
    const OutcomeMap f({{"x1", "y1"}, {"x2", "y2"}, {"x3", "y2"}}, {"y1", "y2"});
    const Observable fa = part(a, f);
    CHECK(gap(fa.effect(Label("y1")), a.effect(0)) < 1e-15);
    CHECK(gap(fa.effect(Label("y2")), a.effect(1) + a.effect(2)) < 1e-15);

    const OutcomeMap not_onto({{"x1", "y1"}, {"x2", "y1"}, {"x3", "y1"}}, {"y1", "y2"});
    CHECK_FALSE(not_onto.is_surjective());
    CHECK_CODE(part(a, not_onto), ErrorCode::NotSurjective);
    const OutcomeMap short_map({{"x1", "y"}, {"x2", "y"}}, {"y"});
    CHECK_CODE(part(a, short_map), ErrorCode::LabelMismatch);
    const OutcomeMap wrong({{"x1", "y"}, {"x2", "y"}, {"q", "y"}}, {"y"});
    CHECK_CODE(part(a, wrong), ErrorCode::UnknownLabel);
    CHECK_CODE(OutcomeMap({{"x1", "zz"}}, {"y"}), ErrorCode::UnknownLabel);
  }

  TEST_CASE("outcome map helpers") {
    const OutcomeMap f({{"a", "1"}, {"b", "2"}, {"c", "1"}}, {"1", "2"});
    CHECK(f("c") == Label("1"));
    CHECK_CODE(f("d"), ErrorCode::UnknownLabel);
    const OutcomeMap r = f.restrict_to({"a", "c"});
    CHECK(r.target() == LabelList{"1"});
    CHECK(r.is_surjective());
  }

  TEST_CASE("post_process examples") {
    Generator g(5);
    const Observable a = three_outcome(g);
    Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(3, 3);
    perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
    const Observable permuted = post_process(TransitionMatrix(a.labels(), {"p", "q", "r"}, perm), a);
    CHECK(gap(permuted.effect(Label("r")), a.effect(0)) < 1e-15);
    CHECK(gap(permuted.effect(Label("p")), a.effect(1)) < 1e-15);

    const Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(3, 2, 0.5);
    const Observable flat = post_process(TransitionMatrix(a.labels(), {"u", "v"}, uniform), a);
    for (std::size_t y = 0; y < 2; ++y) CHECK(gap(flat.effect(y), 0.5 * identity(2)) < 1e-12);

    const TransitionMatrix mu = g.transition(a.labels(), {"y1", "y2"});
    const Observable b = post_process(mu, a);
    for (std::size_t y = 0; y < 2; ++y) {
      Matrix want = Matrix::Zero(2, 2);
      for (std::size_t x = 0; x < 3; ++x) want += mu(x, y) * a.effect(x);
      CHECK(gap(b.effect(y), want) < 1e-12);
    }

    CHECK_CODE(post_process(TransitionMatrix({"a", "b"}, {"u"}, Eigen::MatrixXd::Ones(2, 1)), a),
               ErrorCode::LabelMismatch);
    Eigen::MatrixXd heavy = Eigen::MatrixXd::Ones(3, 2);
    CHECK_CODE(TransitionMatrix(a.labels(), {"u", "v"}, heavy), ErrorCode::InvalidTransition);
    Eigen::MatrixXd negative(1, 2);
    negative << 1.5, -0.5;
    CHECK_CODE(TransitionMatrix({"a"}, {"u", "v"}, negative), ErrorCode::InvalidTransition);
  }

  TEST_CASE("post_process_relative examples") {
    Generator g(6);
    const Observable a = three_outcome(g);
    const std::vector<State> alpha = g.states(2, 3);
    const Observable single({{"only", identity(2)}});
    const Observable trivial = post_process_relative(alpha, single, a);
    CHECK(trivial.size() == 1);
    CHECK(gap(trivial.effect(0), identity(2)) < 1e-12);

    const Observable b = g.observable(2, {"u", "v"});
    const std::vector<State> same(3, alpha.front());
    const Observable constant = post_process_relative(same, b, a);
    for (std::size_t y = 0; y < 2; ++y) {
      const double w = (alpha.front().matrix() * b.effect(y)).trace().real();
      CHECK(gap(constant.effect(y), w * identity(2)) < 1e-12);
    }

    const Observable got = post_process_relative(alpha, b, a);
    for (std::size_t y = 0; y < 2; ++y) {
      Matrix want = Matrix::Zero(2, 2);
      for (std::size_t x = 0; x < 3; ++x) want += (alpha[x].matrix() * b.effect(y)).trace().real() * a.effect(x);
      CHECK(gap(got.effect(y), want) < 1e-12);
    }
    CHECK_CODE(post_process_relative(std::span(alpha).first(2), b, a), ErrorCode::LabelMismatch);
  }

  TEST_CASE("post_process_distribution examples") {
    Generator g(7);
    const LabelList rows{"a", "b", "c"};
    const TransitionMatrix mu = g.transition(rows, {"u", "v"});
    const Distribution nu(rows, {0.2, 0.3, 0.5});
    const Distribution same = post_process_distribution(TransitionMatrix::identity(rows), nu);
    CHECK(distribution_distance(same, nu) < 1e-15);
    const Distribution point = post_process_distribution(mu, Distribution(rows, {0, 1, 0}));
    CHECK(point("u") == doctest::Approx(mu(1, 0)));
    const Distribution mixed = post_process_distribution(mu, nu);
    CHECK(mixed("v") == doctest::Approx(0.2 * mu(0, 1) + 0.3 * mu(1, 1) + 0.5 * mu(2, 1)));
    CHECK_CODE(post_process_distribution(mu, Distribution({"a", "z", "c"}, {0.2, 0.3, 0.5})),
               ErrorCode::LabelMismatch);
  }

  TEST_CASE("gen_convex covers convex union, overlap and singleton") {
    Generator g(8);
    const Observable a = three_outcome(g);
    const Observable braw = three_outcome(g);
    auto relabel = [](const Observable& src, const LabelList& labels) {
      std::vector<Observable::Outcome> out;
      for (std::size_t i = 0; i < src.size(); ++i) out.emplace_back(labels[i], src.effect(i));
      return Observable(std::move(out));
    };
    const std::vector<double> half{0.5, 0.5};

    const std::vector<Observable> disjoint{a, relabel(braw, {"y1", "y2", "y3"})};
    const Observable un = gen_convex(half, disjoint);
    CHECK(un.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(gap(un.effect(i), 0.5 * a.effect(i)) < 1e-12);
      CHECK(gap(un.effect(i + 3), 0.5 * braw.effect(i)) < 1e-12);
    }

    const std::vector<Observable> overlap{a, relabel(braw, {"x1", "x2", "y3"})};
    const Observable d = gen_convex(half, overlap);
    CHECK(d.labels() == LabelList{"x1", "x2", "x3", "y3"});
    CHECK(gap(d.effect(Label("x1")), 0.5 * (a.effect(0) + braw.effect(0))) < 1e-12);
    CHECK(gap(d.effect(Label("y3")), 0.5 * braw.effect(2)) < 1e-12);

    const std::vector<Observable> single{a};
    const std::vector<double> one{1.0};
    CHECK(observable_distance(gen_convex(one, single), a) < 1e-15);

    const std::vector<double> zero{0.0, 1.0};
    CHECK_CODE(gen_convex(zero, disjoint), ErrorCode::BadWeights);
    const std::vector<double> heavy{0.7, 0.7};
    CHECK_CODE(gen_convex(heavy, disjoint), ErrorCode::BadWeights);
    const std::vector<Observable> mixed_dims{a, g.observable(3, {"x1", "x2"})};
    CHECK_CODE(gen_convex(half, mixed_dims), ErrorCode::DimensionMismatch);
  }

  TEST_CASE("identity and noisy observables") {
    const Observable single = identity_observable({"x"}, "x", 2);
    CHECK(gap(single.effect(0), identity(2)) == 0.0);
    const Observable id = identity_observable({"x1", "x2"}, "x1", 2);
    CHECK(gap(id.effect(0), identity(2)) == 0.0);
    CHECK(id.effect(1).norm() == 0.0);
    Generator g(9);
    const Distribution d = distribution(id, g.state(2));
    CHECK(d("x1") == doctest::Approx(1.0));
    CHECK_CODE(identity_observable({"x1"}, "x2", 2), ErrorCode::UnknownLabel);

    const Observable z({{"x1", p0()}, {"x2", p1()}});
    CHECK(observable_distance(noisy_observable(z, 1.0, "x1"), z) < 1e-15);
    CHECK(observable_distance(noisy_observable(z, 0.0, "x1"), id) < 1e-15);
    const Observable half = noisy_observable(z, 0.5, "x1");
    CHECK(gap(half.effect(0), 0.5 * identity(2) + 0.5 * p0()) < 1e-15);
    CHECK(gap(half.effect(1), 0.5 * p1()) < 1e-15);
    CHECK_CODE(noisy_observable(z, 1.5, "x1"), ErrorCode::BadWeights);
    CHECK_CODE(noisy_observable(z, 0.5, "x9"), ErrorCode::UnknownLabel);
  }

  TEST_CASE("almost_coexist construction") {
    Generator g(10);
    const Observable a1 = g.observable(2, {"a1", "a2"});
    const std::vector<Observable> solo{a1};
    const std::vector<double> one{1.0};
    const std::vector<Label> anchor{"a2"};
    const AlmostCoexistence s = almost_coexist(one, solo, anchor);
    CHECK(observable_distance(s.joint, a1) < 1e-15);
    CHECK(observable_distance(part(s.joint, s.maps[0]), a1) < 1e-15);

    const Observable a2 = g.observable(2, {"b1", "b2", "b3"});
    const std::vector<Observable> pair{a1, a2};
    const std::vector<double> half{0.5, 0.5};
    for (const Label& x1 : a1.labels())
      for (const Label& x2 : a2.labels()) {
        const std::vector<Label> anchors{x1, x2};
        const AlmostCoexistence r = almost_coexist(half, pair, anchors);
        for (std::size_t j = 0; j < 2; ++j) {
          const Observable got = part(r.joint, r.maps[j]);
          for (std::size_t x = 0; x < pair[j].size(); ++x) {
            Matrix want = 0.5 * pair[j].effect(x);
            if (pair[j].labels()[x] == anchors[j]) want += 0.5 * identity(2);
            CHECK(gap(got.effect(pair[j].labels()[x]), want) < 1e-12);
          }
        }
      }
    const std::vector<Observable> clash{a1, a1};
    const std::vector<Label> anchors{"a1", "a1"};
    CHECK_CODE(almost_coexist(half, clash, anchors), ErrorCode::OverlappingLabels);
  }

  TEST_CASE("seq_obs examples") {
    const Observable ab = seq_obs(z_basis(), x_basis());
    CHECK(ab.labels() == LabelList{Label::pair("0", "+"), Label::pair("0", "-"), Label::pair("1", "+"),
                                   Label::pair("1", "-")});
    CHECK(gap(ab.effect(Label::parse("(0,+)")), 0.5 * p0()) < 1e-12);
    CHECK(gap(ab.effect(Label::parse("(0,-)")), 0.5 * p0()) < 1e-12);

    Generator g(11);
    const Observable a = three_outcome(g);
    const Observable with_trivial = seq_obs(a, Observable({{"i", identity(2)}}));
    for (std::size_t x = 0; x < 3; ++x) CHECK(gap(with_trivial.effect(x), a.effect(x)) < 1e-12);

    const Observable zz = seq_obs(z_basis(), z_basis());
    CHECK(gap(zz.effect(Label::parse("(0,0)")), p0()) < 1e-12);
    CHECK(zz.effect(Label::parse("(0,1)")).norm() < 1e-12);

    const Observable b = three_outcome(g);
    const Observable s = seq_obs(a, b);
    for (std::size_t x = 0; x < 3; ++x) {
      Matrix marginal = Matrix::Zero(2, 2);
      for (std::size_t y = 0; y < 3; ++y) marginal += s.effect(x * 3 + y);
      CHECK(gap(marginal, a.effect(x)) < 1e-10);
    }
    CHECK_CODE(seq_obs(a, g.observable(3, {"u", "v"})), ErrorCode::DimensionMismatch);
  }

  TEST_CASE("conditioned examples") {
    Generator g(12);
    const Observable b = three_outcome(g);
    CHECK(observable_distance(conditioned(b, Observable({{"i", identity(2)}})), b) < 1e-12);
    const Observable c = conditioned(x_basis(), z_basis());
    const Matrix want = sandwich(p0(), plus()) + sandwich(p1(), plus());
    CHECK(gap(c.effect(Label("+")), want) < 1e-12);
    CHECK(gap(c.effect(Label("+")), 0.5 * identity(2)) < 1e-12);

    const Observable a = three_outcome(g);
    const Observable joint = seq_obs(a, b);
    const OutcomeMap second = OutcomeMap::from_function(joint.labels(), [](const Label& l) { return l.second(); });
    const OutcomeMap first = OutcomeMap::from_function(joint.labels(), [](const Label& l) { return l.first(); });
    CHECK(observable_distance(conditioned(b, a), part(joint, second)) < 1e-12);
    CHECK(observable_distance(part(joint, first), a) < 1e-10);
  }

  TEST_CASE("tensor_obs and tensor_transition") {
    Generator g(13);
    const Observable a = three_outcome(g);
    const Observable trivial({{"i", identity(3)}});
    const Observable ai = tensor_obs(a, trivial);
    CHECK(ai.dim() == 6);
    for (std::size_t x = 0; x < 3; ++x) CHECK(gap(ai.effect(x), kron(a.effect(x), identity(3))) == 0.0);

    const Observable zz = tensor_obs(z_basis(), z_basis());
    CHECK(gap(zz.effect(Label::parse("(1,0)")), diag({0, 0, 1, 0})) == 0.0);
    Matrix total = Matrix::Zero(4, 4);
    for (std::size_t i = 0; i < zz.size(); ++i) total += zz.effect(i);
    CHECK(gap(total, identity(4)) < 1e-15);

    const TransitionMatrix id = tensor_transition(TransitionMatrix::identity({"a", "b"}),
                                                  TransitionMatrix::identity({"c", "d"}));
    CHECK(id.entries().isIdentity());
    Eigen::MatrixXd mrow(1, 2);
    mrow << 0.5, 0.5;
    Eigen::MatrixXd nrow(1, 2);
    nrow << 1.0, 0.0;
    const TransitionMatrix prod =
        tensor_transition(TransitionMatrix({"x"}, {"y1", "y2"}, mrow), TransitionMatrix({"u"}, {"v1", "v2"}, nrow));
    CHECK(prod(0, 0) == 0.5);
    CHECK(prod(0, 1) == 0.0);
    CHECK(prod(0, 2) == 0.5);
    CHECK(prod(0, 3) == 0.0);
    CHECK(prod.cols()[2] == Label::pair("y2", "v1"));
  }

  TEST_CASE("product_outcome_map") {
    const LabelList xs{"a", "b"};
    const LabelList ys{"c", "d"};
    const OutcomeMap idid = product_outcome_map(OutcomeMap::identity(xs), OutcomeMap::identity(ys));
    for (const Label& l : idid.source()) CHECK(idid(l) == l);
    const OutcomeMap collapse = product_outcome_map(OutcomeMap::constant(xs, "k"), OutcomeMap::identity(ys));
    CHECK(collapse(Label::pair("b", "d")) == Label::pair("k", "d"));
    CHECK(collapse.target().size() == 2);
    CHECK(collapse.is_surjective());
  }

  TEST_CASE("reduce_obs examples") {
    Generator g(14);
    const Observable a = three_outcome(g);
    const Observable ai = tensor_obs(a, Observable({{"i", identity(2)}}));
    const Observable back = reduce_obs(ai, {2, 2}, Subsystem::First);
    for (std::size_t x = 0; x < 3; ++x) CHECK(gap(back.effect(x), a.effect(x)) < 1e-12);

    const Observable r = reduce_obs(tensor_obs(z_basis(), z_basis()), {2, 2}, Subsystem::First);
    CHECK(gap(r.effect(Label::parse("(0,1)")), 0.5 * p0()) < 1e-12);
    CHECK(gap(r.effect(Label::parse("(1,1)")), 0.5 * p1()) < 1e-12);

    const Observable big = g.observable(6, numbered_labels(3, "x"));
    const Observable r2 = reduce_obs(big, {2, 3}, Subsystem::Second);
    CHECK(r2.dim() == 3);
    CHECK_CODE(reduce_obs(big, {2, 2}, Subsystem::First), ErrorCode::DimensionMismatch);
  }

  TEST_CASE("joint distributions from coexistence witnesses") {
    Generator g(15);
    const Observable a = three_outcome(g);
    const State rho = g.state(2);
    const CoexistenceWitness diagw(a, OutcomeMap::identity(a.labels()), OutcomeMap::identity(a.labels()), a, a);
    const Distribution diagonal = joint_distribution_product(diagw, rho);
    const Distribution pa = distribution(a, rho);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        CHECK(diagonal.at(x * 3 + y) == doctest::Approx(x == y ? pa.at(x) : 0.0));

    const Observable b = three_outcome(g);
    const Observable c = seq_obs(a, b);
    const OutcomeMap to_a = OutcomeMap::from_function(c.labels(), [](const Label& l) { return l.first(); });
    const OutcomeMap to_b = OutcomeMap::from_function(c.labels(), [](const Label& l) { return l.second(); });
    const CoexistenceWitness w = CoexistenceWitness::from_joint(c, to_a, to_b);
    CHECK(observable_distance(w.b(), conditioned(b, a)) < 1e-10);
    const Distribution mu = joint_distribution_product(w, rho);
    const Distribution pb = distribution(conditioned(b, a), rho);
    for (std::size_t x = 0; x < 3; ++x) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t y = 0; y < 3; ++y) {
        row += mu.at(x * 3 + y);
        col += mu.at(y * 3 + x);
      }
      CHECK(std::abs(row - pa.at(x)) < 1e-10);
      CHECK(std::abs(col - pb.at(x)) < 1e-10);
    }

    CHECK_CODE(CoexistenceWitness(c, to_a, to_b, b, a), ErrorCode::InvalidWitness);
  }

  TEST_CASE("random joint with random surjections") {
    Generator g(16);
    for (int trial = 0; trial < 20; ++trial) {
      const Observable c = g.observable(3, numbered_labels(5, "c"));
      const OutcomeMap f = g.surjection(c.labels(), 3, "a");
      const OutcomeMap h = g.surjection(c.labels(), 2, "b");
      const CoexistenceWitness w = CoexistenceWitness::from_joint(c, f, h);
      const State rho = g.state(3);
      const Distribution mu = joint_distribution_product(w, rho);
      for (std::size_t x = 0; x < w.a().size(); ++x) {
        double row = 0.0;
        for (std::size_t y = 0; y < w.b().size(); ++y) row += mu.at(x * w.b().size() + y);
        double direct = 0.0;
        for (std::size_t z = 0; z < c.size(); ++z)
          if (f(c.labels()[z]) == w.a().labels()[x]) direct += (rho.matrix() * c.effect(z)).trace().real();
        CHECK(std::abs(row - direct) < 1e-10);
      }
    }
  }

  TEST_CASE("observable_distance is infinite across label sets") {
    CHECK(std::isinf(observable_distance(z_basis(), x_basis())));
    CHECK(observable_distance(z_basis(), z_basis()) == 0.0);
  }
}
