#include "support.hpp"

using namespace qop;
using namespace qop::test;

TEST_SUITE("serialize") {
  TEST_CASE("matrix entries are [re, im] rows") {
    Matrix m(2, 2);
    m << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-0.5, 0.25);
    const Json j = to_json(m);
    CHECK(j.dump() == "[[[1.0,2.0],[0.0,-1.0]],[[3.0,0.0],[-0.5,0.25]]]");
    CHECK((matrix_from_json(j) - m).norm() == 0.0);
  }

  TEST_CASE("malformed matrices") {
    CHECK_CODE(matrix_from_json(Json::parse("[]")), ErrorCode::ParseError);
    CHECK_CODE(matrix_from_json(Json::parse("[[[1,0],[0,0]]]")), ErrorCode::NotSquare);
    CHECK_CODE(matrix_from_json(Json::parse("[[[1,0,0]]]")), ErrorCode::ParseError);
    CHECK_CODE(matrix_from_json(Json::parse("[[[\"a\",0]]]")), ErrorCode::ParseError);
  }

  TEST_CASE("observable document") {
    const Observable ab = seq_obs(z_basis(), x_basis());
    const Json j = to_json(ab);
    CHECK(j.at("dim") == 2);
    CHECK(j.at("outcomes").size() == 4);
    CHECK(j.at("outcomes").at(0).at("label") == "(0,+)");
    const Observable back = observable_from_json(j);
    CHECK(back.labels() == ab.labels());
    CHECK(back.labels()[0].is_pair());
    CHECK(observable_distance(back, ab) == 0.0);
    CHECK_CODE(observable_from_json(Json::parse(R"({"dim": 2})")), ErrorCode::ParseError);
    Json broken = j;
    broken["outcomes"].erase(0);
    CHECK_CODE(observable_from_json(broken), ErrorCode::InvalidObservable);
  }

  TEST_CASE("instrument document") {
    Generator g(3);
    const Instrument inst = g.instrument(3, {"a", "b,c"}, 2);
    const Json j = to_json(inst);
    CHECK(j.at("outcomes").at(1).at("kraus").size() == 2);
    const Instrument back = instrument_from_json(j);
    CHECK(back.labels()[1].atom() == "b,c");
    CHECK(instrument_choi_distance(back, inst) == 0.0);
  }

  TEST_CASE("other value types round-trip") {
    Generator g(4);
    const State rho = g.state(2);
    CHECK((state_from_json(to_json(rho)).matrix() - rho.matrix()).norm() == 0.0);

    const TransitionMatrix mu = g.transition({"a", "b"}, {"u", "v", "w"});
    const TransitionMatrix mu2 = transition_from_json(to_json(mu));
    CHECK(mu2.cols() == mu.cols());
    CHECK((mu2.entries() - mu.entries()).norm() == 0.0);

    const OutcomeMap f({{"a", "1"}, {"b", "2"}, {"c", "1"}}, {"1", "2"});
    const OutcomeMap f2 = outcome_map_from_json(to_json(f));
    CHECK(f2("c") == Label("1"));
    CHECK(f2.target() == f.target());

    const Distribution p({"x", "y"}, {0.25, 0.75});
    CHECK(distribution_distance(distribution_from_json(to_json(p)), p) == 0.0);

    const LabelList labels{Label::pair("a", "b"), "c"};
    CHECK(labels_from_json(to_json(labels)) == labels);
    CHECK_CODE(labels_from_json(Json::parse("[\"(a\"]")), ErrorCode::ParseError);
  }
}
