#pragma once

// JSON documents for the library's value types. Matrices are nested row
// arrays of [re, im] pairs; labels use their escaped text form.
//
//   observable: {"dim": d, "outcomes": [{"label": "x", "effect": M}, ...]}
//   instrument: {"dim": d, "outcomes": [{"label": "x", "kraus": [M, ...]}, ...]}

#include "qop/instrument.hpp"
#include "qop/observable.hpp"

#include <json.hpp>

namespace qop {

using Json = nlohmann::json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Observable& a);
Observable observable_from_json(const Json& j, const Tolerance& tol = {});

Json to_json(const Instrument& inst);
Instrument instrument_from_json(const Json& j, const Tolerance& tol = {});

Json to_json(const State& rho);
State state_from_json(const Json& j, const Tolerance& tol = {});

Json to_json(const TransitionMatrix& mu);
TransitionMatrix transition_from_json(const Json& j, const Tolerance& tol = {});

Json to_json(const OutcomeMap& f);
OutcomeMap outcome_map_from_json(const Json& j);

Json to_json(const Distribution& p);
Distribution distribution_from_json(const Json& j, const Tolerance& tol = {});

Json to_json(const LabelList& labels);
LabelList labels_from_json(const Json& j);

}  // namespace qop
