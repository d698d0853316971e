#include "qop/serialize.hpp"

#include "qop/error.hpp"

#include <string>

namespace qop {

namespace {

// Converts nlohmann's type errors into ParseError.
template <typename F>
auto guarded(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "matrix must be a nonempty array");
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = j.at(static_cast<std::size_t>(r));
      if (!row.is_array() || row.size() != j.size()) {
        throw Error(ErrorCode::NotSquare, "matrix rows must have length " + std::to_string(n));
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        const Json& z = row.at(static_cast<std::size_t>(c));
        if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::ParseError, "entries are [re, im]");
        m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    require_square(m);
    return m;
  });
}

Json to_json(const LabelList& labels) {
  Json out = Json::array();
  for (const auto& l : labels) out.push_back(l.text());
  return out;
}

LabelList labels_from_json(const Json& j) {
  return guarded("labels", [&] {
    LabelList out;
    for (const auto& item : j) out.push_back(Label::parse(item.get<std::string>()));
    return out;
  });
}

Json to_json(const Observable& a) {
  Json outcomes = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    outcomes.push_back({{"label", a.labels()[i].text()}, {"effect", to_json(a.effect(i))}});
  }
  return {{"dim", a.dim()}, {"outcomes", std::move(outcomes)}};
}

Observable observable_from_json(const Json& j, const Tolerance& tol) {
  return guarded("observable", [&] {
    const auto dim = field(j, "dim").get<std::size_t>();
    std::vector<Observable::Outcome> outcomes;
    for (const auto& o : field(j, "outcomes")) {
      Matrix e = matrix_from_json(field(o, "effect"));
      if (static_cast<std::size_t>(e.rows()) != dim) {
        throw Error(ErrorCode::DimensionMismatch, "effect dim differs from declared dim");
      }
      outcomes.emplace_back(Label::parse(field(o, "label").get<std::string>()), std::move(e));
    }
    return Observable(std::move(outcomes), tol);
  });
}

Json to_json(const Instrument& inst) {
  Json outcomes = Json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    Json kraus = Json::array();
    for (const auto& s : inst.operation(i).kraus()) kraus.push_back(to_json(s));
    outcomes.push_back({{"label", inst.labels()[i].text()}, {"kraus", std::move(kraus)}});
  }
  return {{"dim", inst.dim()}, {"outcomes", std::move(outcomes)}};
}

Instrument instrument_from_json(const Json& j, const Tolerance& tol) {
  return guarded("instrument", [&] {
    const auto dim = field(j, "dim").get<std::size_t>();
    std::vector<Instrument::Outcome> outcomes;
    for (const auto& o : field(j, "outcomes")) {
      std::vector<Matrix> kraus;
      for (const auto& k : field(o, "kraus")) {
        kraus.push_back(matrix_from_json(k));
        if (static_cast<std::size_t>(kraus.back().rows()) != dim) {
          throw Error(ErrorCode::DimensionMismatch, "Kraus dim differs from declared dim");
        }
      }
      outcomes.emplace_back(Label::parse(field(o, "label").get<std::string>()),
                            Operation(std::move(kraus), tol));
    }
    return Instrument(std::move(outcomes), tol);
  });
}

Json to_json(const State& rho) { return to_json(rho.matrix()); }

State state_from_json(const Json& j, const Tolerance& tol) { return State(matrix_from_json(j), tol); }

Json to_json(const TransitionMatrix& mu) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < mu.entries().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < mu.entries().cols(); ++c) row.push_back(mu.entries()(r, c));
    entries.push_back(std::move(row));
  }
  return {{"rows", to_json(mu.rows())}, {"cols", to_json(mu.cols())}, {"entries", std::move(entries)}};
}

TransitionMatrix transition_from_json(const Json& j, const Tolerance& tol) {
  return guarded("transition", [&] {
    LabelList rows = labels_from_json(field(j, "rows"));
    LabelList cols = labels_from_json(field(j, "cols"));
    const Json& entries = field(j, "entries");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    if (entries.size() != rows.size()) throw Error(ErrorCode::ParseError, "row count mismatch");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (entries.at(r).size() != cols.size()) throw Error(ErrorCode::ParseError, "column count mismatch");
      for (std::size_t c = 0; c < cols.size(); ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entries.at(r).at(c).get<double>();
      }
    }
    return TransitionMatrix(std::move(rows), std::move(cols), std::move(m), tol);
  });
}

Json to_json(const OutcomeMap& f) {
  Json image = Json::array();
  for (std::size_t i = 0; i < f.source().size(); ++i) image.push_back(f.target()[f.image_index(i)].text());
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"image", std::move(image)}};
}

OutcomeMap outcome_map_from_json(const Json& j) {
  return guarded("outcome map", [&] {
    const LabelList source = labels_from_json(field(j, "source"));
    const LabelList image = labels_from_json(field(j, "image"));
    if (source.size() != image.size()) throw Error(ErrorCode::ParseError, "source/image length mismatch");
    std::vector<std::pair<Label, Label>> mapping;
    for (std::size_t i = 0; i < source.size(); ++i) mapping.emplace_back(source[i], image[i]);
    return OutcomeMap(mapping, labels_from_json(field(j, "target")));
  });
}

Json to_json(const Distribution& p) {
  return {{"labels", to_json(p.labels())}, {"values", p.values()}};
}

Distribution distribution_from_json(const Json& j, const Tolerance& tol) {
  return guarded("distribution", [&] {
    return Distribution(labels_from_json(field(j, "labels")),
                        field(j, "values").get<std::vector<double>>(), tol);
  });
}

}  // namespace qop
