#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polytile/bits.hpp"
#include "polytile/matrix.hpp"

namespace polytile {

using Json = nlohmann::ordered_json;

/// One pass/fail entry of a report, with evidence.
struct Clause {
  std::string name;
  bool passed = true;
  Json details = Json::object();
};

/// Ordered list of clauses; passes iff every clause passes.
struct Certificate {
  std::string kind;
  std::vector<Clause> clauses;
  Json notes = Json::object();

  [[nodiscard]] bool passed() const {
    for (const auto& c : clauses)
      if (!c.passed) return false;
    return true;
  }

  Clause& add(std::string name, bool passed, Json details = Json::object()) {
    clauses.push_back({std::move(name), passed, std::move(details)});
    return clauses.back();
  }

  [[nodiscard]] const Clause* find(const std::string& name) const {
    for (const auto& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }

  [[nodiscard]] Json to_json() const {
    Json out;
    out["kind"] = kind;
    out["passed"] = passed();
    Json cl = Json::array();
    for (const auto& c : clauses)
      cl.push_back({{"clause", c.name}, {"passed", c.passed}, {"details", c.details}});
    out["clauses"] = std::move(cl);
    if (!notes.empty()) out["notes"] = notes;
    return out;
  }
};

template <ExactField F>
Json json_matrix(const F& field, const MatrixOf<F>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(field.to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ExactField F>
Json json_vector(const F& field, const std::vector<typename F::value_type>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(field.to_string(x));
  return out;
}

/// Subset as the list of its labels.
inline Json json_subset(Mask m, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (auto i : mask_elements(m)) out.push_back(labels.at(i));
  return out;
}

}  // namespace polytile
