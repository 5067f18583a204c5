//
// Copyright 2026 The asymdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// JSON wire formats: OutputBounds as {center, lower[], upper[]} with
// "inf"/"-inf" string sentinels for the infinities JSON numbers cannot
// carry, and MechanismResult as {estimate, queries_used, mechanism,
// total_epsilon}.
#ifndef ASYMDP_SERIALIZATION_HPP_
#define ASYMDP_SERIALIZATION_HPP_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "asymdp/bounds.hpp"
#include "asymdp/common.hpp"
#include "asymdp/extended_real.hpp"
#include "asymdp/mechanisms.hpp"

namespace asymdp {

inline void to_json(nlohmann::json& j, const ExtendedReal& v) {
  if (v.finite()) {
    j = v.value();
  } else {
    j = v.value() > 0 ? "inf" : "-inf";
  }
}

inline void from_json(const nlohmann::json& j, ExtendedReal& v) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") {
      v = ExtendedReal::infinity();
    } else if (s == "-inf") {
      v = ExtendedReal::neg_infinity();
    } else {
      throw InvalidParameterError("extended real string must be inf or -inf");
    }
    return;
  }
  if (!j.is_number()) {
    throw InvalidParameterError("extended real must be a number or inf/-inf");
  }
  v = ExtendedReal(j.get<double>());
}

inline void to_json(nlohmann::json& j, const MechanismResult& r) {
  j = nlohmann::json{{"estimate", r.estimate},
                     {"queries_used", r.queries_used},
                     {"mechanism", mechanism_name(r.mechanism)},
                     {"total_epsilon", r.total_epsilon}};
}

inline void from_json(const nlohmann::json& j, MechanismResult& r) {
  j.at("estimate").get_to(r.estimate);
  j.at("queries_used").get_to(r.queries_used);
  r.mechanism = parse_mechanism(j.at("mechanism").get<std::string>());
  j.at("total_epsilon").get_to(r.total_epsilon);
}

}  // namespace asymdp

namespace nlohmann {

// OutputBounds validates on construction and has no default constructor, so
// it round-trips through an adl_serializer specialization.
template <>
struct adl_serializer<asymdp::OutputBounds> {
  static void to_json(json& j, const asymdp::OutputBounds& b) {
    j = json{{"center", b.center()}, {"lower", b.lower()}, {"upper", b.upper()}};
  }

  static asymdp::OutputBounds from_json(const json& j) {
    return asymdp::OutputBounds(
        j.at("center").get<double>(),
        j.at("lower").get<std::vector<asymdp::ExtendedReal>>(),
        j.at("upper").get<std::vector<asymdp::ExtendedReal>>());
  }
};

}  // namespace nlohmann

#endif  // ASYMDP_SERIALIZATION_HPP_
