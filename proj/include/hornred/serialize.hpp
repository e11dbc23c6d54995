#pragma once

#include <json.hpp>

#include "hornred/fragment.hpp"
#include "hornred/reduction.hpp"
#include "hornred/resolution.hpp"

namespace hornred {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Substitution& s);
nlohmann::json to_json(const InferenceStep& step);
nlohmann::json to_json(const Proof& p);
nlohmann::json to_json(const FragmentSpec& f);
nlohmann::json to_json(const ClosureBounds& b);
nlohmann::json to_json(const ReducibilityWitness& w);
nlohmann::json to_json(const ReductionReport& r);

}  // namespace hornred
