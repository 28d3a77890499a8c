#pragma once

#include "wpt/experiments.hpp"

#include <json.hpp>

// JSON emitters for the value types; parsing lives in config.hpp where
// field-path validation happens.

namespace wpt::ode {

void to_json(nlohmann::json& j, const Stats& s);

} // namespace wpt::ode

namespace wpt {

void to_json(nlohmann::json& j, const CoilPair& c);
void to_json(nlohmann::json& j, const IntegratorConfig& c);
void to_json(nlohmann::json& j, const PhysicsOptions& p);
void to_json(nlohmann::json& j, const DistanceModel& m);
void to_json(nlohmann::json& j, const ScheduleParams& s);
void to_json(nlohmann::json& j, const SweepAxis& a);
void to_json(nlohmann::json& j, const SweepOutputs& o);
void to_json(nlohmann::json& j, const SweepSpec& s);
void to_json(nlohmann::json& j, const Figure4Config& f);
void to_json(nlohmann::json& j, const Figure5Config& f);
void to_json(nlohmann::json& j, const Figure6Config& f);
void to_json(nlohmann::json& j, const Provenance& p);

} // namespace wpt
