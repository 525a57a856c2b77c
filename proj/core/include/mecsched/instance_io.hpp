#pragma once

// JSON documents for instances, generation specs and schedules.
//
// Instance document:
//   { "deadline_s": 0.035, "degradation": 0.1,
//     "users": [ { "id": 0, "weight": 1, "uplink_time_per_bit": ...,
//                  "downlink_time_per_bit": ..., "output_ratio": ...,
//                  "service_rate": ..., "task_bits": ..., "cycles_per_bit": ...,
//                  "cpu_freq": ..., "energy_coeff": ..., "tx_power": ... } ] }
//
// All fields are required and unknown fields are rejected. Doubles are
// written in shortest round-trip form, so write/read is bit-exact.

#include <filesystem>
#include <string>
#include <variant>

#include "mecsched/generate.hpp"
#include "mecsched/model.hpp"

namespace mecsched {

std::string instance_to_json(const Instance& instance);
// Throws ParseError (syntax, missing/unknown/mistyped field) or
// ValidationError (values break an invariant).
Instance instance_from_json(const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

std::string generation_spec_to_json(const GenerationSpec& spec);
// Fields are optional and default to GenerationSpec{}; unknown ones are rejected.
GenerationSpec generation_spec_from_json(const std::string& text);

std::string rate_schedule_to_json(const RateSchedule& schedule);
std::string energy_schedule_to_json(const EnergySchedule& schedule);

// A schedule file carries "kind": "rate" or "energy".
using AnySchedule = std::variant<RateSchedule, EnergySchedule>;
AnySchedule schedule_from_json(const std::string& text);
AnySchedule read_schedule(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mecsched
