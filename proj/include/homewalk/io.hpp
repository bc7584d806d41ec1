// Serialization for experiment outputs: CSV survival curves, line-oriented
// phase schedules, and JSON reports with fixed key order, all using shortest
// round-trip decimal formatting so reruns are byte-identical.
#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "homewalk/bounds.hpp"
#include "homewalk/montecarlo.hpp"
#include "homewalk/strategy.hpp"

namespace homewalk {

inline constexpr const char* kToolVersion = "1.0.0";

using ordered_json = nlohmann::ordered_json;

// Shortest decimal string that parses back to exactly the same double;
// locale-independent ("inf"/"nan" spelled out, integral values keep a ".0").
std::string format_double(double value);

// CSV with header "t,survivors,fraction,stderr", one record per line, "\n"
// line endings.
std::string survival_csv(const SurvivalCurve& curve);

// One phase per line: "t W H G N Z length", space-separated, no header.
std::string schedule_text(const Schedule& schedule);

ordered_json to_json(const RTauReport& report);
ordered_json to_json(const ThresholdReport& report);
ordered_json to_json(const StrategyConfig& config);
ordered_json to_json(const ExperimentConfig& config);
ordered_json to_json(const HittingStats& stats);
ordered_json to_json(const TailEstimate& estimate);

// Single document, trailing newline, 2-space indentation.
std::string dump_json(const ordered_json& doc);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace homewalk
