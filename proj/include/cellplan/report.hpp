#pragma once

#include <string>

#include <json.hpp>

#include "cellplan/model.hpp"

namespace cellplan {

// Machine-readable summary of one solve, emitted by the CLI under --output.
struct RunReport {
	std::string problem;
	SolveStatus status = SolveStatus::NoSolution;
	std::optional<double> objective;  // absent without an incumbent
	double bound = 0.0;
	std::optional<double> gap;  // |objective - bound| / max(1, |objective|)
	long nodes = 0;
	long lp_iterations = 0;
	double wall_time_s = 0.0;
	nlohmann::json plan;  // problem-specific payload
};

std::string to_string(SolveStatus status);

RunReport make_report(const std::string& problem, const Solution& solution, double wall_time_s);

nlohmann::json report_to_json(const RunReport& report);

}  // namespace cellplan
