#include "cellplan/report.hpp"

#include <cmath>

namespace cellplan {

std::string to_string(SolveStatus status) {
	switch (status) {
		case SolveStatus::Optimal: return "optimal";
		case SolveStatus::Feasible: return "feasible";
		case SolveStatus::Infeasible: return "infeasible";
		case SolveStatus::Unbounded: return "unbounded";
		case SolveStatus::NoSolution: return "no-solution";
	}
	return "unknown";
}

RunReport make_report(const std::string& problem, const Solution& solution, double wall_time_s) {
	RunReport report;
	report.problem = problem;
	report.status = solution.status;
	report.bound = solution.bound;
	report.nodes = solution.nodes;
	report.lp_iterations = solution.lp_iterations;
	report.wall_time_s = wall_time_s;
	if (solution.has_incumbent()) {
		report.objective = solution.objective;
		report.gap = std::abs(solution.objective - solution.bound) /
		             std::max(1.0, std::abs(solution.objective));
	}
	return report;
}

nlohmann::json report_to_json(const RunReport& report) {
	nlohmann::json j{{"problem", report.problem},
	                 {"status", to_string(report.status)},
	                 {"nodes", report.nodes},
	                 {"lp_iterations", report.lp_iterations},
	                 {"wall_time_s", report.wall_time_s}};
	if (std::isfinite(report.bound)) j["bound"] = report.bound;
	if (report.objective) j["objective"] = *report.objective;
	if (report.gap) j["gap"] = *report.gap;
	if (!report.plan.is_null()) j["plan"] = report.plan;
	return j;
}

}  // namespace cellplan
