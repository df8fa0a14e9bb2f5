#include "cellplan/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cellplan {
namespace {

// Full arc list over jobs 0..n+1: the file's arcs plus dummy wiring for
// every real job without a predecessor or successor.
std::vector<std::pair<int, int>> wire_dummies(const RcpspInstance& instance) {
	const int n = static_cast<int>(instance.durations.size());
	std::vector<std::pair<int, int>> arcs = instance.precedence;
	std::vector<bool> has_pred(n + 2, false), has_succ(n + 2, false);
	for (const auto& [from, to] : arcs) {
		has_pred[to] = true;
		has_succ[from] = true;
	}
	for (int j = 1; j <= n; ++j) {
		if (!has_pred[j]) arcs.push_back({0, j});
		if (!has_succ[j]) arcs.push_back({j, n + 1});
	}
	return arcs;
}

std::vector<int> topological_order(int num_nodes, const std::vector<std::pair<int, int>>& arcs) {
	std::vector<std::vector<int>> succ(num_nodes);
	std::vector<int> indegree(num_nodes, 0);
	for (const auto& [from, to] : arcs) {
		succ[from].push_back(to);
		++indegree[to];
	}
	std::vector<int> order;
	std::vector<int> ready;
	for (int v = 0; v < num_nodes; ++v) {
		if (indegree[v] == 0) ready.push_back(v);
	}
	while (!ready.empty()) {
		const int v = ready.back();
		ready.pop_back();
		order.push_back(v);
		for (int s : succ[v]) {
			if (--indegree[s] == 0) ready.push_back(s);
		}
	}
	if (static_cast<int>(order.size()) != num_nodes) {
		throw std::invalid_argument("precedence graph has a cycle");
	}
	return order;
}

int job_duration(const RcpspInstance& instance, int job) {
	const int n = static_cast<int>(instance.durations.size());
	if (job == 0 || job == n + 1) return 0;
	return instance.durations[job - 1];
}

}  // namespace

std::string rcpsp_job_key(int job) { return "job" + std::to_string(job); }

std::string jobshop_op_key(int job, int machine) {
	return "job" + std::to_string(job + 1) + ":machine" + std::to_string(machine + 1);
}

void validate_instance(const RcpspInstance& instance) {
	const int n = static_cast<int>(instance.durations.size());
	if (n == 0) throw std::invalid_argument("RCPSP needs at least one job");
	if (instance.usages.size() != static_cast<size_t>(n)) {
		throw std::invalid_argument("usages must have one row per job");
	}
	const size_t num_resources = instance.capacities.size();
	for (int j = 0; j < n; ++j) {
		if (instance.durations[j] < 0) throw std::invalid_argument("durations must be >= 0");
		if (instance.usages[j].size() != num_resources) {
			throw std::invalid_argument("usages row " + std::to_string(j + 1) +
			                            " must have one entry per resource");
		}
		for (double u : instance.usages[j]) {
			if (!std::isfinite(u) || u < 0) throw std::invalid_argument("usages must be >= 0");
		}
	}
	for (double c : instance.capacities) {
		if (!std::isfinite(c) || c < 0) throw std::invalid_argument("capacities must be >= 0");
	}
	for (const auto& [from, to] : instance.precedence) {
		if (from < 0 || from > n + 1 || to < 0 || to > n + 1) {
			throw std::invalid_argument("precedence references an unknown job");
		}
		if (to == 0) throw std::invalid_argument("the start dummy cannot have a predecessor");
		if (from == n + 1) throw std::invalid_argument("the end dummy cannot have a successor");
	}
	if (instance.horizon && *instance.horizon < 0) {
		throw std::invalid_argument("horizon must be >= 0");
	}
	topological_order(n + 2, wire_dummies(instance));
}

RcpspBuild build_rcpsp(const RcpspInstance& instance) {
	validate_instance(instance);
	const int n = static_cast<int>(instance.durations.size());
	const int num_resources = static_cast<int>(instance.capacities.size());
	const int horizon =
	    instance.horizon ? *instance.horizon
	                     : std::accumulate(instance.durations.begin(), instance.durations.end(), 0);

	RcpspBuild build{Model(Sense::Minimize), {}, horizon, wire_dummies(instance)};
	Model& model = build.model;

	build.start_vars.assign(n + 2, std::vector<int>(horizon + 1, -1));
	for (int j = 0; j <= n + 1; ++j) {
		const int p = job_duration(instance, j);
		for (int t = 0; t <= horizon; ++t) {
			// Starts that would overflow the horizon are pinned to zero.
			const double upper = t + p <= horizon ? 1.0 : 0.0;
			build.start_vars[j][t] = model.add_variable(
			    "x_" + std::to_string(j) + "_" + std::to_string(t), 0, upper, VarKind::Binary);
		}
	}

	for (int j = 0; j <= n + 1; ++j) {
		std::vector<LinearTerm> row;
		for (int t = 0; t <= horizon; ++t) row.push_back({build.start_vars[j][t], 1.0});
		model.add_linear_constraint(row, Relation::Equal, 1.0);
	}

	// A job started in (t - p, t] is still running at step t.
	for (int t = 0; t <= horizon; ++t) {
		for (int r = 0; r < num_resources; ++r) {
			std::vector<LinearTerm> row;
			for (int j = 1; j <= n; ++j) {
				const double usage = instance.usages[j - 1][r];
				const int p = instance.durations[j - 1];
				if (usage == 0.0 || p == 0) continue;
				for (int t2 = std::max(0, t - p + 1); t2 <= t; ++t2) {
					row.push_back({build.start_vars[j][t2], usage});
				}
			}
			if (row.empty()) continue;
			model.add_linear_constraint(row, Relation::LessEqual, instance.capacities[r]);
		}
	}

	for (const auto& [from, to] : build.arcs) {
		std::vector<LinearTerm> row;
		for (int t = 1; t <= horizon; ++t) {
			row.push_back({build.start_vars[to][t], static_cast<double>(t)});
			row.push_back({build.start_vars[from][t], -static_cast<double>(t)});
		}
		model.add_linear_constraint(row, Relation::GreaterEqual, job_duration(instance, from));
	}

	std::vector<LinearTerm> objective;
	for (int t = 1; t <= horizon; ++t) {
		objective.push_back({build.start_vars[n + 1][t], static_cast<double>(t)});
	}
	model.set_objective(objective);
	return build;
}

Schedule decode_rcpsp(const Solution& solution, const RcpspBuild& build,
                      const RcpspInstance& instance) {
	if (!solution.has_incumbent()) throw std::invalid_argument("solution has no incumbent");
	const int n = static_cast<int>(instance.durations.size());
	Schedule schedule;
	for (int j = 0; j <= n + 1; ++j) {
		int start = -1;
		for (int t = 0; t <= build.horizon; ++t) {
			if (solution.values.at(build.start_vars[j][t]) > 0.5) {
				if (start >= 0) throw std::runtime_error("job has two start steps chosen");
				start = t;
			}
		}
		if (start < 0) throw std::runtime_error("job has no start step chosen");
		schedule.starts[rcpsp_job_key(j)] = start;
		if (j >= 1 && j <= n) {
			schedule.tasks.push_back({"job" + std::to_string(j), j, static_cast<double>(start),
			                          static_cast<double>(instance.durations[j - 1])});
		}
	}
	for (const Schedule::Task& task : schedule.tasks) {
		schedule.makespan = std::max(schedule.makespan, task.start + task.duration);
	}
	return schedule;
}

void check_schedule(const RcpspInstance& instance, const Schedule& schedule) {
	const int n = static_cast<int>(instance.durations.size());
	std::vector<double> starts(n + 2, -1.0);
	for (int j = 0; j <= n + 1; ++j) {
		auto it = schedule.starts.find(rcpsp_job_key(j));
		if (it == schedule.starts.end()) throw std::runtime_error("schedule misses a job start");
		starts[j] = it->second;
		if (it->second < 0) throw std::runtime_error("negative start time");
	}
	for (const auto& [from, to] : wire_dummies(instance)) {
		if (starts[to] + 1e-6 < starts[from] + job_duration(instance, from)) {
			throw std::runtime_error("precedence violated between job " + std::to_string(from) +
			                         " and job " + std::to_string(to));
		}
	}
	const auto profile = resource_profile(instance, schedule);
	for (size_t r = 0; r < profile.size(); ++r) {
		for (double used : profile[r]) {
			if (used > instance.capacities[r] + 1e-6) {
				throw std::runtime_error("resource " + std::to_string(r + 1) + " over capacity");
			}
		}
	}
	double makespan = 0.0;
	for (const Schedule::Task& task : schedule.tasks) {
		makespan = std::max(makespan, task.start + task.duration);
	}
	if (std::abs(makespan - schedule.makespan) > 1e-6) {
		throw std::runtime_error("makespan does not match task finish times");
	}
}

std::vector<std::vector<double>> resource_profile(const RcpspInstance& instance,
                                                  const Schedule& schedule) {
	const int n = static_cast<int>(instance.durations.size());
	int horizon = 0;
	std::vector<int> starts(n + 1, 0);
	for (int j = 1; j <= n; ++j) {
		const double s = schedule.starts.at(rcpsp_job_key(j));
		starts[j] = static_cast<int>(std::llround(s));
		horizon = std::max(horizon, starts[j] + instance.durations[j - 1]);
	}
	std::vector<std::vector<double>> profile(instance.capacities.size(),
	                                         std::vector<double>(std::max(horizon, 1), 0.0));
	for (int j = 1; j <= n; ++j) {
		for (int t = starts[j]; t < starts[j] + instance.durations[j - 1]; ++t) {
			for (size_t r = 0; r < instance.capacities.size(); ++r) {
				profile[r][t] += instance.usages[j - 1][r];
			}
		}
	}
	return profile;
}

void validate_instance(const JobShopInstance& instance) {
	const int num_jobs = static_cast<int>(instance.times.size());
	if (num_jobs == 0) throw std::invalid_argument("job shop needs at least one job");
	if (instance.machines.size() != static_cast<size_t>(num_jobs)) {
		throw std::invalid_argument("times and machines must have one row per job");
	}
	const int num_machines = static_cast<int>(instance.times[0].size());
	if (num_machines == 0) throw std::invalid_argument("job shop needs at least one machine");
	for (int j = 0; j < num_jobs; ++j) {
		if (static_cast<int>(instance.times[j].size()) != num_machines) {
			throw std::invalid_argument("times rows must have equal length");
		}
		for (double t : instance.times[j]) {
			if (!std::isfinite(t) || t < 0) throw std::invalid_argument("times must be >= 0");
		}
		if (static_cast<int>(instance.machines[j].size()) != num_machines) {
			throw std::invalid_argument("machines row " + std::to_string(j + 1) +
			                            " must list every machine");
		}
		std::vector<bool> seen(num_machines, false);
		for (int m : instance.machines[j]) {
			if (m < 1 || m > num_machines || seen[m - 1]) {
				throw std::invalid_argument("machines row " + std::to_string(j + 1) +
				                            " is not a permutation of 1.." +
				                            std::to_string(num_machines));
			}
			seen[m - 1] = true;
		}
	}
}

JobShopBuild build_jobshop(const JobShopInstance& instance) {
	validate_instance(instance);
	const int num_jobs = static_cast<int>(instance.times.size());
	const int num_machines = static_cast<int>(instance.times[0].size());

	JobShopBuild build{Model(Sense::Minimize), {}, {}, -1};
	Model& model = build.model;

	build.start_vars.assign(num_machines, std::vector<int>(num_jobs, -1));
	for (int m = 0; m < num_machines; ++m) {
		for (int j = 0; j < num_jobs; ++j) {
			build.start_vars[m][j] =
			    model.add_variable("s_" + std::to_string(m + 1) + "_" + std::to_string(j + 1), 0,
			                       kInfinity, VarKind::Continuous);
		}
	}
	build.makespan_var = model.add_variable("C", 0, kInfinity, VarKind::Continuous);

	double big_m = 0.0;
	for (const auto& row : instance.times) {
		for (double t : row) big_m += t;
	}

	build.order_vars.assign(
	    num_machines, std::vector<std::vector<int>>(num_jobs, std::vector<int>(num_jobs, -1)));
	for (int m = 0; m < num_machines; ++m) {
		for (int j = 0; j < num_jobs; ++j) {
			for (int k = j + 1; k < num_jobs; ++k) {
				build.order_vars[m][j][k] = model.add_variable(
				    "y_" + std::to_string(m + 1) + "_" + std::to_string(j + 1) + "_" +
				        std::to_string(k + 1),
				    0, 1, VarKind::Binary);
			}
		}
	}

	// Each job follows its machine visiting order.
	for (int j = 0; j < num_jobs; ++j) {
		for (int r = 1; r < num_machines; ++r) {
			const int current = instance.machines[j][r] - 1;
			const int previous = instance.machines[j][r - 1] - 1;
			model.add_linear_constraint({{build.start_vars[current][j], 1.0},
			                             {build.start_vars[previous][j], -1.0}},
			                            Relation::GreaterEqual, instance.times[j][previous]);
		}
	}

	// One job at a time per machine; y = 1 means job j runs before job k.
	for (int m = 0; m < num_machines; ++m) {
		for (int j = 0; j < num_jobs; ++j) {
			for (int k = j + 1; k < num_jobs; ++k) {
				const int y = build.order_vars[m][j][k];
				model.add_linear_constraint({{build.start_vars[m][j], 1.0},
				                             {build.start_vars[m][k], -1.0},
				                             {y, big_m}},
				                            Relation::GreaterEqual, instance.times[k][m]);
				model.add_linear_constraint({{build.start_vars[m][k], 1.0},
				                             {build.start_vars[m][j], -1.0},
				                             {y, -big_m}},
				                            Relation::GreaterEqual,
				                            instance.times[j][m] - big_m);
			}
		}
	}

	// The makespan covers the last operation of every job.
	for (int j = 0; j < num_jobs; ++j) {
		const int last = instance.machines[j][num_machines - 1] - 1;
		model.add_linear_constraint(
		    {{build.makespan_var, 1.0}, {build.start_vars[last][j], -1.0}},
		    Relation::GreaterEqual, instance.times[j][last]);
	}

	model.set_objective({{build.makespan_var, 1.0}});
	return build;
}

Schedule decode_jobshop(const Solution& solution, const JobShopBuild& build,
                        const JobShopInstance& instance) {
	if (!solution.has_incumbent()) throw std::invalid_argument("solution has no incumbent");
	const int num_jobs = static_cast<int>(instance.times.size());
	const int num_machines = static_cast<int>(instance.times[0].size());
	Schedule schedule;
	for (int m = 0; m < num_machines; ++m) {
		for (int j = 0; j < num_jobs; ++j) {
			const double start = solution.values.at(build.start_vars[m][j]);
			schedule.starts[jobshop_op_key(j, m)] = start;
			schedule.tasks.push_back(
			    {"job" + std::to_string(j + 1), m, start, instance.times[j][m]});
		}
	}
	for (const Schedule::Task& task : schedule.tasks) {
		schedule.makespan = std::max(schedule.makespan, task.start + task.duration);
	}
	return schedule;
}

void check_schedule(const JobShopInstance& instance, const Schedule& schedule) {
	const int num_jobs = static_cast<int>(instance.times.size());
	const int num_machines = static_cast<int>(instance.times[0].size());
	std::vector<std::vector<double>> start(num_jobs, std::vector<double>(num_machines, 0.0));
	for (int j = 0; j < num_jobs; ++j) {
		for (int m = 0; m < num_machines; ++m) {
			auto it = schedule.starts.find(jobshop_op_key(j, m));
			if (it == schedule.starts.end()) throw std::runtime_error("schedule misses an operation");
			start[j][m] = it->second;
			if (it->second < -1e-6) throw std::runtime_error("negative start time");
		}
	}
	for (int j = 0; j < num_jobs; ++j) {
		for (int r = 1; r < num_machines; ++r) {
			const int current = instance.machines[j][r] - 1;
			const int previous = instance.machines[j][r - 1] - 1;
			if (start[j][current] + 1e-6 < start[j][previous] + instance.times[j][previous]) {
				throw std::runtime_error("job " + std::to_string(j + 1) +
				                         " violates its machine order");
			}
		}
	}
	for (int m = 0; m < num_machines; ++m) {
		for (int j = 0; j < num_jobs; ++j) {
			for (int k = j + 1; k < num_jobs; ++k) {
				const bool j_first = start[j][m] + instance.times[j][m] <= start[k][m] + 1e-6;
				const bool k_first = start[k][m] + instance.times[k][m] <= start[j][m] + 1e-6;
				if (!j_first && !k_first) {
					throw std::runtime_error("machine " + std::to_string(m + 1) +
					                         " runs two jobs at once");
				}
			}
		}
	}
	double makespan = 0.0;
	for (const Schedule::Task& task : schedule.tasks) {
		makespan = std::max(makespan, task.start + task.duration);
	}
	if (std::abs(makespan - schedule.makespan) > 1e-6) {
		throw std::runtime_error("makespan does not match task finish times");
	}
}

}  // namespace cellplan
