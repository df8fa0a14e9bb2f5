#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellplan/model.hpp"

namespace cellplan {

// Precedence-constrained jobs competing for renewable per-period resources.
// Real jobs are 1..n; 0 and n+1 are zero-duration dummies marking process
// start and end. The instance file carries the real jobs only; missing
// dummy arcs are synthesized by the builder.
struct RcpspInstance {
	std::vector<int> durations;               // real jobs, integral time units
	std::vector<std::vector<double>> usages;  // [job][resource], per time step
	std::vector<double> capacities;           // per resource, renewable
	std::vector<std::pair<int, int>> precedence;  // (predecessor, successor)
	std::optional<int> horizon;               // time steps; sum of durations when absent
};

// One machine visiting order and one duration per (job, machine).
struct JobShopInstance {
	std::vector<std::vector<double>> times;  // [job][machine]
	std::vector<std::vector<int>> machines;  // [job][position], 1-based ids
};

// Shared output shape of both scheduling problems. `starts` covers every
// scheduled activity (RCPSP dummies included); `tasks` is the rendering
// payload and skips the dummies.
struct Schedule {
	struct Task {
		std::string label;
		int lane = 0;  // machine (job shop) or job (RCPSP)
		double start = 0.0;
		double duration = 0.0;
	};
	std::vector<Task> tasks;
	std::map<std::string, double> starts;
	double makespan = 0.0;
};

struct RcpspBuild {
	Model model;
	std::vector<std::vector<int>> start_vars;  // [job][t] including dummies
	int horizon = 0;
	std::vector<std::pair<int, int>> arcs;     // full precedence incl. dummy wiring
};

struct JobShopBuild {
	Model model;
	std::vector<std::vector<int>> start_vars;  // [machine][job]
	std::vector<std::vector<std::vector<int>>> order_vars;  // [machine][j][k], j < k
	int makespan_var = -1;
};

void validate_instance(const RcpspInstance& instance);
void validate_instance(const JobShopInstance& instance);

// Time-indexed model: one binary per (job, start step), assignment rows,
// sliding-window resource rows and weighted-start precedence rows. The
// objective minimizes the start of the end dummy.
RcpspBuild build_rcpsp(const RcpspInstance& instance);

Schedule decode_rcpsp(const Solution& solution, const RcpspBuild& build,
                      const RcpspInstance& instance);

// Disjunctive model: continuous starts per (machine, job), one order binary
// per machine and unordered job pair, big-M pair rows, makespan variable.
// M is the sum of all processing times.
JobShopBuild build_jobshop(const JobShopInstance& instance);

Schedule decode_jobshop(const Solution& solution, const JobShopBuild& build,
                        const JobShopInstance& instance);

// Replay checks; throw std::runtime_error on any violated precedence,
// capacity, machine order or overlap.
void check_schedule(const RcpspInstance& instance, const Schedule& schedule);
void check_schedule(const JobShopInstance& instance, const Schedule& schedule);

// Per-step usage profile of a decoded RCPSP schedule, one row per resource.
std::vector<std::vector<double>> resource_profile(const RcpspInstance& instance,
                                                  const Schedule& schedule);

// Start keys used in Schedule::starts.
std::string rcpsp_job_key(int job);
std::string jobshop_op_key(int job, int machine);  // 0-based arguments, 1-based key

}  // namespace cellplan
