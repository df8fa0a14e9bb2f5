#include "cellplan/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cellplan/lp.hpp"

namespace cellplan {
namespace oracles {

std::pair<double, std::vector<int>> knapsack_dp(const KnapsackInstance& instance) {
	validate_instance(instance);
	const int n = static_cast<int>(instance.profits.size());
	std::vector<long> weights(n);
	for (int i = 0; i < n; ++i) {
		const double w = instance.weights[i];
		if (std::abs(w - std::round(w)) > 1e-9) {
			throw std::invalid_argument("knapsack_dp needs integral weights");
		}
		weights[i] = static_cast<long>(std::llround(w));
	}
	const long capacity = static_cast<long>(std::floor(instance.capacity + 1e-9));

	// dp[w] = best profit with load exactly <= w; keep[i][w] marks item use.
	std::vector<double> dp(capacity + 1, 0.0);
	std::vector<std::vector<bool>> keep(n, std::vector<bool>(capacity + 1, false));
	for (int i = 0; i < n; ++i) {
		if (instance.profits[i] <= 0) continue;  // never worth taking
		for (long w = capacity; w >= weights[i]; --w) {
			const double candidate = dp[w - weights[i]] + instance.profits[i];
			if (candidate > dp[w]) {
				dp[w] = candidate;
				keep[i][w] = true;
			}
		}
	}
	std::vector<int> subset;
	long w = capacity;
	for (int i = n - 1; i >= 0; --i) {
		if (keep[i][w]) {
			subset.push_back(i);
			w -= weights[i];
		}
	}
	std::reverse(subset.begin(), subset.end());
	return {dp[capacity], subset};
}

double fractional_greedy_knapsack_lp(const KnapsackInstance& instance) {
	validate_instance(instance);
	const int n = static_cast<int>(instance.profits.size());
	std::vector<int> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
		const bool free_a = instance.weights[a] == 0.0;
		const bool free_b = instance.weights[b] == 0.0;
		if (free_a != free_b) return free_a;
		if (free_a) return false;
		return instance.profits[a] * instance.weights[b] >
		       instance.profits[b] * instance.weights[a];
	});
	double value = 0.0;
	double room = instance.capacity;
	for (int i : order) {
		if (instance.profits[i] <= 0) continue;
		if (instance.weights[i] == 0.0) {
			value += instance.profits[i];
			continue;
		}
		if (instance.weights[i] <= room) {
			value += instance.profits[i];
			room -= instance.weights[i];
		} else {
			value += instance.profits[i] * room / instance.weights[i];
			break;
		}
	}
	return value;
}

double held_karp(const std::vector<std::vector<double>>& dist) {
	const int n = static_cast<int>(dist.size());
	if (n > 16) throw std::invalid_argument("held_karp handles at most 16 nodes");
	if (n < 2) throw std::invalid_argument("held_karp needs at least 2 nodes");
	for (const auto& row : dist) {
		if (row.size() != dist.size()) throw std::invalid_argument("matrix not square");
	}
	const int k = n - 1;  // nodes 1..n-1, node 0 fixed as the start
	const size_t full = size_t{1} << k;
	std::vector<double> dp(full * k, kInfinity);
	for (int j = 0; j < k; ++j) dp[(size_t{1} << j) * k + j] = dist[0][j + 1];
	for (size_t mask = 1; mask < full; ++mask) {
		for (int j = 0; j < k; ++j) {
			const double current = dp[mask * k + j];
			if (current == kInfinity || !(mask >> j & 1)) continue;
			for (int next = 0; next < k; ++next) {
				if (mask >> next & 1) continue;
				const size_t extended = mask | (size_t{1} << next);
				double& slot = dp[extended * k + next];
				const double candidate = current + dist[j + 1][next + 1];
				if (candidate < slot) slot = candidate;
			}
		}
	}
	double best = kInfinity;
	for (int j = 0; j < k; ++j) {
		best = std::min(best, dp[(full - 1) * k + j] + dist[j + 1][0]);
	}
	return best;
}

namespace {

struct RcpspSearch {
	const RcpspInstance& instance;
	int n;
	int horizon;
	std::vector<int> topo;                   // real jobs in topological order
	std::vector<std::vector<int>> preds;     // real predecessors per job
	std::vector<int> tail;                   // longest duration path to the end
	std::vector<std::vector<double>> usage;  // [resource][t]
	std::vector<int> start;
	int best;

	explicit RcpspSearch(const RcpspInstance& inst)
	    : instance(inst), n(static_cast<int>(inst.durations.size())) {
		horizon = instance.horizon ? *instance.horizon
		                           : std::accumulate(instance.durations.begin(),
		                                             instance.durations.end(), 0);
		best = horizon + 1;

		std::vector<std::vector<int>> succ(n + 2);
		preds.assign(n + 1, {});
		std::vector<int> indegree(n + 2, 0);
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
		for (const auto& [from, to] : arcs) {
			succ[from].push_back(to);
			++indegree[to];
			if (to >= 1 && to <= n && from >= 1 && from <= n) preds[to].push_back(from);
		}
		std::vector<int> ready;
		for (int v = 0; v <= n + 1; ++v) {
			if (indegree[v] == 0) ready.push_back(v);
		}
		std::vector<int> order;
		while (!ready.empty()) {
			const int v = ready.back();
			ready.pop_back();
			order.push_back(v);
			for (int s : succ[v]) {
				if (--indegree[s] == 0) ready.push_back(s);
			}
		}
		if (static_cast<int>(order.size()) != n + 2) {
			throw std::invalid_argument("precedence graph has a cycle");
		}
		for (int v : order) {
			if (v >= 1 && v <= n) topo.push_back(v);
		}

		tail.assign(n + 2, 0);
		for (auto it = order.rbegin(); it != order.rend(); ++it) {
			const int v = *it;
			int longest = 0;
			for (int s : succ[v]) longest = std::max(longest, tail[s]);
			const int p = v >= 1 && v <= n ? instance.durations[v - 1] : 0;
			tail[v] = p + longest;
		}

		usage.assign(instance.capacities.size(), std::vector<double>(horizon + 1, 0.0));
		start.assign(n + 1, 0);
	}

	bool fits(int job, int s) const {
		const int p = instance.durations[job - 1];
		for (size_t r = 0; r < instance.capacities.size(); ++r) {
			const double u = instance.usages[job - 1][r];
			if (u == 0.0) continue;
			for (int t = s; t < s + p; ++t) {
				if (usage[r][t] + u > instance.capacities[r] + 1e-9) return false;
			}
		}
		return true;
	}

	void place(int job, int s, double sign) {
		const int p = instance.durations[job - 1];
		for (size_t r = 0; r < instance.capacities.size(); ++r) {
			const double u = sign * instance.usages[job - 1][r];
			if (u == 0.0) continue;
			for (int t = s; t < s + p; ++t) usage[r][t] += u;
		}
	}

	void dfs(size_t idx, int makespan) {
		if (idx == topo.size()) {
			best = std::min(best, makespan);
			return;
		}
		const int job = topo[idx];
		const int p = instance.durations[job - 1];
		int earliest = 0;
		for (int pred : preds[job]) {
			earliest = std::max(earliest, start[pred] + instance.durations[pred - 1]);
		}
		for (int s = earliest; s + tail[job] < best && s + p <= horizon; ++s) {
			if (!fits(job, s)) continue;
			place(job, s, 1.0);
			start[job] = s;
			dfs(idx + 1, std::max(makespan, s + p));
			place(job, s, -1.0);
		}
	}
};

}  // namespace

std::optional<int> enumerate_rcpsp(const RcpspInstance& instance) {
	validate_instance(instance);
	if (instance.durations.size() > 12) {
		throw std::invalid_argument("enumerate_rcpsp handles at most 12 real jobs");
	}
	RcpspSearch search(instance);
	if (search.horizon > 64) {
		throw std::invalid_argument("enumerate_rcpsp handles horizons up to 64");
	}
	search.dfs(0, 0);
	if (search.best > search.horizon) return std::nullopt;
	return search.best;
}

double enumerate_jobshop(const JobShopInstance& instance) {
	validate_instance(instance);
	const int num_jobs = static_cast<int>(instance.times.size());
	const int num_machines = static_cast<int>(instance.times[0].size());
	if (num_jobs > 4 || num_machines > 3) {
		throw std::invalid_argument("enumerate_jobshop handles at most 4 jobs on 3 machines");
	}

	std::vector<int> base(num_jobs);
	std::iota(base.begin(), base.end(), 0);
	std::vector<std::vector<std::vector<int>>> machine_orders(num_machines);
	for (int m = 0; m < num_machines; ++m) {
		std::vector<int> perm = base;
		do {
			machine_orders[m].push_back(perm);
		} while (std::next_permutation(perm.begin(), perm.end()));
	}

	// position[j][m] = index of machine m in job j's visiting order
	std::vector<std::vector<int>> position(num_jobs, std::vector<int>(num_machines, 0));
	for (int j = 0; j < num_jobs; ++j) {
		for (int r = 0; r < num_machines; ++r) position[j][instance.machines[j][r] - 1] = r;
	}

	double best = kInfinity;
	std::vector<size_t> pick(num_machines, 0);
	std::vector<std::vector<double>> start(num_jobs, std::vector<double>(num_machines, 0.0));
	for (;;) {
		// longest-path evaluation by relaxation; a combination whose joint
		// order graph has a cycle never stabilizes and is skipped
		for (auto& row : start) std::fill(row.begin(), row.end(), 0.0);
		bool changed = true;
		int rounds = 0;
		const int max_rounds = num_jobs * num_machines + 2;
		while (changed && rounds++ <= max_rounds) {
			changed = false;
			for (int j = 0; j < num_jobs; ++j) {
				for (int r = 1; r < num_machines; ++r) {
					const int m = instance.machines[j][r] - 1;
					const int prev = instance.machines[j][r - 1] - 1;
					const double s = start[j][r - 1] + instance.times[j][prev];
					if (start[j][r] < s) {
						start[j][r] = s;
						changed = true;
					}
				}
			}
			for (int m = 0; m < num_machines; ++m) {
				const std::vector<int>& seq = machine_orders[m][pick[m]];
				for (int a = 0; a + 1 < num_jobs; ++a) {
					const int j1 = seq[a], j2 = seq[a + 1];
					const double s = start[j1][position[j1][m]] + instance.times[j1][m];
					if (start[j2][position[j2][m]] < s) {
						start[j2][position[j2][m]] = s;
						changed = true;
					}
				}
			}
		}
		if (!changed) {
			double makespan = 0.0;
			for (int j = 0; j < num_jobs; ++j) {
				const int last = instance.machines[j][num_machines - 1] - 1;
				makespan = std::max(makespan, start[j][num_machines - 1] + instance.times[j][last]);
			}
			best = std::min(best, makespan);
		}
		int m = 0;
		while (m < num_machines && ++pick[m] == machine_orders[m].size()) {
			pick[m] = 0;
			++m;
		}
		if (m == num_machines) break;
	}
	return best;
}

std::optional<double> enumerate_facility(const FacilityInstance& instance) {
	validate_instance(instance);
	const int num_sites = static_cast<int>(instance.sites.size());
	const int num_customers = static_cast<int>(instance.customers.size());
	if (num_sites > 3 || num_customers > 5) {
		throw std::invalid_argument("enumerate_facility handles at most 3 sites and 5 customers");
	}
	for (int f = 0; f < num_sites; ++f) {
		if (cost_curve(instance, f).size() > 5) {
			throw std::invalid_argument("enumerate_facility handles at most 5 breakpoints");
		}
	}

	double best = kInfinity;
	for (int subset = 0; subset < (1 << num_sites); ++subset) {
		const int open_count = __builtin_popcount(static_cast<unsigned>(subset));
		if (instance.max_open && open_count > *instance.max_open) continue;
		if (instance.min_open && open_count < *instance.min_open) continue;
		std::vector<int> open;
		for (int f = 0; f < num_sites; ++f) {
			if (subset >> f & 1) open.push_back(f);
		}

		// one adjacent breakpoint segment per open site
		std::vector<size_t> segment(open.size(), 0);
		for (;;) {
			bool segment_ok = true;
			LpProblem lp;
			lp.sense = Sense::Minimize;
			std::vector<std::vector<int>> ship(open.size(), std::vector<int>(num_customers, -1));
			std::vector<int> cap_var(open.size(), -1);
			double fixed_cost = 0.0;
			auto add_var = [&lp](double lower, double upper, double cost) {
				lp.lower.push_back(lower);
				lp.upper.push_back(upper);
				lp.objective.push_back(cost);
				return lp.num_vars++;
			};
			for (size_t i = 0; i < open.size(); ++i) {
				const int f = open[i];
				const auto& curve = cost_curve(instance, f);
				const auto& [z0, c0] = curve[segment[i]];
				const auto& [z1, c1] = curve[segment[i] + 1];
				const double z_high = std::min(z1, instance.sites[f].capacity);
				if (z_high < z0) {
					segment_ok = false;
					break;
				}
				const double slope = (c1 - c0) / (z1 - z0);
				// cost = c0 + slope * (z - z0)
				cap_var[i] = add_var(z0, z_high, slope);
				fixed_cost += c0 - slope * z0;
				for (int c = 0; c < num_customers; ++c) {
					ship[i][c] = add_var(0, kInfinity,
					                     site_customer_distance(instance, f, c));
				}
				LpRow within;
				for (int c = 0; c < num_customers; ++c) within.terms.push_back({ship[i][c], 1.0});
				within.terms.push_back({cap_var[i], -1.0});
				within.relation = Relation::LessEqual;
				within.rhs = 0.0;
				lp.rows.push_back(within);
			}
			if (segment_ok) {
				bool demand_ok = true;
				for (int c = 0; c < num_customers; ++c) {
					LpRow row;
					for (size_t i = 0; i < open.size(); ++i) row.terms.push_back({ship[i][c], 1.0});
					row.relation = Relation::Equal;
					row.rhs = instance.customers[c].demand;
					if (row.terms.empty() && row.rhs != 0.0) demand_ok = false;
					lp.rows.push_back(row);
				}
				if (demand_ok) {
					const LpOutcome outcome = solve_lp(lp);
					if (outcome.status == LpStatus::Optimal) {
						best = std::min(best, outcome.objective + fixed_cost);
					}
				}
			}
			size_t i = 0;
			while (i < open.size() &&
			       ++segment[i] == cost_curve(instance, open[i]).size() - 1) {
				segment[i] = 0;
				++i;
			}
			if (i == open.size()) break;
		}
	}
	if (best == kInfinity) return std::nullopt;
	return best;
}

}  // namespace oracles
}  // namespace cellplan
