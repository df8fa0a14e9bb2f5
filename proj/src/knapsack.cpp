#include "cellplan/knapsack.hpp"

#include <cmath>
#include <string>

namespace cellplan {

void validate_instance(const KnapsackInstance& instance) {
	if (instance.profits.empty()) throw std::invalid_argument("knapsack needs at least one item");
	if (instance.profits.size() != instance.weights.size()) {
		throw std::invalid_argument("profits and weights must have equal length");
	}
	for (size_t i = 0; i < instance.weights.size(); ++i) {
		if (!std::isfinite(instance.weights[i]) || instance.weights[i] < 0) {
			throw std::invalid_argument("weight " + std::to_string(i) + " must be >= 0");
		}
		if (!std::isfinite(instance.profits[i])) {
			throw std::invalid_argument("profit " + std::to_string(i) + " must be finite");
		}
	}
	if (!std::isfinite(instance.capacity) || instance.capacity < 0) {
		throw std::invalid_argument("capacity must be >= 0");
	}
}

KnapsackBuild build_knapsack(const KnapsackInstance& instance) {
	validate_instance(instance);
	const int n = static_cast<int>(instance.profits.size());
	KnapsackBuild build{Model(Sense::Maximize), {}};
	std::vector<LinearTerm> capacity_row;
	std::vector<LinearTerm> objective;
	for (int i = 0; i < n; ++i) {
		const int var =
		    build.model.add_variable("x" + std::to_string(i + 1), 0, 1, VarKind::Binary);
		build.item_vars.push_back(var);
		capacity_row.push_back({var, instance.weights[i]});
		objective.push_back({var, instance.profits[i]});
	}
	build.model.add_linear_constraint(capacity_row, Relation::LessEqual, instance.capacity);
	build.model.set_objective(objective);
	return build;
}

KnapsackPlan decode_knapsack(const Solution& solution, const std::vector<int>& item_vars,
                             const KnapsackInstance& instance) {
	if (!solution.has_incumbent()) throw std::invalid_argument("solution has no incumbent");
	KnapsackPlan plan;
	for (size_t i = 0; i < item_vars.size(); ++i) {
		if (solution.values.at(item_vars[i]) > 0.5) {
			plan.chosen.push_back(static_cast<int>(i));
			plan.profit += instance.profits[i];
			plan.load += instance.weights[i];
		}
	}
	return plan;
}

void check_plan(const KnapsackInstance& instance, const KnapsackPlan& plan) {
	double profit = 0.0, load = 0.0;
	std::vector<bool> used(instance.profits.size(), false);
	for (int i : plan.chosen) {
		if (i < 0 || i >= static_cast<int>(instance.profits.size())) {
			throw std::runtime_error("plan chooses item index " + std::to_string(i));
		}
		if (used[i]) throw std::runtime_error("plan repeats item " + std::to_string(i));
		used[i] = true;
		profit += instance.profits[i];
		load += instance.weights[i];
	}
	if (load > instance.capacity + 1e-6) throw std::runtime_error("plan exceeds capacity");
	if (std::abs(profit - plan.profit) > 1e-6) throw std::runtime_error("plan profit mismatch");
	if (std::abs(load - plan.load) > 1e-6) throw std::runtime_error("plan load mismatch");
}

}  // namespace cellplan
