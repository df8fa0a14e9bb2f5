#pragma once

#include <vector>

#include "cellplan/model.hpp"

namespace cellplan {

// Free machine time filled with the most profitable selection of products:
// one profit/duration pair per product, one shared time budget.
struct KnapsackInstance {
	std::vector<double> profits;
	std::vector<double> weights;  // process duration per item
	double capacity = 0.0;        // available machine time
};

struct KnapsackPlan {
	std::vector<int> chosen;  // 0-based item indices, ascending
	double profit = 0.0;
	double load = 0.0;
};

struct KnapsackBuild {
	Model model;
	std::vector<int> item_vars;  // item -> variable index
};

void validate_instance(const KnapsackInstance& instance);

// One binary per item, a single capacity row, maximize total profit.
KnapsackBuild build_knapsack(const KnapsackInstance& instance);

KnapsackPlan decode_knapsack(const Solution& solution, const std::vector<int>& item_vars,
                             const KnapsackInstance& instance);

// Throws std::runtime_error when the plan does not replay against the
// instance: load over capacity, or profit/load sums off.
void check_plan(const KnapsackInstance& instance, const KnapsackPlan& plan);

}  // namespace cellplan
