#include "cellplan/tsp.hpp"

#include <cmath>

namespace cellplan {

std::vector<std::vector<double>> expand_triangular(const std::vector<std::vector<double>>& tri) {
	const int n = static_cast<int>(tri.size());
	if (n == 0) throw std::invalid_argument("triangular matrix is empty");
	std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
	for (int i = 0; i < n; ++i) {
		if (static_cast<int>(tri[i].size()) != n - 1 - i) {
			throw std::invalid_argument("triangular row " + std::to_string(i) + " must have " +
			                            std::to_string(n - 1 - i) + " entries, has " +
			                            std::to_string(tri[i].size()));
		}
		for (int k = 0; k < static_cast<int>(tri[i].size()); ++k) {
			const double d = tri[i][k];
			if (!std::isfinite(d) || d < 0) {
				throw std::invalid_argument("distances must be finite and >= 0");
			}
			full[i][i + 1 + k] = d;
			full[i + 1 + k][i] = d;
		}
	}
	return full;
}

void validate_instance(const TspInstance& instance) {
	const size_t n = instance.names.size();
	if (n < 2) throw std::invalid_argument("a tour needs at least 2 nodes");
	if (instance.dist.size() != n) {
		throw std::invalid_argument("distance matrix size does not match the name list");
	}
	for (size_t i = 0; i < n; ++i) {
		if (instance.dist[i].size() != n) throw std::invalid_argument("distance matrix not square");
		if (instance.dist[i][i] != 0.0) throw std::invalid_argument("diagonal must be zero");
		for (double d : instance.dist[i]) {
			if (!std::isfinite(d) || d < 0) {
				throw std::invalid_argument("distances must be finite and >= 0");
			}
		}
	}
}

TspBuild build_tsp(const TspInstance& instance) {
	validate_instance(instance);
	const int n = static_cast<int>(instance.names.size());
	TspBuild build{Model(Sense::Minimize), {}, {}};
	Model& model = build.model;

	build.arc_vars.assign(n, std::vector<int>(n, -1));
	std::vector<LinearTerm> objective;
	for (int i = 0; i < n; ++i) {
		for (int j = 0; j < n; ++j) {
			if (i == j) continue;
			const int var = model.add_variable(
			    "x_" + std::to_string(i) + "_" + std::to_string(j), 0, 1, VarKind::Binary);
			build.arc_vars[i][j] = var;
			objective.push_back({var, instance.dist[i][j]});
		}
	}
	build.order_vars.assign(n, -1);
	for (int i = 1; i < n; ++i) {
		build.order_vars[i] =
		    model.add_variable("y_" + std::to_string(i), 0, kInfinity, VarKind::Continuous);
	}

	for (int i = 0; i < n; ++i) {
		std::vector<LinearTerm> out, in;
		for (int j = 0; j < n; ++j) {
			if (i == j) continue;
			out.push_back({build.arc_vars[i][j], 1.0});
			in.push_back({build.arc_vars[j][i], 1.0});
		}
		model.add_linear_constraint(out, Relation::Equal, 1.0);
		model.add_linear_constraint(in, Relation::Equal, 1.0);
	}

	// y_j >= y_i + 1 - n*(1 - x_ij) for non-depot i != j.
	for (int i = 1; i < n; ++i) {
		for (int j = 1; j < n; ++j) {
			if (i == j) continue;
			model.add_linear_constraint({{build.order_vars[j], 1.0},
			                             {build.order_vars[i], -1.0},
			                             {build.arc_vars[i][j], -static_cast<double>(n)}},
			                            Relation::GreaterEqual, 1.0 - n);
		}
	}
	model.set_objective(objective);
	return build;
}

Tour decode_tour(const Solution& solution, const TspBuild& build, const TspInstance& instance) {
	if (!solution.has_incumbent()) throw std::invalid_argument("solution has no incumbent");
	const int n = static_cast<int>(instance.names.size());
	Tour tour;
	tour.order.push_back(0);
	int current = 0;
	for (int hop = 0; hop < n; ++hop) {
		int next = -1;
		for (int j = 0; j < n; ++j) {
			if (j == current) continue;
			if (solution.values.at(build.arc_vars[current][j]) > 0.5) {
				if (next >= 0) throw std::runtime_error("node has two outgoing arcs chosen");
				next = j;
			}
		}
		if (next < 0) throw std::runtime_error("chosen arcs do not continue the cycle");
		tour.order.push_back(next);
		current = next;
	}
	if (current != 0) throw std::runtime_error("chosen arcs do not close at the depot");
	tour.length = tour_length(instance, tour.order);
	check_tour(instance, tour);
	return tour;
}

double tour_length(const TspInstance& instance, const std::vector<int>& order) {
	double length = 0.0;
	for (size_t k = 0; k + 1 < order.size(); ++k) {
		length += instance.dist.at(order[k]).at(order[k + 1]);
	}
	return length;
}

void check_tour(const TspInstance& instance, const Tour& tour) {
	const int n = static_cast<int>(instance.names.size());
	if (static_cast<int>(tour.order.size()) != n + 1) {
		throw std::runtime_error("tour must list n+1 nodes");
	}
	if (tour.order.front() != 0 || tour.order.back() != 0) {
		throw std::runtime_error("tour must start and end at the depot");
	}
	std::vector<bool> seen(n, false);
	for (size_t k = 0; k + 1 < tour.order.size(); ++k) {
		const int node = tour.order[k];
		if (node < 0 || node >= n) throw std::runtime_error("tour references an unknown node");
		if (seen[node]) throw std::runtime_error("tour repeats a node");
		seen[node] = true;
	}
	if (std::abs(tour_length(instance, tour.order) - tour.length) > 1e-6) {
		throw std::runtime_error("tour length mismatch");
	}
}

}  // namespace cellplan
