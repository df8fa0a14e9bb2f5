#pragma once

#include <string>
#include <vector>

#include "cellplan/model.hpp"

namespace cellplan {

// Transport routing between production cells. Distances come from either a
// strictly-upper-triangular list of rows (symmetric case, last row empty)
// or a full square matrix; `dist` always holds the expanded matrix.
struct TspInstance {
	std::vector<std::string> names;          // first entry is the depot
	std::vector<std::vector<double>> dist;   // full matrix, zero diagonal
};

struct Tour {
	std::vector<int> order;  // starts and ends at the depot
	double length = 0.0;
};

struct TspBuild {
	Model model;
	std::vector<std::vector<int>> arc_vars;  // [i][j], -1 on the diagonal
	std::vector<int> order_vars;             // MTZ y per node, -1 for the depot
};

// Mirrors triangular rows into a full symmetric matrix with zero diagonal.
// Row i must hold exactly n-1-i entries.
std::vector<std::vector<double>> expand_triangular(const std::vector<std::vector<double>>& tri);

void validate_instance(const TspInstance& instance);

// Miller-Tucker-Zemlin model: one binary per directed arc, one continuous
// order variable per non-depot node, in/out degree rows and the pairwise
// order inequalities y_j >= y_i + 1 - n*(1 - x_ij).
TspBuild build_tsp(const TspInstance& instance);

// Follows the chosen arcs from the depot. Throws when they do not form a
// single Hamiltonian cycle, which would mean a solver bug.
Tour decode_tour(const Solution& solution, const TspBuild& build, const TspInstance& instance);

double tour_length(const TspInstance& instance, const std::vector<int>& order);

// Replays a tour against the instance: every node once, closed at the
// depot, length consistent.
void check_tour(const TspInstance& instance, const Tour& tour);

}  // namespace cellplan
