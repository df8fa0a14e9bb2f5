#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace cellplan {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
	int var = 0;
	double coeff = 0.0;
};

struct LpRow {
	std::vector<LinearTerm> terms;
	Relation relation = Relation::LessEqual;
	double rhs = 0.0;
};

// A linear program over bounded variables. Bounds may be -kInfinity /
// +kInfinity; rows are sparse. Immutable while a solve is running.
struct LpProblem {
	int num_vars = 0;
	Sense sense = Sense::Minimize;
	std::vector<double> objective;  // one coefficient per variable
	std::vector<double> lower;
	std::vector<double> upper;
	std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
	LpStatus status = LpStatus::Infeasible;
	std::vector<double> values;  // filled iff Optimal
	double objective = 0.0;      // meaningful iff Optimal
	long iterations = 0;
};

// Thrown when the pivot budget runs out before the solve finishes.
class IterationLimitError : public std::runtime_error {
   public:
	using std::runtime_error::runtime_error;
};

// Two-phase dense-tableau primal simplex over bounded variables.
// Throws std::invalid_argument on malformed input and IterationLimitError
// when max_iterations pivots were not enough.
LpOutcome solve_lp(const LpProblem& problem, long max_iterations = 50000);

}  // namespace cellplan
