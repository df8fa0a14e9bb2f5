#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellplan/lp.hpp"

namespace cellplan {

enum class VarKind { Continuous, Binary, Integer };
enum class SosKind { SOS1, SOS2 };

struct SosMember {
	int var = 0;
	double weight = 0.0;  // reference weight; strictly increasing inside a set
};

struct SosSet {
	SosKind kind = SosKind::SOS1;
	std::vector<SosMember> members;
};

struct ModelVariable {
	std::string name;
	double lower = 0.0;
	double upper = 0.0;
	VarKind kind = VarKind::Continuous;
};

// Mixed-integer model: variables, linear constraints, SOS sets and one
// linear objective. Mutable single-owner while being built, immutable
// during solve_mip.
class Model {
   public:
	explicit Model(Sense sense = Sense::Minimize) : sense_(sense) {}

	// Returns the next sequential variable index. Binary bounds are
	// intersected with [0, 1]. Throws on a duplicate name or lower > upper.
	int add_variable(const std::string& name, double lower, double upper, VarKind kind);

	// Appends a constraint row; duplicate indices inside `terms` are merged.
	// Returns the row index.
	int add_linear_constraint(std::vector<LinearTerm> terms, Relation relation, double rhs);

	// Registers an SOS set for branching. Needs >= 2 members with strictly
	// increasing weights and distinct variables. Returns the set index.
	int add_sos(SosKind kind, std::vector<SosMember> members);

	// Replaces any previous objective.
	void set_objective(const std::vector<LinearTerm>& terms, double constant = 0.0);

	Sense sense() const { return sense_; }
	int num_variables() const { return static_cast<int>(vars_.size()); }
	const std::vector<ModelVariable>& variables() const { return vars_; }
	const std::vector<LpRow>& constraints() const { return rows_; }
	const std::vector<SosSet>& sos_sets() const { return sos_; }
	const std::vector<double>& objective_coefficients() const { return objective_; }
	double objective_constant() const { return objective_constant_; }

   private:
	Sense sense_;
	std::vector<ModelVariable> vars_;
	std::map<std::string, int> index_by_name_;
	std::vector<LpRow> rows_;
	std::vector<SosSet> sos_;
	std::vector<double> objective_;  // dense, one entry per variable
	double objective_constant_ = 0.0;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, NoSolution };

// One line per evaluated branch-and-bound node whose relaxation was
// solvable; used by diagnostics and the test suite.
struct NodeRecord {
	long id = 0;
	long parent = -1;  // -1 for the root
	int depth = 0;
	double bound = 0.0;  // node LP bound, objective units
};

struct SolveParams {
	std::optional<double> time_limit;  // seconds
	double abs_gap = 1e-6;
	double rel_gap = 1e-9;
	std::optional<long> node_limit;
	std::vector<NodeRecord>* trace = nullptr;  // optional search-tree dump
};

struct Solution {
	SolveStatus status = SolveStatus::NoSolution;
	double objective = 0.0;      // meaningful iff has_incumbent()
	std::vector<double> values;  // empty when there is no incumbent
	double bound = 0.0;          // best dual bound
	long nodes = 0;
	long lp_iterations = 0;

	bool has_incumbent() const {
		return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
	}
};

// Deterministic branch and bound: best-bound node selection (ties to the
// most recently created node), most-fractional variable branching, and
// Beale-Tomlin SOS branching which takes priority over variable branching.
Solution solve_mip(const Model& model, const SolveParams& params = {});

}  // namespace cellplan
