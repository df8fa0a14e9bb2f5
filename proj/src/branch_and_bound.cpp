#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "cellplan/model.hpp"

namespace cellplan {
namespace {

constexpr double kIntegralityTol = 1e-6;
constexpr double kSosZeroTol = 1e-6;

struct BoundChange {
	int var;
	double lower;
	double upper;
};

enum class BranchKind { None, Variable, Sos };

struct BranchDecision {
	BranchKind kind = BranchKind::None;
	int index = 0;         // variable index or SOS set index
	double value = 0.0;    // fractional LP value (variable branching)
	int split = 0;         // member split position (SOS branching)
};

struct Node {
	long id = 0;
	long parent = -1;
	int depth = 0;
	double bound = 0.0;
	std::vector<BoundChange> changes;  // relative to the parent
	BranchDecision decision;
	bool open = false;
};

class Solver {
   public:
	Solver(const Model& model, const SolveParams& params)
	    : model_(model),
	      params_(params),
	      maximize_(model.sense() == Sense::Maximize),
	      start_(std::chrono::steady_clock::now()) {
		lp_.num_vars = model.num_variables();
		lp_.sense = model.sense();
		lp_.objective = model.objective_coefficients();
		lp_.rows = model.constraints();
		lp_.lower.reserve(lp_.num_vars);
		lp_.upper.reserve(lp_.num_vars);
		for (const ModelVariable& v : model.variables()) {
			double lo = v.lower;
			double hi = v.upper;
			if (v.kind != VarKind::Continuous) {
				lo = std::ceil(lo - kIntegralityTol);
				hi = std::floor(hi + kIntegralityTol);
			}
			lp_.lower.push_back(lo);
			lp_.upper.push_back(hi);
		}
		root_lower_ = lp_.lower;
		root_upper_ = lp_.upper;
	}

	Solution run() {
		Solution out;
		if (!root_bounds_consistent()) {
			out.status = SolveStatus::Infeasible;
			out.bound = worst_bound();
			return out;
		}

		long root = make_node(-1, {});
		const LpStatus root_status = evaluate(root, kInfinity);
		if (root_status == LpStatus::Unbounded) {
			finish(out, SolveStatus::Unbounded, best_bound_sign() * kInfinity);
			return out;
		}
		if (root_status == LpStatus::Infeasible && !incumbent_) {
			finish(out, SolveStatus::Infeasible, worst_bound());
			return out;
		}

		bool limit_hit = false;
		bool cutoff_stop = false;
		double cutoff_bound = 0.0;
		while (!heap_.empty()) {
			if (limits_exhausted()) {
				limit_hit = true;
				break;
			}
			const HeapEntry top = heap_.top();
			heap_.pop();
			nodes_[top.id].open = false;
			if (incumbent_ && !improves_cutoff(top.bound)) {
				// Best-bound order: nothing left can beat the incumbent.
				cutoff_stop = true;
				cutoff_bound = top.bound;
				break;
			}
			branch(top.id);
		}

		if (limit_hit) {
			const double open_bound = heap_.empty() ? incumbent_objective_ : heap_.top().bound;
			finish(out, incumbent_ ? SolveStatus::Feasible : SolveStatus::NoSolution, open_bound);
			return out;
		}
		if (incumbent_) {
			finish(out, SolveStatus::Optimal, cutoff_stop ? cutoff_bound : incumbent_objective_);
		} else {
			finish(out, SolveStatus::Infeasible, worst_bound());
		}
		return out;
	}

   private:
	struct HeapEntry {
		double bound;
		long id;
	};
	struct WorseBound {
		bool maximize;
		bool operator()(const HeapEntry& a, const HeapEntry& b) const {
			if (a.bound != b.bound) return maximize ? a.bound < b.bound : a.bound > b.bound;
			return a.id < b.id;  // ties: most recently created first
		}
	};

	bool root_bounds_consistent() const {
		for (int j = 0; j < lp_.num_vars; ++j) {
			if (root_lower_[j] > root_upper_[j]) return false;
		}
		return true;
	}

	double worst_bound() const { return maximize_ ? -kInfinity : kInfinity; }
	double best_bound_sign() const { return maximize_ ? 1.0 : -1.0; }

	bool limits_exhausted() {
		if (params_.node_limit && nodes_evaluated_ >= *params_.node_limit) return true;
		if (params_.time_limit) {
			const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
			if (elapsed.count() >= *params_.time_limit) return true;
		}
		return false;
	}

	// Strictly-better-than-incumbent test with the gap tolerances applied.
	bool improves_cutoff(double bound) const {
		const double margin =
		    std::max(params_.abs_gap, params_.rel_gap * std::abs(incumbent_objective_));
		return maximize_ ? bound > incumbent_objective_ + margin
		                 : bound < incumbent_objective_ - margin;
	}

	long make_node(long parent, std::vector<BoundChange> changes) {
		Node node;
		node.id = static_cast<long>(nodes_.size());
		node.parent = parent;
		node.depth = parent < 0 ? 0 : nodes_[parent].depth + 1;
		node.changes = std::move(changes);
		nodes_.push_back(std::move(node));
		return nodes_.back().id;
	}

	// Applies the bound-change chain root -> node onto the scratch LP.
	void load_bounds(long id) {
		lp_.lower = root_lower_;
		lp_.upper = root_upper_;
		chain_.clear();
		for (long cur = id; cur >= 0; cur = nodes_[cur].parent) chain_.push_back(cur);
		for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
			for (const BoundChange& c : nodes_[*it].changes) {
				lp_.lower[c.var] = std::max(lp_.lower[c.var], c.lower);
				lp_.upper[c.var] = std::min(lp_.upper[c.var], c.upper);
			}
		}
	}

	// Solves the node relaxation, stores the branching decision, fathoms or
	// queues the node. parent_bound caps the child bound so bounds stay
	// monotone along every tree path.
	LpStatus evaluate(long id, double parent_bound) {
		load_bounds(id);
		for (int j = 0; j < lp_.num_vars; ++j) {
			if (lp_.lower[j] > lp_.upper[j]) return LpStatus::Infeasible;
		}
		++nodes_evaluated_;
		const LpOutcome lp = solve_lp(lp_);
		lp_iterations_ += lp.iterations;
		if (lp.status == LpStatus::Infeasible) return LpStatus::Infeasible;
		if (lp.status == LpStatus::Unbounded) return LpStatus::Unbounded;

		double bound = lp.objective + model_.objective_constant();
		if (std::isfinite(parent_bound)) {
			bound = maximize_ ? std::min(bound, parent_bound) : std::max(bound, parent_bound);
		}
		Node& node = nodes_[id];
		node.bound = bound;
		if (params_.trace) params_.trace->push_back({node.id, node.parent, node.depth, bound});
		if (incumbent_ && !improves_cutoff(bound)) return LpStatus::Optimal;

		node.decision = pick_branch(lp.values);
		if (node.decision.kind == BranchKind::None) {
			accept_incumbent(lp.values);
			return LpStatus::Optimal;
		}
		node.open = true;
		heap_.push({bound, id});
		return LpStatus::Optimal;
	}

	// SOS violations first (lowest set index), then the most fractional
	// integer variable, ties to the lowest variable index.
	BranchDecision pick_branch(const std::vector<double>& values) const {
		const auto& sets = model_.sos_sets();
		for (size_t s = 0; s < sets.size(); ++s) {
			int split = 0;
			if (sos_violated(sets[s], values, &split)) {
				BranchDecision d;
				d.kind = BranchKind::Sos;
				d.index = static_cast<int>(s);
				d.split = split;
				return d;
			}
		}
		BranchDecision d;
		double best_frac = kIntegralityTol;
		const auto& vars = model_.variables();
		for (int j = 0; j < model_.num_variables(); ++j) {
			if (vars[j].kind == VarKind::Continuous) continue;
			const double v = values[j];
			const double frac = std::abs(v - std::round(v));
			if (frac > best_frac) {
				best_frac = frac;
				d.kind = BranchKind::Variable;
				d.index = j;
				d.value = v;
			}
		}
		return d;
	}

	// Beale-Tomlin: split the member list at the value-weighted average
	// reference weight. Returns the first member index of the right child.
	bool sos_violated(const SosSet& set, const std::vector<double>& values, int* split) const {
		const int k = static_cast<int>(set.members.size());
		int first = -1, last = -1, count = 0;
		double weight_sum = 0.0, mass = 0.0;
		for (int i = 0; i < k; ++i) {
			const double v = std::abs(values[set.members[i].var]);
			if (v <= kSosZeroTol) continue;
			if (first < 0) first = i;
			last = i;
			++count;
			weight_sum += v * set.members[i].weight;
			mass += v;
		}
		const bool ok = set.kind == SosKind::SOS1
		                    ? count <= 1
		                    : count <= 1 || (count == 2 && last == first + 1);
		if (ok) return false;
		const double average = weight_sum / mass;
		int r = first;
		while (r + 1 < k && set.members[r + 1].weight <= average) ++r;
		const int lo = set.kind == SosKind::SOS1 ? first : first + 1;
		const int hi = last - 1;
		*split = std::clamp(r, lo, hi);
		return true;
	}

	void branch(long id) {
		const Node& node = nodes_[id];  // copy what we need before reallocation
		const BranchDecision decision = node.decision;
		const double parent_bound = node.bound;
		if (decision.kind == BranchKind::Variable) {
			const int j = decision.index;
			const double down = std::floor(decision.value);
			long child = make_node(id, {{j, -kInfinity, down}});
			evaluate(child, parent_bound);
			child = make_node(id, {{j, down + 1.0, kInfinity}});
			evaluate(child, parent_bound);
			return;
		}
		const SosSet& set = model_.sos_sets()[decision.index];
		const int k = static_cast<int>(set.members.size());
		// Left child keeps members [0, split]; for SOS2 the right child keeps
		// [split, k) so the boundary pair stays available, for SOS1 [split+1, k).
		std::vector<BoundChange> left, right;
		for (int i = decision.split + 1; i < k; ++i) {
			left.push_back({set.members[i].var, -kInfinity, 0.0});
		}
		const int right_first = set.kind == SosKind::SOS1 ? decision.split + 1 : decision.split;
		for (int i = 0; i < right_first; ++i) {
			right.push_back({set.members[i].var, -kInfinity, 0.0});
		}
		long child = make_node(id, std::move(left));
		evaluate(child, parent_bound);
		child = make_node(id, std::move(right));
		evaluate(child, parent_bound);
	}

	void accept_incumbent(const std::vector<double>& values) {
		std::vector<double> rounded = values;
		const auto& vars = model_.variables();
		for (int j = 0; j < model_.num_variables(); ++j) {
			if (vars[j].kind != VarKind::Continuous) rounded[j] = std::round(rounded[j]);
		}
		double objective = model_.objective_constant();
		const auto& coeffs = model_.objective_coefficients();
		for (int j = 0; j < model_.num_variables(); ++j) objective += coeffs[j] * rounded[j];
		const bool better = !incumbent_ || (maximize_ ? objective > incumbent_objective_ + 1e-12
		                                              : objective < incumbent_objective_ - 1e-12);
		if (!better) return;
		incumbent_ = true;
		incumbent_objective_ = objective;
		incumbent_values_ = std::move(rounded);
	}

	void finish(Solution& out, SolveStatus status, double bound) {
		out.status = status;
		out.nodes = nodes_evaluated_;
		out.lp_iterations = lp_iterations_;
		out.bound = bound;
		if (incumbent_) {
			out.objective = incumbent_objective_;
			out.values = incumbent_values_;
			// The dual bound can never sit on the wrong side of the incumbent.
			if (maximize_) {
				out.bound = std::max(out.bound, incumbent_objective_);
			} else {
				out.bound = std::min(out.bound, incumbent_objective_);
			}
		}
	}

	const Model& model_;
	const SolveParams& params_;
	bool maximize_;
	std::chrono::steady_clock::time_point start_;

	LpProblem lp_;  // scratch: rows fixed, bounds swapped per node
	std::vector<double> root_lower_, root_upper_;
	std::vector<Node> nodes_;
	std::vector<long> chain_;
	std::priority_queue<HeapEntry, std::vector<HeapEntry>, WorseBound> heap_{
	    WorseBound{maximize_}};

	bool incumbent_ = false;
	double incumbent_objective_ = 0.0;
	std::vector<double> incumbent_values_;
	long nodes_evaluated_ = 0;
	long lp_iterations_ = 0;
};

}  // namespace

Solution solve_mip(const Model& model, const SolveParams& params) {
	if (params.abs_gap <= 0 || params.rel_gap <= 0) {
		throw std::invalid_argument("gap tolerances must be positive");
	}
	if (params.time_limit && *params.time_limit <= 0) {
		throw std::invalid_argument("time_limit must be positive");
	}
	if (params.node_limit && *params.node_limit <= 0) {
		throw std::invalid_argument("node_limit must be positive");
	}
	Solver solver(model, params);
	return solver.run();
}

}  // namespace cellplan
