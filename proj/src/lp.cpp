#include "cellplan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cellplan {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr double kRatioTieTol = 1e-12;
constexpr long kDegeneratePivotsBeforeBland = 1000;

enum ColStatus : signed char { kAtLower, kAtUpper, kNonbasicFree, kBasic };

void validate(const LpProblem& p) {
	if (p.num_vars < 0) throw std::invalid_argument("negative variable count");
	const auto n = static_cast<size_t>(p.num_vars);
	if (p.objective.size() != n || p.lower.size() != n || p.upper.size() != n) {
		throw std::invalid_argument("objective/bound vectors must have num_vars entries");
	}
	for (int j = 0; j < p.num_vars; ++j) {
		if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]) || p.lower[j] > p.upper[j]) {
			throw std::invalid_argument("variable " + std::to_string(j) + " has lower > upper");
		}
		if (!std::isfinite(p.objective[j])) {
			throw std::invalid_argument("objective coefficient " + std::to_string(j) +
			                            " is not finite");
		}
	}
	std::vector<int> seen(n, -1);
	for (size_t r = 0; r < p.rows.size(); ++r) {
		const LpRow& row = p.rows[r];
		if (!std::isfinite(row.rhs)) throw std::invalid_argument("row rhs is not finite");
		for (const LinearTerm& t : row.terms) {
			if (t.var < 0 || t.var >= p.num_vars) {
				throw std::invalid_argument("row " + std::to_string(r) +
				                            " references variable index " + std::to_string(t.var));
			}
			if (!std::isfinite(t.coeff)) throw std::invalid_argument("row coefficient not finite");
			if (seen[t.var] == static_cast<int>(r)) {
				throw std::invalid_argument("row " + std::to_string(r) +
				                            " repeats variable index " + std::to_string(t.var));
			}
			seen[t.var] = static_cast<int>(r);
		}
	}
}

// Dense bounded-variable tableau. Column layout: structurals, then one
// slack per row, then the phase-1 artificials. The tableau always holds
// B^{-1}A; values of all columns (basic and nonbasic) live in x.
class Tableau {
   public:
	Tableau(const LpProblem& p, long max_iterations)
	    : n_(p.num_vars), m_(static_cast<int>(p.rows.size())), max_iterations_(max_iterations) {
		lb_ = p.lower;
		ub_ = p.upper;
		lb_.resize(n_ + m_);
		ub_.resize(n_ + m_);
		for (int i = 0; i < m_; ++i) {
			switch (p.rows[i].relation) {
				case Relation::LessEqual:
					lb_[n_ + i] = 0.0;
					ub_[n_ + i] = kInfinity;
					break;
				case Relation::GreaterEqual:
					lb_[n_ + i] = -kInfinity;
					ub_[n_ + i] = 0.0;
					break;
				case Relation::Equal:
					lb_[n_ + i] = 0.0;
					ub_[n_ + i] = 0.0;
					break;
			}
		}

		// Nonbasic start: every column at its nearest finite bound.
		x_.assign(n_ + m_, 0.0);
		status_.assign(n_ + m_, kNonbasicFree);
		for (int j = 0; j < n_ + m_; ++j) {
			if (std::isfinite(lb_[j])) {
				x_[j] = lb_[j];
				status_[j] = kAtLower;
			} else if (std::isfinite(ub_[j])) {
				x_[j] = ub_[j];
				status_[j] = kAtUpper;
			}
		}

		// Row activity of the structural part decides whether the slack can
		// start basic or an artificial has to patch the residual.
		std::vector<double> activity(m_, 0.0);
		for (int i = 0; i < m_; ++i) {
			for (const LinearTerm& t : p.rows[i].terms) activity[i] += t.coeff * x_[t.var];
		}
		basis_.assign(m_, -1);
		std::vector<double> artificial_value(m_, 0.0);
		int num_artificial = 0;
		for (int i = 0; i < m_; ++i) {
			const int s = n_ + i;
			const double v = p.rows[i].rhs - activity[i];
			if (v >= lb_[s] - kRatioTieTol && v <= ub_[s] + kRatioTieTol) {
				basis_[i] = s;
				x_[s] = std::clamp(v, lb_[s], ub_[s]);
				status_[s] = kBasic;
			} else {
				x_[s] = v < lb_[s] ? lb_[s] : ub_[s];
				status_[s] = v < lb_[s] ? kAtLower : kAtUpper;
				artificial_value[i] = v - x_[s];
				++num_artificial;
			}
		}

		ncols_ = n_ + m_ + num_artificial;
		lb_.resize(ncols_);
		ub_.resize(ncols_);
		x_.resize(ncols_, 0.0);
		status_.resize(ncols_, kAtLower);
		t_.assign(static_cast<size_t>(m_) * ncols_, 0.0);
		phase1_cost_.assign(ncols_, 0.0);

		int next_art = n_ + m_;
		for (int i = 0; i < m_; ++i) {
			double* row = t_.data() + static_cast<size_t>(i) * ncols_;
			for (const LinearTerm& t : p.rows[i].terms) row[t.var] = t.coeff;
			row[n_ + i] = 1.0;
			if (basis_[i] >= 0) continue;
			const int a = next_art++;
			const double r = artificial_value[i];
			row[a] = 1.0;
			basis_[i] = a;
			x_[a] = r;
			status_[a] = kBasic;
			if (r >= 0.0) {
				lb_[a] = 0.0;
				ub_[a] = kInfinity;
				phase1_cost_[a] = 1.0;
			} else {
				lb_[a] = -kInfinity;
				ub_[a] = 0.0;
				phase1_cost_[a] = -1.0;
			}
		}

		// Internal objective always minimizes.
		cost_.assign(ncols_, 0.0);
		const double flip = p.sense == Sense::Maximize ? -1.0 : 1.0;
		for (int j = 0; j < n_; ++j) cost_[j] = flip * p.objective[j];

		// Reduced-cost rows. The initial basis is all identity columns, so
		// d = c - c_B^T * T starts from c minus the basic artificial rows.
		d1_ = phase1_cost_;
		for (int i = 0; i < m_; ++i) {
			const double cb = phase1_cost_[basis_[i]];
			if (cb == 0.0) continue;
			const double* row = t_.data() + static_cast<size_t>(i) * ncols_;
			for (int j = 0; j < ncols_; ++j) d1_[j] -= cb * row[j];
		}
		d2_ = cost_;  // slacks and artificials have zero true cost
	}

	// Runs phase 1 then phase 2 and reports in the original sense.
	LpOutcome solve(const LpProblem& p) {
		price();
		double infeasibility = 0.0;
		for (int j = n_ + m_; j < ncols_; ++j) infeasibility += std::abs(x_[j]);
		if (infeasibility > kPhase1Tol) {
			LpOutcome out;
			out.status = LpStatus::Infeasible;
			out.iterations = iterations_;
			return out;
		}
		for (int j = n_ + m_; j < ncols_; ++j) {
			lb_[j] = 0.0;
			ub_[j] = 0.0;
		}
		phase1_active_ = false;
		degenerate_pivots_ = 0;
		bland_ = false;
		const bool bounded = price();

		LpOutcome out;
		out.iterations = iterations_;
		if (!bounded) {
			out.status = LpStatus::Unbounded;
			return out;
		}
		out.status = LpStatus::Optimal;
		out.values.assign(x_.begin(), x_.begin() + n_);
		double objective = 0.0;
		for (int j = 0; j < n_; ++j) objective += p.objective[j] * out.values[j];
		out.objective = objective;
		return out;
	}

   private:
	// Prices and pivots until no improving column remains. Returns false
	// when an unbounded improving ray was certified.
	bool price() {
		const std::vector<double>& d = phase1_active_ ? d1_ : d2_;
		for (;;) {
			if (iterations_ >= max_iterations_) {
				throw IterationLimitError("simplex iteration limit exceeded");
			}
			int entering = -1;
			int direction = 0;
			double best_violation = kDualTol;
			for (int j = 0; j < ncols_; ++j) {
				if (status_[j] == kBasic || lb_[j] == ub_[j]) continue;
				const double dj = d[j];
				int dir = 0;
				if (status_[j] == kAtLower) {
					if (dj < -kDualTol) dir = 1;
				} else if (status_[j] == kAtUpper) {
					if (dj > kDualTol) dir = -1;
				} else {
					if (dj < -kDualTol) dir = 1;
					else if (dj > kDualTol) dir = -1;
				}
				if (dir == 0) continue;
				if (bland_) {
					entering = j;
					direction = dir;
					break;
				}
				if (std::abs(dj) > best_violation) {
					best_violation = std::abs(dj);
					entering = j;
					direction = dir;
				}
			}
			if (entering < 0) return true;
			if (!step(entering, direction)) {
				if (phase1_active_) throw std::runtime_error("phase 1 produced an unbounded ray");
				return false;
			}
		}
	}

	// One ratio test plus pivot or bound flip for the entering column.
	// Returns false on an unbounded ray.
	bool step(int entering, int direction) {
		double flip_len = kInfinity;
		if (std::isfinite(lb_[entering]) && std::isfinite(ub_[entering])) {
			flip_len = ub_[entering] - lb_[entering];
		}
		int leave_row = -1;
		bool leave_to_upper = false;
		double t_best = kInfinity;
		for (int i = 0; i < m_; ++i) {
			const double alpha = t_[static_cast<size_t>(i) * ncols_ + entering];
			if (std::abs(alpha) <= kPivotTol) continue;
			const int k = basis_[i];
			const double delta = direction * alpha;  // x_k moves by -t*delta
			double ti;
			bool to_upper;
			if (delta > 0.0) {
				if (!std::isfinite(lb_[k])) continue;
				ti = (x_[k] - lb_[k]) / delta;
				to_upper = false;
			} else {
				if (!std::isfinite(ub_[k])) continue;
				ti = (x_[k] - ub_[k]) / delta;
				to_upper = true;
			}
			if (ti < 0.0) ti = 0.0;  // basic value drifted past its bound
			const bool take = ti < t_best - kRatioTieTol ||
			                  (ti <= t_best + kRatioTieTol &&
			                   (leave_row < 0 || k < basis_[leave_row]));
			if (take) {
				t_best = std::min(ti, t_best);
				leave_row = i;
				leave_to_upper = to_upper;
			}
		}

		++iterations_;
		if (flip_len <= t_best) {
			if (!std::isfinite(flip_len)) return false;  // unbounded ray
			apply_move(entering, direction, flip_len);
			status_[entering] = status_[entering] == kAtLower ? kAtUpper : kAtLower;
			return true;
		}

		if (t_best <= kRatioTieTol) {
			if (++degenerate_pivots_ >= kDegeneratePivotsBeforeBland) bland_ = true;
		}
		apply_move(entering, direction, t_best);
		const int leaving = basis_[leave_row];
		x_[leaving] = leave_to_upper ? ub_[leaving] : lb_[leaving];
		status_[leaving] = leave_to_upper ? kAtUpper : kAtLower;
		basis_[leave_row] = entering;
		status_[entering] = kBasic;
		eliminate(leave_row, entering);
		return true;
	}

	void apply_move(int entering, int direction, double t) {
		if (t == 0.0) return;
		const double step = direction * t;
		x_[entering] += step;
		for (int i = 0; i < m_; ++i) {
			const double alpha = t_[static_cast<size_t>(i) * ncols_ + entering];
			if (alpha != 0.0) x_[basis_[i]] -= step * alpha;
		}
	}

	// Gauss-Jordan elimination of the entering column, carried through the
	// reduced-cost rows still in play.
	void eliminate(int pivot_row, int entering) {
		double* prow = t_.data() + static_cast<size_t>(pivot_row) * ncols_;
		const double inv = 1.0 / prow[entering];
		for (int j = 0; j < ncols_; ++j) prow[j] *= inv;
		prow[entering] = 1.0;
		for (int i = 0; i < m_; ++i) {
			if (i == pivot_row) continue;
			double* row = t_.data() + static_cast<size_t>(i) * ncols_;
			const double factor = row[entering];
			if (std::abs(factor) <= 1e-13) {
				row[entering] = 0.0;
				continue;
			}
			for (int j = 0; j < ncols_; ++j) row[j] -= factor * prow[j];
			row[entering] = 0.0;
		}
		reduce_cost_row(d2_, prow, entering);
		if (phase1_active_) reduce_cost_row(d1_, prow, entering);
	}

	static void reduce_cost_row(std::vector<double>& d, const double* prow, int entering) {
		const double factor = d[entering];
		if (factor == 0.0) return;
		const int n = static_cast<int>(d.size());
		for (int j = 0; j < n; ++j) d[j] -= factor * prow[j];
		d[entering] = 0.0;
	}

	int n_ = 0;
	int m_ = 0;
	int ncols_ = 0;
	long max_iterations_ = 0;
	long iterations_ = 0;
	long degenerate_pivots_ = 0;
	bool bland_ = false;
	bool phase1_active_ = true;
	std::vector<double> t_;
	std::vector<double> lb_, ub_, x_;
	std::vector<signed char> status_;
	std::vector<int> basis_;
	std::vector<double> phase1_cost_, cost_;
	std::vector<double> d1_, d2_;
};

}  // namespace

LpOutcome solve_lp(const LpProblem& problem, long max_iterations) {
	validate(problem);
	if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
	Tableau tableau(problem, max_iterations);
	return tableau.solve(problem);
}

}  // namespace cellplan
