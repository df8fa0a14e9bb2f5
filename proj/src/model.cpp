#include "cellplan/model.hpp"

#include <algorithm>
#include <cmath>

namespace cellplan {

int Model::add_variable(const std::string& name, double lower, double upper, VarKind kind) {
	if (name.empty()) throw std::invalid_argument("variable name must not be empty");
	if (index_by_name_.count(name)) {
		throw std::invalid_argument("duplicate variable name: " + name);
	}
	if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
		throw std::invalid_argument("variable " + name + " has lower > upper");
	}
	if (kind == VarKind::Binary) {
		lower = std::max(lower, 0.0);
		upper = std::min(upper, 1.0);
		if (lower > upper) throw std::invalid_argument("binary " + name + " has empty bounds");
	}
	const int index = static_cast<int>(vars_.size());
	vars_.push_back({name, lower, upper, kind});
	index_by_name_[name] = index;
	objective_.push_back(0.0);
	return index;
}

int Model::add_linear_constraint(std::vector<LinearTerm> terms, Relation relation, double rhs) {
	std::vector<LinearTerm> merged;
	merged.reserve(terms.size());
	std::map<int, size_t> position;
	for (const LinearTerm& t : terms) {
		if (t.var < 0 || t.var >= num_variables()) {
			throw std::invalid_argument("constraint references variable index " +
			                            std::to_string(t.var));
		}
		if (!std::isfinite(t.coeff)) throw std::invalid_argument("constraint coefficient not finite");
		auto it = position.find(t.var);
		if (it == position.end()) {
			position[t.var] = merged.size();
			merged.push_back(t);
		} else {
			merged[it->second].coeff += t.coeff;
		}
	}
	if (!std::isfinite(rhs)) throw std::invalid_argument("constraint rhs not finite");
	rows_.push_back({std::move(merged), relation, rhs});
	return static_cast<int>(rows_.size()) - 1;
}

int Model::add_sos(SosKind kind, std::vector<SosMember> members) {
	if (members.size() < 2) throw std::invalid_argument("an SOS set needs at least 2 members");
	std::vector<int> seen;
	for (size_t k = 0; k < members.size(); ++k) {
		const SosMember& m = members[k];
		if (m.var < 0 || m.var >= num_variables()) {
			throw std::invalid_argument("SOS member references variable index " +
			                            std::to_string(m.var));
		}
		if (!std::isfinite(m.weight)) throw std::invalid_argument("SOS weight not finite");
		if (k > 0 && !(m.weight > members[k - 1].weight)) {
			throw std::invalid_argument("SOS weights must be strictly increasing");
		}
		seen.push_back(m.var);
	}
	std::sort(seen.begin(), seen.end());
	if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
		throw std::invalid_argument("SOS set repeats a variable");
	}
	sos_.push_back({kind, std::move(members)});
	return static_cast<int>(sos_.size()) - 1;
}

void Model::set_objective(const std::vector<LinearTerm>& terms, double constant) {
	if (!std::isfinite(constant)) throw std::invalid_argument("objective constant not finite");
	std::fill(objective_.begin(), objective_.end(), 0.0);
	for (const LinearTerm& t : terms) {
		if (t.var < 0 || t.var >= num_variables()) {
			throw std::invalid_argument("objective references variable index " +
			                            std::to_string(t.var));
		}
		if (!std::isfinite(t.coeff)) throw std::invalid_argument("objective coefficient not finite");
		objective_[t.var] += t.coeff;
	}
	objective_constant_ = constant;
}

}  // namespace cellplan
