#include "cellplan/facility.hpp"

#include <algorithm>
#include <cmath>

namespace cellplan {
namespace {

void validate_curve(const std::vector<std::pair<double, double>>& curve, const std::string& where) {
	if (curve.size() < 2) throw std::invalid_argument(where + ": curve needs >= 2 breakpoints");
	if (curve.front().first != 0.0 || curve.front().second != 0.0) {
		throw std::invalid_argument(where + ": curve must start at capacity 0 with cost 0");
	}
	for (size_t k = 0; k < curve.size(); ++k) {
		if (!std::isfinite(curve[k].first) || !std::isfinite(curve[k].second)) {
			throw std::invalid_argument(where + ": curve values must be finite");
		}
		if (k > 0 && !(curve[k].first > curve[k - 1].first)) {
			throw std::invalid_argument(where + ": curve capacities must be strictly increasing");
		}
	}
}

// Piecewise-linear construction cost at installed capacity z.
double curve_cost_at(const std::vector<std::pair<double, double>>& curve, double z) {
	if (z <= curve.front().first) return curve.front().second;
	for (size_t k = 1; k < curve.size(); ++k) {
		if (z <= curve[k].first + 1e-9) {
			const auto& [z0, c0] = curve[k - 1];
			const auto& [z1, c1] = curve[k];
			return c0 + (c1 - c0) * (z - z0) / (z1 - z0);
		}
	}
	return curve.back().second;
}

}  // namespace

void validate_instance(const FacilityInstance& instance) {
	if (instance.sites.empty()) throw std::invalid_argument("no candidate sites");
	for (const FacilitySite& site : instance.sites) {
		if (!std::isfinite(site.x) || !std::isfinite(site.y)) {
			throw std::invalid_argument("site coordinates must be finite");
		}
		if (!std::isfinite(site.capacity) || site.capacity < 0) {
			throw std::invalid_argument("site capacity must be >= 0");
		}
		if (!site.curve.empty()) {
			validate_curve(site.curve, "site " + std::to_string(site.id));
		} else if (instance.shared_curve.empty()) {
			throw std::invalid_argument("site " + std::to_string(site.id) +
			                            " has no cost curve and no shared curve exists");
		}
	}
	if (!instance.shared_curve.empty()) validate_curve(instance.shared_curve, "shared curve");
	for (const FacilityCustomer& customer : instance.customers) {
		if (!std::isfinite(customer.x) || !std::isfinite(customer.y)) {
			throw std::invalid_argument("customer coordinates must be finite");
		}
		if (!std::isfinite(customer.demand) || customer.demand < 0) {
			throw std::invalid_argument("customer demand must be >= 0");
		}
	}
	for (int count : {instance.max_open.value_or(0), instance.min_open.value_or(0)}) {
		if (count < 0) throw std::invalid_argument("open-site counts must be >= 0");
	}
	std::vector<int> ids;
	for (const FacilitySite& site : instance.sites) ids.push_back(site.id);
	std::sort(ids.begin(), ids.end());
	if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
		throw std::invalid_argument("duplicate site id");
	}
	ids.clear();
	for (const FacilityCustomer& customer : instance.customers) ids.push_back(customer.id);
	std::sort(ids.begin(), ids.end());
	if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
		throw std::invalid_argument("duplicate customer id");
	}
}

const std::vector<std::pair<double, double>>& cost_curve(const FacilityInstance& instance,
                                                         int site) {
	const FacilitySite& s = instance.sites.at(site);
	return s.curve.empty() ? instance.shared_curve : s.curve;
}

double site_customer_distance(const FacilityInstance& instance, int site, int customer) {
	const FacilitySite& s = instance.sites.at(site);
	const FacilityCustomer& c = instance.customers.at(customer);
	return std::hypot(s.x - c.x, s.y - c.y);
}

FacilityBuild build_facility(const FacilityInstance& instance) {
	validate_instance(instance);
	const int num_sites = static_cast<int>(instance.sites.size());
	const int num_customers = static_cast<int>(instance.customers.size());

	FacilityBuild build{Model(Sense::Minimize), {}, {}, {}, {}};
	Model& model = build.model;
	std::vector<LinearTerm> objective;

	build.ship_vars.assign(num_sites, std::vector<int>(num_customers, -1));
	build.lambda_vars.resize(num_sites);
	for (int f = 0; f < num_sites; ++f) {
		const FacilitySite& site = instance.sites[f];
		const auto& curve = cost_curve(instance, f);
		const std::string tag = std::to_string(site.id);

		for (int c = 0; c < num_customers; ++c) {
			const int var = model.add_variable(
			    "ship_" + tag + "_" + std::to_string(instance.customers[c].id), 0, kInfinity,
			    VarKind::Continuous);
			build.ship_vars[f][c] = var;
			objective.push_back({var, site_customer_distance(instance, f, c)});
		}

		std::vector<SosMember> sos;
		std::vector<LinearTerm> convexity, capacity_link;
		for (size_t k = 0; k < curve.size(); ++k) {
			const int var = model.add_variable("lam_" + tag + "_" + std::to_string(k), 0, 1,
			                                   VarKind::Continuous);
			build.lambda_vars[f].push_back(var);
			sos.push_back({var, curve[k].first});
			convexity.push_back({var, 1.0});
			capacity_link.push_back({var, -curve[k].first});
			if (curve[k].second != 0.0) objective.push_back({var, curve[k].second});
		}
		model.add_sos(SosKind::SOS2, sos);
		model.add_linear_constraint(convexity, Relation::Equal, 1.0);

		const double z_max = std::min(site.capacity, curve.back().first);
		const int z = model.add_variable("cap_" + tag, 0, z_max, VarKind::Continuous);
		build.capacity_vars.push_back(z);
		capacity_link.push_back({z, 1.0});
		model.add_linear_constraint(capacity_link, Relation::Equal, 0.0);

		const int open = model.add_variable("open_" + tag, 0, 1, VarKind::Binary);
		build.open_vars.push_back(open);
		// z <= capacity * open keeps closed sites at zero installed capacity.
		model.add_linear_constraint({{z, 1.0}, {open, -site.capacity}}, Relation::LessEqual, 0.0);

		std::vector<LinearTerm> outflow;
		for (int c = 0; c < num_customers; ++c) outflow.push_back({build.ship_vars[f][c], 1.0});
		outflow.push_back({z, -1.0});
		model.add_linear_constraint(outflow, Relation::LessEqual, 0.0);
	}

	for (int c = 0; c < num_customers; ++c) {
		std::vector<LinearTerm> inflow;
		for (int f = 0; f < num_sites; ++f) inflow.push_back({build.ship_vars[f][c], 1.0});
		model.add_linear_constraint(inflow, Relation::Equal, instance.customers[c].demand);
	}

	if (instance.max_open || instance.min_open) {
		std::vector<LinearTerm> open_count;
		for (int f = 0; f < num_sites; ++f) open_count.push_back({build.open_vars[f], 1.0});
		if (instance.max_open) {
			model.add_linear_constraint(open_count, Relation::LessEqual, *instance.max_open);
		}
		if (instance.min_open) {
			model.add_linear_constraint(open_count, Relation::GreaterEqual, *instance.min_open);
		}
	}

	model.set_objective(objective);
	return build;
}

FacilityPlan decode_facility(const Solution& solution, const FacilityBuild& build,
                             const FacilityInstance& instance) {
	if (!solution.has_incumbent()) throw std::invalid_argument("solution has no incumbent");
	FacilityPlan plan;
	for (size_t f = 0; f < instance.sites.size(); ++f) {
		const FacilitySite& site = instance.sites[f];
		const double z = solution.values.at(build.capacity_vars[f]);
		if (z > 1e-6) {
			plan.open_sites.push_back(site.id);
			plan.installed_capacity[site.id] = z;
		}
		const auto& curve = cost_curve(instance, static_cast<int>(f));
		for (size_t k = 0; k < curve.size(); ++k) {
			plan.build_cost += curve[k].second * solution.values.at(build.lambda_vars[f][k]);
		}
		for (size_t c = 0; c < instance.customers.size(); ++c) {
			const double units = solution.values.at(build.ship_vars[f][c]);
			if (units > 1e-9) {
				plan.shipments[{site.id, instance.customers[c].id}] = units;
				plan.transport_cost +=
				    units * site_customer_distance(instance, static_cast<int>(f),
				                                   static_cast<int>(c));
			}
		}
	}
	std::sort(plan.open_sites.begin(), plan.open_sites.end());
	plan.total_cost = plan.transport_cost + plan.build_cost;
	return plan;
}

void check_plan(const FacilityInstance& instance, const FacilityPlan& plan) {
	std::map<int, int> site_pos, customer_pos;
	for (size_t f = 0; f < instance.sites.size(); ++f) site_pos[instance.sites[f].id] = f;
	for (size_t c = 0; c < instance.customers.size(); ++c) {
		customer_pos[instance.customers[c].id] = c;
	}

	std::map<int, double> outflow;
	std::map<int, double> inflow;
	double transport = 0.0;
	for (const auto& [key, units] : plan.shipments) {
		const auto& [site_id, customer_id] = key;
		if (!site_pos.count(site_id) || !customer_pos.count(customer_id)) {
			throw std::runtime_error("shipment references an unknown site or customer");
		}
		if (units < -1e-9) throw std::runtime_error("negative shipment");
		outflow[site_id] += units;
		inflow[customer_id] += units;
		transport += units * site_customer_distance(instance, site_pos[site_id],
		                                            customer_pos[customer_id]);
	}
	for (const FacilityCustomer& customer : instance.customers) {
		if (std::abs(inflow[customer.id] - customer.demand) > 1e-6) {
			throw std::runtime_error("customer " + std::to_string(customer.id) +
			                         " demand not met exactly");
		}
	}
	double build = 0.0;
	for (const FacilitySite& site : instance.sites) {
		const auto it = plan.installed_capacity.find(site.id);
		const double z = it == plan.installed_capacity.end() ? 0.0 : it->second;
		if (z < -1e-9 || z > site.capacity + 1e-6) {
			throw std::runtime_error("site " + std::to_string(site.id) +
			                         " installed capacity out of range");
		}
		if (outflow[site.id] > z + 1e-6) {
			throw std::runtime_error("site " + std::to_string(site.id) +
			                         " ships more than its installed capacity");
		}
		const auto& curve = cost_curve(instance, site_pos[site.id]);
		if (z > curve.back().first + 1e-6) {
			throw std::runtime_error("site " + std::to_string(site.id) +
			                         " exceeds its cost-curve range");
		}
		build += curve_cost_at(curve, z);
	}
	if (std::abs(transport - plan.transport_cost) > 1e-6 * (1 + std::abs(transport))) {
		throw std::runtime_error("transport cost mismatch");
	}
	if (std::abs(build - plan.build_cost) > 1e-6 * (1 + std::abs(build))) {
		throw std::runtime_error("build cost mismatch");
	}
	if (std::abs(plan.total_cost - plan.transport_cost - plan.build_cost) > 1e-6) {
		throw std::runtime_error("total cost mismatch");
	}
}

}  // namespace cellplan
