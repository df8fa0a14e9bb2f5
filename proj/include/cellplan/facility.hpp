#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellplan/model.hpp"

namespace cellplan {

// Candidate plant sites and customers on a plane. Construction cost is a
// piecewise-linear function of installed capacity given as breakpoints
// (capacity, cost), starting at (0, 0); `curve` on a site overrides the
// shared one. Transport cost is exact Euclidean distance per unit shipped.
struct FacilitySite {
	int id = 0;
	double x = 0.0;
	double y = 0.0;
	double capacity = 0.0;
	std::vector<std::pair<double, double>> curve;  // optional per-site breakpoints
};

struct FacilityCustomer {
	int id = 0;
	double x = 0.0;
	double y = 0.0;
	double demand = 0.0;
};

struct FacilityInstance {
	std::vector<FacilitySite> sites;
	std::vector<FacilityCustomer> customers;
	std::vector<std::pair<double, double>> shared_curve;
	std::optional<int> max_open;
	std::optional<int> min_open;
};

struct FacilityPlan {
	std::vector<int> open_sites;                      // site ids, ascending
	std::map<int, double> installed_capacity;         // site id -> units
	std::map<std::pair<int, int>, double> shipments;  // (site id, customer id) -> units
	double transport_cost = 0.0;
	double build_cost = 0.0;
	double total_cost = 0.0;
};

struct FacilityBuild {
	Model model;
	std::vector<std::vector<int>> ship_vars;    // [site][customer]
	std::vector<std::vector<int>> lambda_vars;  // [site][breakpoint]
	std::vector<int> capacity_vars;             // installed capacity per site
	std::vector<int> open_vars;                 // binary per site
};

void validate_instance(const FacilityInstance& instance);

const std::vector<std::pair<double, double>>& cost_curve(const FacilityInstance& instance,
                                                         int site);

double site_customer_distance(const FacilityInstance& instance, int site, int customer);

// Convex-combination variables over the cost breakpoints per site, tied
// together by one SOS2 set per site; shipments meet demand exactly and stay
// within installed capacity; an open binary gates capacity and feeds the
// optional cardinality rows; minimizes transport plus construction cost.
FacilityBuild build_facility(const FacilityInstance& instance);

FacilityPlan decode_facility(const Solution& solution, const FacilityBuild& build,
                             const FacilityInstance& instance);

// Replays a plan: demand met exactly, shipments within installed capacity,
// installed capacity within the site limit, costs consistent.
void check_plan(const FacilityInstance& instance, const FacilityPlan& plan);

}  // namespace cellplan
