#include "cellplan/instance_io.hpp"

#include <fstream>

namespace cellplan {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
	const auto it = j.find(key);
	if (it == j.end()) throw std::runtime_error(std::string("missing key \"") + key + "\"");
	return *it;
}

std::vector<double> number_list(const json& j, const char* key) {
	const json& field = require(j, key);
	if (!field.is_array()) throw std::runtime_error(std::string(key) + " must be an array");
	std::vector<double> out;
	for (const json& v : field) {
		if (!v.is_number()) throw std::runtime_error(std::string(key) + " must hold numbers");
		out.push_back(v.get<double>());
	}
	return out;
}

std::vector<std::vector<double>> number_matrix(const json& field, const char* key) {
	if (!field.is_array()) throw std::runtime_error(std::string(key) + " must be an array");
	std::vector<std::vector<double>> out;
	for (const json& row : field) {
		if (!row.is_array()) throw std::runtime_error(std::string(key) + " rows must be arrays");
		out.emplace_back();
		for (const json& v : row) {
			if (!v.is_number()) throw std::runtime_error(std::string(key) + " must hold numbers");
			out.back().push_back(v.get<double>());
		}
	}
	return out;
}

int integral(const json& v, const char* what) {
	if (v.is_number_integer()) return v.get<int>();
	if (v.is_number()) {
		const double d = v.get<double>();
		if (d == static_cast<int>(d)) return static_cast<int>(d);
	}
	throw std::runtime_error(std::string(what) + " must be an integer");
}

std::vector<std::pair<double, double>> curve_from_json(const json& field, const char* what) {
	std::vector<std::pair<double, double>> curve;
	if (!field.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
	for (const json& bp : field) {
		if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
			throw std::runtime_error(std::string(what) + " breakpoints must be [capacity, cost]");
		}
		curve.push_back({bp[0].get<double>(), bp[1].get<double>()});
	}
	return curve;
}

}  // namespace

json load_json_file(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path);
	json j;
	try {
		in >> j;
	} catch (const json::parse_error& e) {
		throw std::runtime_error(path + ": " + e.what());
	}
	return j;
}

KnapsackInstance parse_knapsack(const json& j) {
	KnapsackInstance instance;
	instance.profits = number_list(j, "profits");
	instance.weights = number_list(j, "weights");
	const json& c = require(j, "capacity");
	if (!c.is_number()) throw std::runtime_error("capacity must be a number");
	instance.capacity = c.get<double>();
	validate_instance(instance);
	return instance;
}

TspInstance parse_tsp(const json& j) {
	TspInstance instance;
	for (const json& name : require(j, "names")) {
		if (!name.is_string()) throw std::runtime_error("names must be strings");
		instance.names.push_back(name.get<std::string>());
	}
	if (j.contains("tri")) {
		instance.dist = expand_triangular(number_matrix(j["tri"], "tri"));
	} else if (j.contains("matrix")) {
		instance.dist = number_matrix(j["matrix"], "matrix");
	} else {
		throw std::runtime_error("tsp instance needs \"tri\" or \"matrix\"");
	}
	validate_instance(instance);
	return instance;
}

RcpspInstance parse_rcpsp(const json& j) {
	RcpspInstance instance;
	for (const json& d : require(j, "durations")) {
		instance.durations.push_back(integral(d, "durations"));
	}
	instance.usages = number_matrix(require(j, "usages"), "usages");
	instance.capacities = number_list(j, "capacities");
	for (const json& pair : require(j, "precedence")) {
		if (!pair.is_array() || pair.size() != 2) {
			throw std::runtime_error("precedence entries must be [predecessor, successor]");
		}
		instance.precedence.push_back({integral(pair[0], "precedence"),
		                               integral(pair[1], "precedence")});
	}
	if (j.contains("horizon")) instance.horizon = integral(j["horizon"], "horizon");
	validate_instance(instance);
	return instance;
}

JobShopInstance parse_jobshop(const json& j) {
	JobShopInstance instance;
	instance.times = number_matrix(require(j, "times"), "times");
	for (const json& row : require(j, "machines")) {
		if (!row.is_array()) throw std::runtime_error("machines rows must be arrays");
		instance.machines.emplace_back();
		for (const json& m : row) instance.machines.back().push_back(integral(m, "machines"));
	}
	validate_instance(instance);
	return instance;
}

FacilityInstance parse_facility(const json& j) {
	FacilityInstance instance;
	for (const json& s : require(j, "sites")) {
		FacilitySite site;
		site.id = integral(require(s, "id"), "site id");
		site.x = require(s, "x").get<double>();
		site.y = require(s, "y").get<double>();
		site.capacity = require(s, "capacity").get<double>();
		if (s.contains("cost_curve")) {
			site.curve = curve_from_json(s["cost_curve"], "site cost_curve");
		}
		instance.sites.push_back(std::move(site));
	}
	for (const json& c : require(j, "customers")) {
		FacilityCustomer customer;
		customer.id = integral(require(c, "id"), "customer id");
		customer.x = require(c, "x").get<double>();
		customer.y = require(c, "y").get<double>();
		customer.demand = require(c, "demand").get<double>();
		instance.customers.push_back(customer);
	}
	if (j.contains("cost_curve")) {
		instance.shared_curve = curve_from_json(j["cost_curve"], "cost_curve");
	}
	if (j.contains("max_open")) instance.max_open = integral(j["max_open"], "max_open");
	if (j.contains("min_open")) instance.min_open = integral(j["min_open"], "min_open");
	validate_instance(instance);
	return instance;
}

KnapsackInstance load_knapsack(const std::string& path) {
	return parse_knapsack(load_json_file(path));
}
TspInstance load_tsp(const std::string& path) { return parse_tsp(load_json_file(path)); }
RcpspInstance load_rcpsp(const std::string& path) { return parse_rcpsp(load_json_file(path)); }
JobShopInstance load_jobshop(const std::string& path) {
	return parse_jobshop(load_json_file(path));
}
FacilityInstance load_facility(const std::string& path) {
	return parse_facility(load_json_file(path));
}

json plan_to_json(const KnapsackPlan& plan) {
	json labels = json::array();
	for (int i : plan.chosen) labels.push_back(i + 1);
	return {{"chosen", plan.chosen},
	        {"chosen_labels", labels},
	        {"profit", plan.profit},
	        {"load", plan.load}};
}

json plan_to_json(const Tour& tour, const TspInstance& instance) {
	json names = json::array();
	for (int node : tour.order) names.push_back(instance.names.at(node));
	return {{"order", tour.order}, {"stops", names}, {"length", tour.length}};
}

json plan_to_json(const Schedule& schedule) {
	json tasks = json::array();
	for (const Schedule::Task& task : schedule.tasks) {
		tasks.push_back({{"label", task.label},
		                 {"lane", task.lane},
		                 {"start", task.start},
		                 {"duration", task.duration}});
	}
	return {{"starts", schedule.starts}, {"makespan", schedule.makespan}, {"tasks", tasks}};
}

json plan_to_json(const FacilityPlan& plan) {
	json capacity = json::object();
	for (const auto& [site, units] : plan.installed_capacity) {
		capacity[std::to_string(site)] = units;
	}
	json shipments = json::array();
	for (const auto& [key, units] : plan.shipments) {
		shipments.push_back({{"site", key.first}, {"customer", key.second}, {"units", units}});
	}
	return {{"open_sites", plan.open_sites},
	        {"installed_capacity", capacity},
	        {"shipments", shipments},
	        {"transport_cost", plan.transport_cost},
	        {"build_cost", plan.build_cost},
	        {"total_cost", plan.total_cost}};
}

KnapsackPlan knapsack_plan_from_json(const json& j) {
	KnapsackPlan plan;
	for (const json& i : require(j, "chosen")) plan.chosen.push_back(integral(i, "chosen"));
	plan.profit = require(j, "profit").get<double>();
	plan.load = require(j, "load").get<double>();
	return plan;
}

Tour tour_from_json(const json& j) {
	Tour tour;
	for (const json& i : require(j, "order")) tour.order.push_back(integral(i, "order"));
	tour.length = require(j, "length").get<double>();
	return tour;
}

Schedule schedule_from_json(const json& j) {
	Schedule schedule;
	for (const auto& [key, value] : require(j, "starts").items()) {
		schedule.starts[key] = value.get<double>();
	}
	schedule.makespan = require(j, "makespan").get<double>();
	for (const json& t : require(j, "tasks")) {
		schedule.tasks.push_back({require(t, "label").get<std::string>(),
		                          integral(require(t, "lane"), "lane"),
		                          require(t, "start").get<double>(),
		                          require(t, "duration").get<double>()});
	}
	return schedule;
}

FacilityPlan facility_plan_from_json(const json& j) {
	FacilityPlan plan;
	for (const json& i : require(j, "open_sites")) {
		plan.open_sites.push_back(integral(i, "open_sites"));
	}
	for (const auto& [key, value] : require(j, "installed_capacity").items()) {
		plan.installed_capacity[std::stoi(key)] = value.get<double>();
	}
	for (const json& s : require(j, "shipments")) {
		plan.shipments[{integral(require(s, "site"), "site"),
		                integral(require(s, "customer"), "customer")}] =
		    require(s, "units").get<double>();
	}
	plan.transport_cost = require(j, "transport_cost").get<double>();
	plan.build_cost = require(j, "build_cost").get<double>();
	plan.total_cost = require(j, "total_cost").get<double>();
	return plan;
}

}  // namespace cellplan
