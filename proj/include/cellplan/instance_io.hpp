#pragma once

#include <string>

#include <json.hpp>

#include "cellplan/facility.hpp"
#include "cellplan/knapsack.hpp"
#include "cellplan/scheduling.hpp"
#include "cellplan/tsp.hpp"

namespace cellplan {

// Instance file schemas. All loaders validate the parsed instance and
// throw std::runtime_error with a readable message on bad files.
//
//   knapsack: {"profits": [...], "weights": [...], "capacity": c}
//   tsp:      {"names": [...], "tri": [[...], ..., []]}
//             or {"names": [...], "matrix": [[...]]}
//   rcpsp:    {"durations": [...], "usages": [[...]], "capacities": [...],
//              "precedence": [[j, s], ...], "horizon": optional}
//   jobshop:  {"times": [[...]], "machines": [[...]]}   (1-based machines)
//   facility: {"sites": [{"id", "x", "y", "capacity", "cost_curve"?}, ...],
//              "customers": [{"id", "x", "y", "demand"}, ...],
//              "cost_curve": [[z, cost], ...]?, "max_open"?, "min_open"?}

KnapsackInstance parse_knapsack(const nlohmann::json& j);
TspInstance parse_tsp(const nlohmann::json& j);
RcpspInstance parse_rcpsp(const nlohmann::json& j);
JobShopInstance parse_jobshop(const nlohmann::json& j);
FacilityInstance parse_facility(const nlohmann::json& j);

KnapsackInstance load_knapsack(const std::string& path);
TspInstance load_tsp(const std::string& path);
RcpspInstance load_rcpsp(const std::string& path);
JobShopInstance load_jobshop(const std::string& path);
FacilityInstance load_facility(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

// Decoded-plan payloads as emitted under "plan" in --output files.
nlohmann::json plan_to_json(const KnapsackPlan& plan);
nlohmann::json plan_to_json(const Tour& tour, const TspInstance& instance);
nlohmann::json plan_to_json(const Schedule& schedule);
nlohmann::json plan_to_json(const FacilityPlan& plan);

KnapsackPlan knapsack_plan_from_json(const nlohmann::json& j);
Tour tour_from_json(const nlohmann::json& j);
Schedule schedule_from_json(const nlohmann::json& j);
FacilityPlan facility_plan_from_json(const nlohmann::json& j);

}  // namespace cellplan
