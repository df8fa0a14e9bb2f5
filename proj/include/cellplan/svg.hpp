#pragma once

#include <string>
#include <vector>

#include "cellplan/facility.hpp"
#include "cellplan/scheduling.hpp"
#include "cellplan/tsp.hpp"

namespace cellplan {

struct GanttOptions {
	std::string title;
	std::vector<std::string> lane_labels;  // indexed by Schedule::Task::lane
	struct ResourceStrip {
		std::string label;
		double capacity = 0.0;
		std::vector<double> usage;  // one value per unit time step
	};
	std::vector<ResourceStrip> strips;
};

// Gantt chart: one horizontal lane per machine or job, one rectangle per
// task, optional per-resource usage strips underneath. Returns a complete
// standalone SVG document.
std::string render_gantt(const Schedule& schedule, const GanttOptions& options = {});

// Tour plot: nodes on their given coordinates, or a deterministic
// equal-angle circle layout when no coordinates exist; one edge per hop.
struct PlanePoint {
	double x = 0.0;
	double y = 0.0;
};
std::string render_tour(const Tour& tour, const std::vector<std::string>& names,
                        const std::vector<PlanePoint>& coords = {});

// Site/customer map with one edge per shipment.
std::string render_facility(const FacilityPlan& plan, const FacilityInstance& instance);

}  // namespace cellplan
