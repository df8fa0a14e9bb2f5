#include "cellplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cellplan {
namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                                    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac"};
constexpr int kPaletteSize = 10;

std::string escape(const std::string& text) {
	std::string out;
	out.reserve(text.size());
	for (char c : text) {
		switch (c) {
			case '&': out += "&amp;"; break;
			case '<': out += "&lt;"; break;
			case '>': out += "&gt;"; break;
			case '"': out += "&quot;"; break;
			case '\'': out += "&apos;"; break;
			default: out += c;
		}
	}
	return out;
}

std::string num(double v) {
	std::ostringstream s;
	s.precision(3);
	s << std::fixed << v;
	std::string out = s.str();
	out.erase(out.find_last_not_of('0') + 1);
	if (!out.empty() && out.back() == '.') out.pop_back();
	if (out == "-0") out = "0";
	return out;
}

class SvgDoc {
   public:
	SvgDoc(double width, double height) : width_(width), height_(height) {
		body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
		      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
		      << num(height) << "\">\n";
		body_ << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
		      << "\" fill=\"white\"/>\n";
	}

	void rect(double x, double y, double w, double h, const std::string& fill,
	          const std::string& stroke = "none") {
		body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
		      << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
		      << "\"/>\n";
	}

	void line(double x1, double y1, double x2, double y2, const std::string& stroke,
	          double width = 1.0, bool dashed = false) {
		body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
		      << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
		      << num(width) << "\"";
		if (dashed) body_ << " stroke-dasharray=\"4 3\"";
		body_ << "/>\n";
	}

	void circle(double cx, double cy, double r, const std::string& fill) {
		body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
		      << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
	}

	void text(double x, double y, const std::string& content, int size = 12,
	          const std::string& anchor = "start", const std::string& fill = "#222222") {
		body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
		      << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\" fill=\"" << fill
		      << "\">" << escape(content) << "</text>\n";
	}

	std::string finish() {
		body_ << "</svg>\n";
		return body_.str();
	}

   private:
	double width_, height_;
	std::ostringstream body_;
};

int axis_step(double makespan) {
	if (makespan <= 20) return 1;
	if (makespan <= 60) return 5;
	return static_cast<int>(std::ceil(makespan / 12.0));
}

}  // namespace

std::string render_gantt(const Schedule& schedule, const GanttOptions& options) {
	int max_lane = -1;
	for (const Schedule::Task& task : schedule.tasks) max_lane = std::max(max_lane, task.lane);
	const int lanes = max_lane + 1;
	const double makespan = std::max(schedule.makespan, 1.0);

	const double left = 90, top = 40, lane_height = 26, lane_gap = 6;
	const double chart_width = 720;
	const double strip_height = 60, strip_gap = 24;
	const double chart_height = lanes * (lane_height + lane_gap);
	const double height = top + chart_height + 40 +
	                      options.strips.size() * (strip_height + strip_gap) + 20;
	const double scale = chart_width / makespan;

	SvgDoc doc(left + chart_width + 40, height);
	if (!options.title.empty()) doc.text(left, 22, options.title, 15);

	const double axis_y = top + chart_height + 6;
	doc.line(left, top - 4, left, axis_y, "#333333");
	doc.line(left, axis_y, left + chart_width, axis_y, "#333333");
	for (int t = 0; t <= static_cast<int>(std::ceil(makespan)); t += axis_step(makespan)) {
		const double x = left + t * scale;
		doc.line(x, axis_y, x, axis_y + 4, "#333333");
		doc.text(x, axis_y + 16, std::to_string(t), 10, "middle");
	}

	for (int lane = 0; lane < lanes; ++lane) {
		const double y = top + lane * (lane_height + lane_gap) + lane_height / 2 + 4;
		std::string label = lane < static_cast<int>(options.lane_labels.size())
		                        ? options.lane_labels[lane]
		                        : "lane " + std::to_string(lane);
		doc.text(left - 8, y, label, 11, "end");
	}

	for (const Schedule::Task& task : schedule.tasks) {
		if (task.duration <= 0) continue;
		const double x = left + task.start * scale;
		const double y = top + task.lane * (lane_height + lane_gap);
		const double w = task.duration * scale;
		doc.rect(x, y, w, lane_height, kPalette[task.lane % kPaletteSize], "#333333");
		if (w > 24) doc.text(x + w / 2, y + lane_height / 2 + 4, task.label, 10, "middle", "white");
	}

	double strip_top = top + chart_height + 36;
	for (size_t r = 0; r < options.strips.size(); ++r) {
		const GanttOptions::ResourceStrip& strip = options.strips[r];
		const double peak = std::max(strip.capacity, 1.0);
		const double base = strip_top + strip_height;
		doc.text(left - 8, strip_top + strip_height / 2, strip.label, 11, "end");
		doc.line(left, base, left + chart_width, base, "#333333");
		for (size_t t = 0; t < strip.usage.size(); ++t) {
			const double h = strip.usage[t] / peak * (strip_height - 10);
			if (h <= 0) continue;
			doc.rect(left + t * scale, base - h, scale, h, kPalette[(r + 2) % kPaletteSize]);
		}
		const double cap_y = base - strip.capacity / peak * (strip_height - 10);
		doc.line(left, cap_y, left + chart_width, cap_y, "#e15759", 1.0, true);
		strip_top += strip_height + strip_gap;
	}
	return doc.finish();
}

std::string render_tour(const Tour& tour, const std::vector<std::string>& names,
                        const std::vector<PlanePoint>& coords) {
	const int n = static_cast<int>(names.size());
	std::vector<PlanePoint> points(n);
	if (!coords.empty()) {
		points = coords;
	} else {
		// deterministic equal-angle placement, depot at the top
		for (int i = 0; i < n; ++i) {
			const double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * i / std::max(n, 1);
			points[i] = {std::cos(angle), std::sin(angle)};
		}
	}

	double min_x = kInfinity, max_x = -kInfinity, min_y = kInfinity, max_y = -kInfinity;
	for (const PlanePoint& p : points) {
		min_x = std::min(min_x, p.x);
		max_x = std::max(max_x, p.x);
		min_y = std::min(min_y, p.y);
		max_y = std::max(max_y, p.y);
	}
	const double span_x = std::max(max_x - min_x, 1e-9);
	const double span_y = std::max(max_y - min_y, 1e-9);
	const double margin = 70, size = 520;
	auto px = [&](const PlanePoint& p) { return margin + (p.x - min_x) / span_x * size; };
	auto py = [&](const PlanePoint& p) { return margin + (p.y - min_y) / span_y * size; };

	SvgDoc doc(size + 2 * margin, size + 2 * margin + 20);
	for (size_t k = 0; k + 1 < tour.order.size(); ++k) {
		const PlanePoint& a = points.at(tour.order[k]);
		const PlanePoint& b = points.at(tour.order[k + 1]);
		doc.line(px(a), py(a), px(b), py(b), "#4e79a7", 1.6);
	}
	for (int i = 0; i < n; ++i) {
		doc.circle(px(points[i]), py(points[i]), i == 0 ? 7 : 5,
		           i == 0 ? "#e15759" : "#f5c518");
		doc.text(px(points[i]), py(points[i]) - 10, names[i], 11, "middle");
	}
	doc.text(margin, size + 2 * margin + 8,
	         "tour length " + num(tour.length), 13);
	return doc.finish();
}

std::string render_facility(const FacilityPlan& plan, const FacilityInstance& instance) {
	double min_x = kInfinity, max_x = -kInfinity, min_y = kInfinity, max_y = -kInfinity;
	auto stretch = [&](double x, double y) {
		min_x = std::min(min_x, x);
		max_x = std::max(max_x, x);
		min_y = std::min(min_y, y);
		max_y = std::max(max_y, y);
	};
	for (const FacilitySite& s : instance.sites) stretch(s.x, s.y);
	for (const FacilityCustomer& c : instance.customers) stretch(c.x, c.y);
	const double span_x = std::max(max_x - min_x, 1e-9);
	const double span_y = std::max(max_y - min_y, 1e-9);
	const double margin = 70, size = 520;
	auto px = [&](double x) { return margin + (x - min_x) / span_x * size; };
	auto py = [&](double y) { return margin + (max_y - y) / span_y * size; };

	std::map<int, const FacilitySite*> sites;
	for (const FacilitySite& s : instance.sites) sites[s.id] = &s;
	std::map<int, const FacilityCustomer*> customers;
	for (const FacilityCustomer& c : instance.customers) customers[c.id] = &c;

	double max_units = 1e-9;
	for (const auto& [key, units] : plan.shipments) max_units = std::max(max_units, units);

	SvgDoc doc(size + 2 * margin, size + 2 * margin + 20);
	for (const auto& [key, units] : plan.shipments) {
		const FacilitySite* s = sites.at(key.first);
		const FacilityCustomer* c = customers.at(key.second);
		doc.line(px(s->x), py(s->y), px(c->x), py(c->y), "#76b7b2",
		         0.8 + 2.4 * units / max_units);
	}
	for (const FacilityCustomer& c : instance.customers) {
		doc.circle(px(c.x), py(c.y), 5, "#f5c518");
		doc.text(px(c.x), py(c.y) - 9, "c" + std::to_string(c.id), 10, "middle");
	}
	const auto open_end = plan.open_sites.end();
	for (const FacilitySite& s : instance.sites) {
		const bool open = std::find(plan.open_sites.begin(), open_end, s.id) != open_end;
		doc.rect(px(s.x) - 7, py(s.y) - 7, 14, 14, open ? "#e15759" : "#d0d0d0", "#333333");
		doc.text(px(s.x), py(s.y) - 11, "site " + std::to_string(s.id), 10, "middle");
	}
	doc.text(margin, size + 2 * margin + 8, "total cost " + num(plan.total_cost), 13);
	return doc.finish();
}

}  // namespace cellplan
