#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnsstrade/pipeline.hpp"

// Result persistence (CSV/JSON) and the SVG plot emitters. All writers are
// deterministic: identical results produce byte-identical files.

namespace gnsstrade::io {

using nlohmann::json;
using pipeline::RunResult;

namespace detail {

inline std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << content;
}

}  // namespace detail

inline std::string metrics_csv_header() {
  return "id,altitude_km,n_sats,inclination_deg,n_planes,rx_power_dbw,n_freqs,lifetime_yr,"
         "nav_error_m,total_cost_busd,sc_power_w,dry_mass_kg,wet_mass_kg,unit_cost_musd,"
         "launch_cost_musd,gdop_worst,uere_m,decorr_time_min,pareto_rank,feasible,reject_reason,"
         "bus_name,bus_extrapolated,launch_per_kg,is_reference\n";
}

inline std::string metrics_csv_row(int id, const tradespace::ArchitectureMetrics& m) {
  using detail::fmt;
  const auto& d = m.decisions;
  std::string row;
  row += std::to_string(id) + ',';
  row += fmt(d.altitude_km) + ',' + std::to_string(d.n_sats) + ',' + fmt(d.inclination_deg) + ',' +
         std::to_string(d.n_planes) + ',' + fmt(d.rx_power_dbw) + ',' + std::to_string(d.n_freqs) +
         ',' + std::to_string(d.lifetime_yr) + ',';
  row += fmt(m.nav_error_m) + ',' + fmt(m.total_cost_busd) + ',' + fmt(m.sc_power_w) + ',' +
         fmt(m.dry_mass_kg) + ',' + fmt(m.wet_mass_kg) + ',' + fmt(m.unit_cost_musd) + ',' +
         fmt(m.launch_cost_musd) + ',' + fmt(m.gdop_worst) + ',' + fmt(m.uere_m) + ',' +
         fmt(m.decorr_time_min) + ',';
  row += std::to_string(m.pareto_rank) + ',';
  row += (m.reject == tradespace::RejectReason::kNone ? "1" : "0");
  row += ',';
  row += tradespace::reject_reason_name(m.reject);
  row += ',';
  row += m.bus_name + ',' + (m.bus_extrapolated ? "1" : "0") + ',' + (m.launch_per_kg ? "1" : "0") +
         ',' + (m.is_reference ? m.reference_name : "0") + '\n';
  return row;
}

// architectures.csv: one row per feasible architecture plus the references.
inline void write_architectures_csv(const std::filesystem::path& path, const RunResult& res) {
  std::string out = metrics_csv_header();
  int id = 0;
  for (std::size_t i : res.feasible_indices) out += metrics_csv_row(++id, res.all[i]);
  for (const auto& ref : res.references) out += metrics_csv_row(++id, ref);
  detail::write_file(path, out);
}

// rejections.csv: per-stage counts plus one row per rejected vector.
inline void write_rejections_csv(const std::filesystem::path& path, const RunResult& res) {
  std::string out = "stage,count\n";
  out += "enumerated," + std::to_string(res.counts.enumerated) + '\n';
  out += "divisibility," + std::to_string(res.counts.rejected_divisibility) + '\n';
  out += "regime_rules," + std::to_string(res.counts.rejected_regime) + '\n';
  out += "coverage," + std::to_string(res.counts.rejected_coverage) + '\n';
  out += "gdop_gate," + std::to_string(res.counts.rejected_gdop) + '\n';
  out += "cost_cap," + std::to_string(res.counts.rejected_cost) + '\n';
  out += "feasible," + std::to_string(res.counts.feasible) + '\n';
  out += "\naltitude_km,n_sats,inclination_deg,n_planes,rx_power_dbw,n_freqs,lifetime_yr,reason\n";
  for (const auto& m : res.all) {
    if (m.reject == tradespace::RejectReason::kNone) continue;
    const auto& d = m.decisions;
    out += detail::fmt(d.altitude_km) + ',' + std::to_string(d.n_sats) + ',' +
           detail::fmt(d.inclination_deg) + ',' + std::to_string(d.n_planes) + ',' +
           detail::fmt(d.rx_power_dbw) + ',' + std::to_string(d.n_freqs) + ',' +
           std::to_string(d.lifetime_yr) + ',' + tradespace::reject_reason_name(m.reject) + '\n';
  }
  detail::write_file(path, out);
}

inline json decisions_to_json(const tradespace::DecisionVector& d) {
  return {{"altitude_km", d.altitude_km}, {"n_sats", d.n_sats},
          {"inclination_deg", d.inclination_deg}, {"n_planes", d.n_planes},
          {"rx_power_dbw", d.rx_power_dbw}, {"n_freqs", d.n_freqs},
          {"lifetime_yr", d.lifetime_yr}};
}

// pareto.json: the rank-1 architectures with their metric rows.
inline void write_pareto_json(const std::filesystem::path& path, const RunResult& res) {
  json j;
  j["front"] = json::array();
  for (std::size_t i : res.feasible_indices) {
    const auto& m = res.all[i];
    if (m.pareto_rank != 1) continue;
    json row = decisions_to_json(m.decisions);
    row["nav_error_m"] = m.nav_error_m;
    row["total_cost_busd"] = m.total_cost_busd;
    row["sc_power_w"] = m.sc_power_w;
    row["dry_mass_kg"] = m.dry_mass_kg;
    row["wet_mass_kg"] = m.wet_mass_kg;
    row["unit_cost_musd"] = m.unit_cost_musd;
    row["launch_cost_musd"] = m.launch_cost_musd;
    row["gdop_worst"] = m.gdop_worst;
    row["uere_m"] = m.uere_m;
    row["decorr_time_min"] = m.decorr_time_min;
    j["front"].push_back(row);
  }
  j["references"] = json::array();
  for (const auto& ref : res.references) {
    json row = decisions_to_json(ref.decisions);
    row["name"] = ref.reference_name;
    row["nav_error_m"] = ref.nav_error_m;
    row["total_cost_busd"] = ref.total_cost_busd;
    row["pareto_rank"] = ref.pareto_rank;
    j["references"].push_back(row);
  }
  detail::write_file(path, j.dump(2) + "\n");
}

inline void write_rules_json(const std::filesystem::path& path, const RunResult& res,
                             const std::map<std::string, std::vector<pipeline::RegimeRule>>&
                                 regime_rules) {
  json j;
  j["rule_sets"] = json::array();
  for (const auto& set : res.rules) {
    json s;
    s["population"] = set.population_name;
    s["rules"] = json::array();
    for (const auto& r : set.rules) {
      s["rules"].push_back({{"feature", r.antecedent.describe()},
                            {"target", r.target_name},
                            {"supp_x", r.support_x},
                            {"supp_y", r.support_y},
                            {"supp_xy", r.support_xy},
                            {"conf_x_y", r.confidence_xy},
                            {"conf_y_x", r.confidence_yx},
                            {"lift_x_y", r.lift}});
    }
    auto it = regime_rules.find(set.population_name);
    if (it != regime_rules.end()) {
      s["regime_rules"] = json::array();
      for (const auto& r : it->second) {
        s["regime_rules"].push_back({{"regime", tradespace::orbit_regime_name(r.regime)},
                                     {"supp_x", r.support_x},
                                     {"supp_y", r.support_y},
                                     {"conf_x_y", r.confidence_xy},
                                     {"conf_y_x", r.confidence_yx},
                                     {"lift_x_y", r.lift}});
      }
    }
    j["rule_sets"].push_back(s);
  }
  detail::write_file(path, j.dump(2) + "\n");
}

inline void write_sobol_json(const std::filesystem::path& path, const RunResult& res) {
  json j;
  j["indices"] = json::array();
  for (const auto& row : res.sobol) {
    j["indices"].push_back({{"metric", row.metric},
                            {"decision", analytics::decision_name(row.decision)},
                            {"first_order", row.index.first_order},
                            {"total_order", row.index.total_order}});
  }
  detail::write_file(path, j.dump(2) + "\n");
}

// scenarios.csv: per-architecture non-dominated share across the sweep.
inline void write_scenarios_csv(const std::filesystem::path& path, const RunResult& res) {
  std::string out =
      "altitude_km,n_sats,inclination_deg,n_planes,rx_power_dbw,n_freqs,lifetime_yr,"
      "non_dominated_share\n";
  std::vector<std::size_t> order(res.sweep.non_dominated_share.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return res.sweep.non_dominated_share[a] > res.sweep.non_dominated_share[b];
  });
  for (std::size_t k : order) {
    const auto& d = res.all[res.feasible_indices[k]].decisions;
    out += detail::fmt(d.altitude_km) + ',' + std::to_string(d.n_sats) + ',' +
           detail::fmt(d.inclination_deg) + ',' + std::to_string(d.n_planes) + ',' +
           detail::fmt(d.rx_power_dbw) + ',' + std::to_string(d.n_freqs) + ',' +
           std::to_string(d.lifetime_yr) + ',' +
           detail::fmt(res.sweep.non_dominated_share[k], "%.6f") + '\n';
  }
  detail::write_file(path, out);
}

inline void write_manifest(const std::filesystem::path& path, const config::RunConfig& cfg,
                           const RunResult& res) {
  json j;
  j["config"] = config::to_json(cfg);
  j["counts"] = {{"enumerated", res.counts.enumerated},
                 {"divisibility", res.counts.rejected_divisibility},
                 {"regime_rules", res.counts.rejected_regime},
                 {"coverage", res.counts.rejected_coverage},
                 {"gdop_gate", res.counts.rejected_gdop},
                 {"cost_cap", res.counts.rejected_cost},
                 {"feasible", res.counts.feasible}};
  j["gdop_cache_size"] = res.gdop_cache_size;
  detail::write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// SVG plots (data reproduction, minimal styling)

namespace svg {

struct Mapper {
  double x0, x1, y0, y1;  // data ranges
  double w = 760, h = 520, ml = 60, mb = 40, mt = 20, mr = 20;
  double px(double x) const { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); }
  double py(double y) const { return h - mb - (y - y0) / (y1 - y0) * (h - mb - mt); }
};

inline std::string header(double w = 760, double h = 520) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(w) + "\" height=\"" +
         detail::fmt(h) + "\" viewBox=\"0 0 " + detail::fmt(w) + " " + detail::fmt(h) + "\">\n";
}

inline std::string circle(double x, double y, double r, const std::string& color) {
  return "<circle cx=\"" + detail::fmt(x, "%.2f") + "\" cy=\"" + detail::fmt(y, "%.2f") +
         "\" r=\"" + detail::fmt(r, "%.2f") + "\" fill=\"" + color + "\" fill-opacity=\"0.7\"/>\n";
}

inline std::string text(double x, double y, const std::string& s, int size = 12) {
  return "<text x=\"" + detail::fmt(x, "%.1f") + "\" y=\"" + detail::fmt(y, "%.1f") +
         "\" font-size=\"" + std::to_string(size) + "\" font-family=\"sans-serif\">" + s +
         "</text>\n";
}

inline std::string polyline(const std::vector<std::pair<double, double>>& pts,
                            const std::string& color) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) s += detail::fmt(x, "%.2f") + "," + detail::fmt(y, "%.2f") + " ";
  s += "\"/>\n";
  return s;
}

inline std::string axes(const Mapper& m, const std::string& xlabel, const std::string& ylabel) {
  std::string s;
  s += "<line x1=\"" + detail::fmt(m.ml) + "\" y1=\"" + detail::fmt(m.h - m.mb) + "\" x2=\"" +
       detail::fmt(m.w - m.mr) + "\" y2=\"" + detail::fmt(m.h - m.mb) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + detail::fmt(m.ml) + "\" y1=\"" + detail::fmt(m.mt) + "\" x2=\"" +
       detail::fmt(m.ml) + "\" y2=\"" + detail::fmt(m.h - m.mb) + "\" stroke=\"black\"/>\n";
  s += text(m.w / 2 - 40, m.h - 8, xlabel);
  s += text(8, m.mt + 10, ylabel);
  return s;
}

}  // namespace svg

// Cost vs navigation error scatter, Pareto front highlighted, by orbit regime.
inline void write_tradespace_svg(const std::filesystem::path& path, const RunResult& res) {
  double max_nav = 0, max_cost = 0;
  std::size_t n = 0;
  for (std::size_t i : res.feasible_indices) {
    max_nav = std::max(max_nav, res.all[i].nav_error_m);
    max_cost = std::max(max_cost, res.all[i].total_cost_busd);
    ++n;
  }
  if (n == 0)
    throw ModelError(ErrorCode::kInvalidInput, "empty feasible set: nothing to plot");
  svg::Mapper m{0, max_nav * 1.05, 0, max_cost * 1.05};
  std::string s = svg::header();
  s += svg::axes(m, "NAV error [m]", "cost [$B]");
  auto regime_color = [](tradespace::OrbitRegime r) {
    switch (r) {
      case tradespace::OrbitRegime::kLeo: return "#1f77b4";
      case tradespace::OrbitRegime::kLowMeo: return "#2ca02c";
      case tradespace::OrbitRegime::kMeo: return "#9467bd";
      case tradespace::OrbitRegime::kHighMeo: return "#8c564b";
    }
    return "#333333";
  };
  for (std::size_t i : res.feasible_indices) {
    const auto& a = res.all[i];
    if (a.pareto_rank == 1) continue;
    s += svg::circle(m.px(a.nav_error_m), m.py(a.total_cost_busd), 2.0,
                     regime_color(tradespace::orbit_regime(a.decisions.altitude_km)));
  }
  for (std::size_t i : res.feasible_indices) {
    const auto& a = res.all[i];
    if (a.pareto_rank != 1) continue;
    s += svg::circle(m.px(a.nav_error_m), m.py(a.total_cost_busd), 3.5, "red");
  }
  for (const auto& ref : res.references) {
    s += svg::circle(m.px(ref.nav_error_m), m.py(ref.total_cost_busd), 4.0, "black");
    s += svg::text(m.px(ref.nav_error_m) + 5, m.py(ref.total_cost_busd) - 5, ref.reference_name);
  }
  s += "</svg>\n";
  detail::write_file(path, s);
}

// Worst average GDOP by latitude for the reference constellations.
inline void write_gdop_latitude_svg(const std::filesystem::path& path,
                                    const std::vector<std::pair<std::string, std::map<int, double>>>&
                                        profiles) {
  if (profiles.empty()) throw ModelError(ErrorCode::kInvalidInput, "no profiles to plot");
  double ymax = 0;
  for (const auto& [name, prof] : profiles)
    for (const auto& [lat, v] : prof) ymax = std::max(ymax, v);
  svg::Mapper m{-90, 90, 0, ymax * 1.1};
  std::string s = svg::header();
  s += svg::axes(m, "latitude [deg]", "worst avg GDOP");
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  int ci = 0;
  for (const auto& [name, prof] : profiles) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [lat, v] : prof) pts.emplace_back(m.px(lat), m.py(v));
    const char* color = colors[ci % 4];
    s += svg::polyline(pts, color);
    s += svg::text(m.w - 140, m.mt + 16.0 * (ci + 1), name + " (" + color + ")");
    ++ci;
  }
  s += "</svg>\n";
  detail::write_file(path, s);
}

// Intact vs failed worst-site GDOP latitude profiles.
inline void write_failure_svg(const std::filesystem::path& path,
                              const std::vector<analytics::FailureStudyEntry>& entries) {
  if (entries.empty()) throw ModelError(ErrorCode::kInvalidInput, "no failure study to plot");
  std::vector<std::pair<std::string, std::map<int, double>>> profiles;
  for (const auto& e : entries) {
    char label[96];
    std::snprintf(label, sizeof(label), "%d sats @ %.0f km", e.architecture.n_sats,
                  e.architecture.altitude_km);
    profiles.emplace_back(std::string(label) + " intact", e.intact_latitude_profile);
    profiles.emplace_back(std::string(label) + " failed", e.failed_latitude_profile);
  }
  write_gdop_latitude_svg(path, profiles);
}

// Fuzzy-front regime shares against one scenario knob (bar-chart data).
inline void write_fuzzy_share_svg(const std::filesystem::path& path,
                                  const std::vector<double>& knob_values,
                                  const std::vector<std::array<double, 4>>& shares,
                                  const std::string& knob_name) {
  if (knob_values.empty() || knob_values.size() != shares.size())
    throw ModelError(ErrorCode::kInvalidInput, "fuzzy-share data mismatch");
  svg::Mapper m{-0.5, static_cast<double>(knob_values.size()) - 0.5, 0, 1.0};
  std::string s = svg::header();
  s += svg::axes(m, knob_name, "share of fuzzy front");
  const char* colors[4] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
  const char* names[4] = {"LEO", "Low MEO", "MEO", "High MEO"};
  for (int r = 0; r < 4; ++r) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < shares.size(); ++k)
      pts.emplace_back(m.px(static_cast<double>(k)), m.py(shares[k][static_cast<std::size_t>(r)]));
    s += svg::polyline(pts, colors[r]);
    s += svg::text(m.w - 130, m.mt + 16.0 * (r + 1), names[r]);
  }
  for (std::size_t k = 0; k < knob_values.size(); ++k)
    s += svg::text(m.px(static_cast<double>(k)) - 10, m.h - m.mb + 16, detail::fmt(knob_values[k]));
  s += "</svg>\n";
  detail::write_file(path, s);
}

}  // namespace gnsstrade::io
