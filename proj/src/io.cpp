#include "uwbsim/io.hpp"

#include <fmt/format.h>

#include "uwbsim/csv.hpp"
#include "uwbsim/error.hpp"
#include "uwbsim/reference.hpp"

namespace uwbsim::io {

namespace {

template <typename T>
T required(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(fmt::format("{}: missing key '{}'", where, key));
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(fmt::format("{}: bad value for '{}': {}", where, key, e.what()));
  }
}

template <typename T>
T optional_or(const Json& j, const char* key, T fallback, std::string_view where) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return required<T>(j, key, where);
}

// Wraps domain exceptions thrown while building values from config.
template <typename F>
auto guarded(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", where, e.what()));
  }
}

Point3 point_from_json(const Json& j, std::string_view where) {
  if (j.is_array()) {
    if (j.size() != 3) throw ConfigError(fmt::format("{}: point arrays need 3 coordinates", where));
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  }
  return {required<double>(j, "x", where), required<double>(j, "y", where), required<double>(j, "z", where)};
}

Json point_to_json(const Point3& p) { return {{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

std::string_view to_string(RegularizationMode m) { return m == RegularizationMode::mean ? "mean" : "median"; }

RegularizationMode regularization_mode_from_string(const std::string& s) {
  if (s == "median") return RegularizationMode::median;
  if (s == "mean") return RegularizationMode::mean;
  throw ConfigError(fmt::format("solver.x_r_mode: unknown mode '{}' (expected median or mean)", s));
}

Scenario building_study(std::string name, std::optional<WallMaterial> wall) {
  Scenario s;
  s.name = std::move(name);
  s.area = {0.0, 0.0, 9.0, 20.0};
  // Opposing corners share a height.
  s.anchors = {
      {"A1", {0.0, 0.0, 3.0}},
      {"A2", {9.0, 0.0, 2.7}},
      {"A3", {9.0, 20.0, 3.0}},
      {"A4", {0.0, 20.0, 2.7}},
  };
  if (wall) s.walls.push_back({{0.0, 13.0}, {9.0, 13.0}, *wall});
  s.grid_step = 0.25;
  s.tag_height = 1.2;
  s.runs = 5;
  s.seed = 42;
  s.models = reference::default_model_table();
  s.solver = SolverConfig{};
  return s;
}

}  // namespace

Json to_json(const ErrorDistribution& dist) {
  Json params;
  if (const auto* g = std::get_if<Gaussian>(&dist.params())) {
    params = {{"mu", g->mu}, {"sigma", g->sigma}};
  } else if (const auto* b = std::get_if<BurrXII>(&dist.params())) {
    params = {{"c", b->c}, {"d", b->d}, {"mu", b->mu}, {"sigma", b->sigma}};
  } else if (const auto* l = std::get_if<LogNormal>(&dist.params())) {
    params = {{"s", l->s}, {"mu", l->mu}, {"sigma", l->sigma}};
  }
  return {{"family", std::string(to_string(dist.family()))}, {"params", params}};
}

ErrorDistribution distribution_from_json(const Json& j) {
  constexpr std::string_view where = "distribution";
  const auto family_name = required<std::string>(j, "family", where);
  const Json params = required<Json>(j, "params", where);
  return guarded(where, [&]() -> ErrorDistribution {
    switch (family_from_string(family_name)) {
      case Family::gaussian:
        return Gaussian{required<double>(params, "mu", "params"), required<double>(params, "sigma", "params")};
      case Family::burr12:
        return BurrXII{required<double>(params, "c", "params"), required<double>(params, "d", "params"),
                       required<double>(params, "mu", "params"), required<double>(params, "sigma", "params")};
      case Family::lognormal:
        return LogNormal{required<double>(params, "s", "params"), required<double>(params, "mu", "params"),
                         required<double>(params, "sigma", "params")};
    }
    throw ConfigError("unreachable family");
  });
}

Json to_json(const SolverConfig& c) {
  Json j = {{"delta", c.delta}, {"k_max", c.k_max}, {"c", c.c}, {"x_r_mode", std::string(to_string(c.x_r_mode))}};
  if (c.x_r) j["x_r"] = point_to_json(*c.x_r);
  if (c.x0) j["x0"] = point_to_json(*c.x0);
  if (!c.weights.empty()) j["weights"] = c.weights;
  return j;
}

SolverConfig solver_config_from_json(const Json& j) {
  constexpr std::string_view where = "solver";
  SolverConfig c;
  if (j.is_null()) return c;
  c.delta = optional_or(j, "delta", c.delta, where);
  c.k_max = optional_or(j, "k_max", c.k_max, where);
  c.c = optional_or(j, "c", c.c, where);
  c.x_r_mode = regularization_mode_from_string(optional_or<std::string>(j, "x_r_mode", "median", where));
  if (j.contains("x_r") && !j["x_r"].is_null()) c.x_r = point_from_json(j["x_r"], "solver.x_r");
  if (j.contains("x0") && !j["x0"].is_null()) c.x0 = point_from_json(j["x0"], "solver.x0");
  c.weights = optional_or(j, "weights", std::vector<double>{}, where);
  guarded(where, [&] {
    c.validate();
    return 0;
  });
  return c;
}

std::vector<Anchor> anchors_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("anchors: expected an array");
  std::vector<Anchor> anchors;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = fmt::format("anchors[{}]", i);
    const Json& a = j[i];
    std::string id = a.contains("id") ? a["id"].is_string() ? a["id"].get<std::string>() : a["id"].dump()
                                      : fmt::format("A{}", i + 1);
    anchors.push_back({std::move(id), point_from_json(a, where)});
  }
  guarded("anchors", [&] {
    validate(anchors);
    return 0;
  });
  return anchors;
}

Json to_json(std::span<const Anchor> anchors) {
  Json arr = Json::array();
  for (const Anchor& a : anchors) {
    arr.push_back({{"id", a.id}, {"x", a.position.x}, {"y", a.position.y}, {"z", a.position.z}});
  }
  return arr;
}

Scenario scenario_from_json(const Json& j) {
  constexpr std::string_view where = "scenario";
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  Scenario s;
  s.name = optional_or<std::string>(j, "name", "custom", where);

  const Json area = required<Json>(j, "area", where);
  s.area.x0 = optional_or(area, "x0", 0.0, "area");
  s.area.y0 = optional_or(area, "y0", 0.0, "area");
  s.area.width = required<double>(area, "w", "area");
  s.area.height = required<double>(area, "h", "area");

  s.anchors = anchors_from_json(required<Json>(j, "anchors", where));

  if (j.contains("walls")) {
    const Json& walls = j["walls"];
    if (!walls.is_array()) throw ConfigError("walls: expected an array");
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const std::string w = fmt::format("walls[{}]", i);
      Wall wall{{required<double>(walls[i], "ax", w), required<double>(walls[i], "ay", w)},
                {required<double>(walls[i], "bx", w), required<double>(walls[i], "by", w)},
                WallMaterial::drywall};
      wall.material = guarded(w, [&] { return wall_material_from_string(required<std::string>(walls[i], "material", w)); });
      s.walls.push_back(wall);
    }
  }

  s.grid_step = optional_or(j, "grid_step", s.grid_step, where);
  s.tag_height = optional_or(j, "tag_height", s.tag_height, where);
  s.runs = optional_or(j, "runs", s.runs, where);
  s.seed = optional_or<std::uint64_t>(j, "seed", s.seed, where);

  if (j.contains("models")) {
    const Json& models = j["models"];
    if (!models.is_object()) throw ConfigError("models: expected an object");
    for (const auto& [key, value] : models.items()) {
      const LinkCondition cond = guarded("models", [&] { return link_condition_from_string(key); });
      s.models.insert_or_assign(cond, distribution_from_json(value));
    }
  } else {
    s.models = reference::default_model_table();
  }

  s.solver = solver_config_from_json(j.value("solver", Json()));

  if (j.contains("diversity") && !j["diversity"].is_null()) {
    const Json& d = j["diversity"];
    DiversityConfig div;
    div.channels = optional_or<std::size_t>(d, "channels", div.channels, "diversity");
    div.strategy = guarded("diversity", [&] {
      return diversity_strategy_from_string(optional_or<std::string>(d, "strategy", "min", "diversity"));
    });
    s.diversity = div;
  }
  if (j.contains("fixed_uniform") && !j["fixed_uniform"].is_null()) {
    s.fixed_uniform = required<double>(j, "fixed_uniform", where);
  }

  guarded(where, [&] {
    s.validate();
    return 0;
  });
  return s;
}

Json to_json(const Scenario& s) {
  Json walls = Json::array();
  for (const Wall& w : s.walls) {
    walls.push_back({{"ax", w.a.x}, {"ay", w.a.y}, {"bx", w.b.x}, {"by", w.b.y},
                     {"material", std::string(to_string(w.material))}});
  }
  Json models = Json::object();
  for (const auto& [cond, dist] : s.models) models[std::string(to_string(cond))] = to_json(dist);
  Json j = {{"name", s.name},
            {"area", {{"x0", s.area.x0}, {"y0", s.area.y0}, {"w", s.area.width}, {"h", s.area.height}}},
            {"anchors", to_json(std::span<const Anchor>(s.anchors))},
            {"walls", walls},
            {"grid_step", s.grid_step},
            {"tag_height", s.tag_height},
            {"runs", s.runs},
            {"seed", s.seed},
            {"models", models},
            {"solver", to_json(s.solver)}};
  j["diversity"] = s.diversity ? Json{{"channels", s.diversity->channels},
                                      {"strategy", std::string(to_string(s.diversity->strategy))}}
                               : Json();
  if (s.fixed_uniform) j["fixed_uniform"] = *s.fixed_uniform;
  return j;
}

std::optional<Scenario> preset_scenario(std::string_view name) {
  if (name == "paper-los") return building_study("paper-los", std::nullopt);
  if (name == "paper-drywall") return building_study("paper-drywall", WallMaterial::drywall);
  if (name == "paper-concrete") return building_study("paper-concrete", WallMaterial::concrete);
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"paper-los", "paper-drywall", "paper-concrete"}; }

PowerProfile profile_from_json(const Json& j) {
  constexpr std::string_view where = "profile";
  PowerProfile p;
  p.name = optional_or<std::string>(j, "name", "custom", where);
  p.p_tx = required<double>(j, "p_tx", where);
  p.p_rx = required<double>(j, "p_rx", where);
  p.p_idle = required<double>(j, "p_idle", where);
  p.p_sleep = required<double>(j, "p_sleep", where);
  p.t_packet = required<double>(j, "t_packet", where);
  p.e_transition = optional_or(j, "e_transition", 0.0, where);
  guarded(where, [&] {
    p.validate();
    return 0;
  });
  return p;
}

Json to_json(const PowerProfile& p) {
  return {{"name", p.name},         {"p_tx", p.p_tx},         {"p_rx", p.p_rx},
          {"p_idle", p.p_idle},     {"p_sleep", p.p_sleep},   {"t_packet", p.t_packet},
          {"e_transition", p.e_transition}};
}

SolveRequest solve_request_from_json(const Json& j) {
  constexpr std::string_view where = "solve input";
  SolveRequest r;
  r.anchors = anchors_from_json(required<Json>(j, "anchors", where));
  r.distances = required<std::vector<double>>(j, "distances", where);
  if (r.distances.size() != r.anchors.size()) {
    throw ConfigError(fmt::format("{}: {} distances for {} anchors", where, r.distances.size(), r.anchors.size()));
  }
  r.config = solver_config_from_json(j.value("config", Json()));
  return r;
}

Json to_json(const LocationEstimate& est) {
  return {{"position", point_to_json(est.position)},
          {"iterations", est.iterations},
          {"converged", est.converged},
          {"final_step_norm", est.final_step_norm}};
}

Json to_json(const Aggregate& agg, bool with_ecdf) {
  Json j = {{"count", agg.count}, {"mean", agg.mean}, {"std", agg.stddev}, {"q1", agg.q1},
            {"median", agg.median}, {"q3", agg.q3}, {"iqr", agg.iqr},     {"min", agg.min},
            {"max", agg.max}};
  if (with_ecdf) {
    Json e = Json::array();
    for (const auto& [v, p] : agg.ecdf) e.push_back({v, p});
    j["ecdf"] = e;
  }
  return j;
}

Json to_json(const FitResult& fit) {
  return {{"family", std::string(to_string(fit.family))},
          {"params", to_json(fit.params)["params"]},
          {"nll", fit.nll},
          {"sse", fit.sse},
          {"converged", fit.converged},
          {"iterations", fit.iterations},
          {"evaluations", fit.evaluations}};
}

Json fit_report(std::span<const RankedFit> ranking, std::size_t samples, std::size_t bins) {
  Json fits = Json::array();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const RankedFit& r = ranking[i];
    Json entry = {{"rank", i + 1}, {"family", std::string(to_string(r.family))}};
    if (r.fit) {
      Json f = to_json(*r.fit);
      entry["params"] = f["params"];
      entry["nll"] = f["nll"];
      entry["sse"] = r.sse;
      entry["iterations"] = f["iterations"];
    } else {
      entry["error"] = r.error;
    }
    fits.push_back(entry);
  }
  return {{"samples", samples}, {"bins", bins}, {"ranking", fits}};
}

void write_points_csv(std::ostream& out, const RunStatistics& stats) {
  out << "run,px,py,pz,ex,ey,ez,err2d_m,err3d_m,conditions\n";
  for (const PointRecord& r : stats.points) {
    std::string conds;
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      if (i) conds += '|';
      conds += to_string(r.conditions[i]);
    }
    if (r.failed) {
      out << fmt::format("{},{},{},{},,,,,,{}\n", r.run, format_double(r.truth.x), format_double(r.truth.y),
                         format_double(r.truth.z), conds);
      continue;
    }
    out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.run, format_double(r.truth.x), format_double(r.truth.y),
                       format_double(r.truth.z), format_double(r.estimate.x), format_double(r.estimate.y),
                       format_double(r.estimate.z), format_double(r.err2d), format_double(r.err3d), conds);
  }
}

void write_ecdf_csv(std::ostream& out, const RunStatistics& stats) {
  out << "err2d_m,probability\n";
  for (const auto& [v, p] : stats.planar.ecdf) out << format_double(v) << ',' << format_double(p) << '\n';
}

Json run_report(const Scenario& scenario, const RunStatistics& stats) {
  return {{"scenario", scenario.name},
          {"seed", scenario.seed},
          {"runs", stats.runs},
          {"grid_points", stats.grid_points},
          {"samples", stats.points.size()},
          {"failed", stats.failed},
          {"err2d_m", to_json(stats.planar)},
          {"err3d_m", to_json(stats.spatial)}};
}

}  // namespace uwbsim::io
