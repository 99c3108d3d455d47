#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "uwbsim/csv.hpp"
#include "uwbsim/error.hpp"
#include "uwbsim/io.hpp"
#include "uwbsim/reference.hpp"

using namespace uwbsim;
using io::Json;

TEST(Json, DistributionRoundTrip) {
  for (const auto& m : reference::fitted_models()) {
    const Json j = io::to_json(m.model);
    EXPECT_EQ(io::distribution_from_json(j), m.model) << m.name;
    // Through text as well.
    EXPECT_EQ(io::distribution_from_json(Json::parse(j.dump())), m.model) << m.name;
  }
}

TEST(Json, DistributionErrorsNameTheKey) {
  try {
    io::distribution_from_json(Json::parse(R"({"family":"gaussian","params":{"mu":0}})"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("sigma"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::distribution_from_json(Json::parse(R"({"family":"weibull","params":{}})")), ConfigError);
  EXPECT_THROW(io::distribution_from_json(Json::parse(R"({"family":"gaussian","params":{"mu":0,"sigma":-1}})")),
               ConfigError);
}

TEST(Json, SolverConfigRoundTrip) {
  SolverConfig c;
  c.delta = 1e-4;
  c.k_max = 25;
  c.c = 0.0;
  c.x_r_mode = RegularizationMode::mean;
  c.x_r = Point3{1, 2, 3};
  c.x0 = Point3{-1, 0.5, 2};
  c.weights = {0.1, 0.2, 0.3};
  const SolverConfig r = io::solver_config_from_json(Json::parse(io::to_json(c).dump()));
  EXPECT_EQ(r.delta, c.delta);
  EXPECT_EQ(r.k_max, c.k_max);
  EXPECT_EQ(r.c, c.c);
  EXPECT_EQ(r.x_r_mode, c.x_r_mode);
  EXPECT_EQ(r.x_r, c.x_r);
  EXPECT_EQ(r.x0, c.x0);
  EXPECT_EQ(r.weights, c.weights);
}

TEST(Json, SolverConfigDefaultsAndErrors) {
  const SolverConfig d = io::solver_config_from_json(Json::object());
  EXPECT_EQ(d.delta, 1e-3);
  EXPECT_EQ(d.k_max, 10);
  EXPECT_EQ(d.c, 0.1);
  EXPECT_EQ(d.x_r_mode, RegularizationMode::median);
  EXPECT_THROW(io::solver_config_from_json(Json::parse(R"({"delta":-1})")), ConfigError);
  EXPECT_THROW(io::solver_config_from_json(Json::parse(R"({"x_r_mode":"mode"})")), ConfigError);
  EXPECT_THROW(io::solver_config_from_json(Json::parse(R"({"k_max":"ten"})")), ConfigError);
}

TEST(Json, ScenarioRoundTripForEveryPreset) {
  for (const std::string& name : io::preset_names()) {
    Scenario s = *io::preset_scenario(name);
    s.diversity = DiversityConfig{3, DiversityStrategy::median};
    s.fixed_uniform = 0.25;
    const Json j = io::to_json(s);
    const Scenario r = io::scenario_from_json(Json::parse(j.dump()));
    EXPECT_EQ(io::to_json(r), j) << name;
    EXPECT_EQ(r.anchors.size(), s.anchors.size());
    EXPECT_EQ(r.walls.size(), s.walls.size());
    EXPECT_EQ(r.models, s.models);
    EXPECT_EQ(r.seed, s.seed);
    EXPECT_EQ(r.fixed_uniform, s.fixed_uniform);
  }
}

TEST(Json, PresetsMatchTheBuildingStudy) {
  const auto names = io::preset_names();
  ASSERT_EQ(names.size(), 3u);
  const Scenario c = *io::preset_scenario("paper-concrete");
  EXPECT_EQ(c.area.width, 9.0);
  EXPECT_EQ(c.area.height, 20.0);
  EXPECT_EQ(c.grid_step, 0.25);
  EXPECT_EQ(c.runs, 5);
  ASSERT_EQ(c.anchors.size(), 4u);
  EXPECT_EQ(c.anchors[0].position, (Point3{0, 0, 3}));
  EXPECT_EQ(c.anchors[1].position, (Point3{9, 0, 2.7}));
  EXPECT_EQ(c.anchors[2].position, (Point3{9, 20, 3}));
  EXPECT_EQ(c.anchors[3].position, (Point3{0, 20, 2.7}));
  ASSERT_EQ(c.walls.size(), 1u);
  EXPECT_EQ(c.walls[0].a.y, 13.0);
  EXPECT_EQ(c.walls[0].material, WallMaterial::concrete);
  EXPECT_EQ(c.models.at(LinkCondition::nlos_concrete), reference::fitted_model("concrete_burr12"));
  EXPECT_TRUE(io::preset_scenario("paper-los")->walls.empty());
  EXPECT_EQ(io::preset_scenario("paper-drywall")->walls[0].material, WallMaterial::drywall);
  EXPECT_FALSE(io::preset_scenario("paper-glass").has_value());
}

TEST(Json, ScenarioErrors) {
  const std::string base = R"({"area":{"w":9,"h":20},
    "anchors":[{"id":"A","x":0,"y":0,"z":3},{"id":"B","x":9,"y":0,"z":3},{"id":"C","x":0,"y":20,"z":3}],
    "models":{"los":{"family":"gaussian","params":{"mu":0,"sigma":0.07}}}})";
  const Scenario ok = io::scenario_from_json(Json::parse(base));
  EXPECT_EQ(ok.anchors.size(), 3u);
  EXPECT_EQ(ok.tag_height, 1.2);

  Json j = Json::parse(base);
  j.erase("area");
  EXPECT_THROW(io::scenario_from_json(j), ConfigError);

  j = Json::parse(base);
  j["walls"] = Json::parse(R"([{"ax":0,"ay":13,"bx":9,"by":13,"material":"concrete"}])");
  EXPECT_THROW(io::scenario_from_json(j), ConfigError);  // no concrete model

  j = Json::parse(base);
  j["walls"] = Json::parse(R"([{"ax":0,"ay":13,"bx":9,"by":13,"material":"glass"}])");
  EXPECT_THROW(io::scenario_from_json(j), ConfigError);

  j = Json::parse(base);
  j["anchors"][1]["id"] = "A";
  EXPECT_THROW(io::scenario_from_json(j), ConfigError);
}

TEST(Json, ProfileRoundTrip) {
  for (const PowerProfile& p : builtin_profiles()) {
    const PowerProfile r = io::profile_from_json(Json::parse(io::to_json(p).dump()));
    EXPECT_EQ(r.name, p.name);
    EXPECT_EQ(energy_per_sstwr(r), energy_per_sstwr(p));
  }
  EXPECT_THROW(io::profile_from_json(Json::parse(R"({"p_tx":1})")), ConfigError);
  EXPECT_THROW(io::profile_from_json(Json::parse(R"({"p_tx":1,"p_rx":1,"p_idle":1,"p_sleep":1,"t_packet":0})")),
               ConfigError);
}

TEST(Json, SolveRequest) {
  const auto r = io::solve_request_from_json(Json::parse(R"({
    "anchors":[{"id":"A1","x":0,"y":0,"z":0},{"id":"A2","x":10,"y":0,"z":0},
               {"id":"A3","x":0,"y":10,"z":0},{"id":"A4","x":10,"y":10,"z":3}],
    "distances":[7.14142842854285,7.14142842854285,7.14142842854285,7.3484692283495345],
    "config":{"c":0,"x0":{"x":4,"y":4,"z":0}}})"));
  const LocationEstimate est = solve(r.config, r.anchors, r.distances);
  EXPECT_LT(localization_error(est.position, {5, 5, 1}, ErrorMode::spatial), 1e-6);
  const Json out = io::to_json(est);
  EXPECT_TRUE(out.at("converged").get<bool>());
  EXPECT_NEAR(out.at("position").at("z").get<double>(), 1.0, 1e-6);

  EXPECT_THROW(io::solve_request_from_json(Json::parse(R"({"anchors":[]})")), ConfigError);
}

TEST(Output, PointsAndEcdfCsv) {
  Scenario s = *io::preset_scenario("paper-concrete");
  s.grid_step = 3.0;
  s.runs = 2;
  const RunStatistics st = run_scenario(s);
  std::ostringstream pts, ecdf;
  io::write_points_csv(pts, st);
  io::write_ecdf_csv(ecdf, st);

  std::istringstream pin(pts.str());
  const CsvTable t = read_csv(pin, true);
  ASSERT_EQ(t.header.size(), 10u);
  EXPECT_EQ(t.header.front(), "run");
  EXPECT_EQ(t.header.back(), "conditions");
  EXPECT_EQ(t.rows.size(), st.points.size());
  const auto col = *t.column("err2d_m");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(parse_double(t.rows[i][col], t.line_numbers[i]), st.points[i].err2d);  // exact round trip
  }

  std::istringstream ein(ecdf.str());
  const CsvTable e = read_csv(ein, true);
  EXPECT_EQ(e.header, (std::vector<std::string>{"err2d_m", "probability"}));
  EXPECT_EQ(e.rows.size(), st.planar.ecdf.size());
  EXPECT_EQ(parse_double(e.rows.back()[1], 0), 1.0);

  const Json rep = io::run_report(s, st);
  EXPECT_EQ(rep.at("samples").get<std::size_t>(), st.points.size());
  EXPECT_EQ(rep.at("err2d_m").at("median").get<double>(), st.planar.median);
}

TEST(Csv, ParsingAndErrors) {
  std::istringstream in("true_m,measured_m\n2,2.1\n\n5,4.95\n");
  const CsvTable t = read_csv(in, true);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.line_numbers, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(t.column("measured_m"), 1u);
  EXPECT_FALSE(t.column("channel").has_value());

  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged, true), ConfigError);
  EXPECT_THROW(parse_double("1,5", 3), ConfigError);
  EXPECT_THROW(parse_double("abc", 3), ConfigError);
  EXPECT_EQ(parse_double(" 2.5 ", 1), 2.5);
}

TEST(Csv, FormatDoubleRoundTrips) {
  RandomStream s(3);
  for (int i = 0; i < 10000; ++i) {
    const double v = (s.uniform() - 0.5) * std::pow(10.0, 20 * s.uniform() - 10);
    EXPECT_EQ(parse_double(format_double(v), 0), v);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(3.0), "3");
}
