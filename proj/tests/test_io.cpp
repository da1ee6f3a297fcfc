#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "conelift/conformal.hpp"
#include "conelift/fixtures.hpp"
#include "conelift/io.hpp"
#include "conelift/lorentz.hpp"
#include "conelift/rigidity.hpp"
#include "doctest.h"

using namespace conelift;
using io::json;

namespace {

double parse_back(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string scratch_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// Serialize, dump to text, and parse again — what a file round trip sees.
json through_text(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("dec17 strings parse back to the identical double") {
  const double samples[] = {0.1,    1.0 / 3.0,          1e-300, 3.141592653589793,
                            -2.75,  6.02214076e23,      1.0,    5e-324,
                            1e308,  -0.4999999999999999};
  for (double x : samples) {
    CAPTURE(x);
    CHECK(parse_back(io::dec17(x)) == x);
  }
}

TEST_CASE("matrix files round-trip bitwise") {
  const LorentzMap tau = random_conformal(4, 31, 8, 2.0);
  const json j = through_text(io::matrix_to_json(tau.entries));
  CHECK(j["n"] == 4);
  const Mat back = io::matrix_from_json(j);
  CHECK(back == tau.entries);

  SUBCASE("missing and malformed fields are named") {
    json bad = j;
    bad.erase("n");
    CHECK_THROWS_WITH_AS(io::matrix_from_json(bad), "missing field 'n'", io::io_error);

    bad = j;
    bad["n"] = 0;
    CHECK_THROWS_WITH_AS(io::matrix_from_json(bad), "field 'n' must be at least 1", io::io_error);

    bad = j;
    bad["entries"].erase(0);
    CHECK_THROWS_WITH_AS(io::matrix_from_json(bad), "field 'entries' must have n+1 rows",
                         io::io_error);

    bad = j;
    bad["entries"][2].erase(0);
    CHECK_THROWS_AS(io::matrix_from_json(bad), io::io_error);

    bad = j;
    bad["entries"][1][3] = "x";
    CHECK_THROWS_WITH_AS(io::matrix_from_json(bad), "field 'entries' must hold numbers",
                         io::io_error);
  }

  SUBCASE("writer rejects non-square input") {
    CHECK_THROWS_AS(io::matrix_to_json(Mat::Zero(3, 4)), io::io_error);
    CHECK_THROWS_AS(io::matrix_to_json(Mat::Identity(1, 1)), io::io_error);
  }
}

TEST_CASE("chart files carry the grid and optional metric") {
  const GridChart chart = fixtures::make_sphere_box_chart(3, {5, 6}, true);
  const MetricField g = fixtures::round_sphere_metric(chart);

  SUBCASE("round trip with embedded metric") {
    const json j = through_text(io::chart_to_json(chart, &g));
    CHECK(io::chart_has_metric(j));
    const GridChart back = io::chart_from_json(j);
    CHECK(back.m == chart.m);
    CHECK(back.n == chart.n);
    CHECK(back.target == chart.target);
    CHECK(back.k == chart.k);
    CHECK(back.shape == chart.shape);
    CHECK(back.spacing == chart.spacing);
    CHECK(back.origin == chart.origin);
    CHECK(back.periodic == chart.periodic);
    CHECK(back.values == chart.values);
    const MetricField gb = io::metric_from_chart_json(j);
    CHECK(gb.m == g.m);
    CHECK(gb.values == g.values);
  }

  SUBCASE("metric block is optional") {
    const json j = io::chart_to_json(chart);
    CHECK(!io::chart_has_metric(j));
    CHECK_THROWS_WITH_AS(io::metric_from_chart_json(j), "missing field 'metric'", io::io_error);
  }

  SUBCASE("unknown target names are rejected") {
    json j = io::chart_to_json(chart);
    j["target"] = "tube";
    CHECK_THROWS_WITH_AS(io::chart_from_json(j), "field 'target' must be 'sphere', 'cone' or 'plane'",
                         io::io_error);
  }

  SUBCASE("structural defects surface as invalid chart") {
    json j = io::chart_to_json(chart);
    j["shape"] = {5, 7};
    try {
      io::chart_from_json(j);
      FAIL("expected io_error");
    } catch (const io::io_error& e) {
      CHECK(std::string(e.what()).rfind("invalid chart: ", 0) == 0);
    }
  }

  SUBCASE("metric row count must match the chart values") {
    json j = io::chart_to_json(chart, &g);
    j["metric"].erase(0);
    CHECK_THROWS_WITH_AS(io::metric_from_chart_json(j),
                         "field 'metric' length does not match 'values'", io::io_error);
  }

  SUBCASE("writer rejects a metric sampled on a different grid") {
    MetricField small(chart.m, chart.num_nodes() - 1);
    small.values.setZero();
    CHECK_THROWS_AS(io::chart_to_json(chart, &small), io::io_error);
  }
}

TEST_CASE("standalone metric files round-trip") {
  const GridChart chart = fixtures::make_sphere_box_chart(3, {4, 5});
  const MetricField g = fixtures::round_sphere_metric(chart);
  const json j = through_text(io::metric_to_json(g));
  const MetricField back = io::metric_from_json(j);
  CHECK(back.m == g.m);
  CHECK(back.values == g.values);

  json bad = j;
  bad["m"] = -1;
  CHECK_THROWS_WITH_AS(io::metric_from_json(bad), "field 'm' must be positive", io::io_error);
}

TEST_CASE("correspondence files round-trip") {
  const LorentzMap tau = random_conformal(3, 5, 6, 2.0);
  const CorrespondenceSet c = fixtures::make_random_cone_pairs(tau, 7, 99);
  const json j = through_text(io::correspondences_to_json(c));
  const CorrespondenceSet back = io::correspondences_from_json(j);
  CHECK(back.k == c.k);
  CHECK(back.n == c.n);
  REQUIRE(back.pairs.size() == c.pairs.size());
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    CHECK(back.pairs[i].first == c.pairs[i].first);
    CHECK(back.pairs[i].second == c.pairs[i].second);
  }

  json bad = j;
  bad["pairs"] = json::array();
  CHECK_THROWS_WITH_AS(io::correspondences_from_json(bad),
                       "field 'pairs' must be a non-empty array", io::io_error);

  bad = j;
  bad["pairs"][0].erase(1);
  CHECK_THROWS_WITH_AS(io::correspondences_from_json(bad),
                       "field 'pairs' entries must be [x, y] pairs", io::io_error);
}

TEST_CASE("cone point and sphere sample files round-trip") {
  io::ConePointFile f;
  f.k = 1;
  f.n = 3;
  f.points = {Vec{{2.0, 2.0, 0.0, 0.0, 1.0}}, Vec{{1.5, 0.0, 1.5, 0.0, 1.0}}};
  const io::ConePointFile fb = io::cone_points_from_json(through_text(io::cone_points_to_json(f)));
  CHECK(fb.k == 1);
  CHECK(fb.n == 3);
  REQUIRE(fb.points.size() == 2);
  CHECK(fb.points[0] == f.points[0]);
  CHECK(fb.points[1] == f.points[1]);

  const std::vector<Vec> zs = {Vec{{1.0, 0.0, 0.0}}, Vec{{0.0, 0.6, 0.8}}};
  int n_out = 0;
  const std::vector<Vec> zb =
      io::sphere_points_from_json(through_text(io::sphere_points_to_json(3, zs)), &n_out);
  CHECK(n_out == 3);
  REQUIRE(zb.size() == 2);
  CHECK(zb[0] == zs[0]);
  CHECK(zb[1] == zs[1]);

  const std::vector<std::pair<Vec, Vec>> ps = {{zs[0], zs[1]}, {zs[1], zs[0]}};
  const auto pb = io::sphere_pairs_from_json(through_text(io::sphere_pairs_to_json(3, ps)), &n_out);
  CHECK(n_out == 3);
  REQUIRE(pb.size() == 2);
  CHECK(pb[0].first == zs[0]);
  CHECK(pb[1].second == zs[0]);

  json bad = io::sphere_pairs_to_json(3, ps);
  bad["pairs"][1][0].erase(2);
  CHECK_THROWS_WITH_AS(io::sphere_pairs_from_json(bad), "field 'pairs' entries must have length n",
                       io::io_error);
}

TEST_CASE("self-map sample files round-trip") {
  const LorentzMap tau = random_conformal(3, 12, 5, 1.5);
  const SelfMapSamples s = fixtures::make_selfmap(tau, {1.0, 2.0, 3.0}, {6, 7});
  const json j = through_text(io::selfmap_to_json(s));
  const SelfMapSamples back = io::selfmap_from_json(j);
  CHECK(back.n == s.n);
  CHECK(back.t_levels == s.t_levels);
  CHECK(back.sphere.values == s.sphere.values);
  CHECK(back.f == s.f);
  REQUIRE(back.image.size() == s.image.size());
  for (std::size_t a = 0; a < s.image.size(); ++a) CHECK(back.image[a] == s.image[a]);

  json bad = j;
  bad["image"].erase(2);
  CHECK_THROWS_WITH_AS(io::selfmap_from_json(bad), "field 'image' must have one entry per t-level",
                       io::io_error);

  bad = j;
  bad["f"].erase(0);
  CHECK_THROWS_WITH_AS(io::selfmap_from_json(bad), "field 'f' must be t_levels x nodes",
                       io::io_error);
}

TEST_CASE("recovery reports serialize status, matrices and residual strings") {
  const LorentzMap tau = random_conformal(3, 77, 6, 2.0);

  SUBCASE("unique flat-cone fit has a tau and no embedded matrix") {
    const CorrespondenceSet c = fixtures::make_random_cone_pairs(tau, 10, 4);
    const RecoveryReport r = recover_tau(c);
    REQUIRE(r.status == FitStatus::unique);
    const json j = io::recovery_to_json(r);
    CHECK(j["status"] == "unique");
    CHECK(j["tau"].is_array());
    CHECK(!j.contains("tau_embedded"));
    CHECK(j["span_rank"] == 4);
    CHECK(parse_back(j["max_point_residual"].get<std::string>()) == r.max_point_residual);
    CHECK(parse_back(j["condition_estimate"].get<std::string>()) == r.condition_estimate);
    CHECK(j["near_miss"] == false);
  }

  SUBCASE("curved-cone fit also reports the embedded matrix") {
    CorrespondenceSet flat = fixtures::make_random_cone_pairs(tau, 10, 4);
    CorrespondenceSet curved;
    curved.k = 1;
    curved.n = flat.n;
    for (const auto& [x, y] : flat.pairs)
      curved.pairs.emplace_back(cone_convert(ConePoint{0, x}, 1).coords,
                                cone_convert(ConePoint{0, y}, 1).coords);
    const json j = io::recovery_to_json(recover_tau(curved));
    REQUIRE(j.contains("tau_embedded"));
    CHECK(j["tau_embedded"].size() == 5);  // (n+2) x (n+2) for k = +1, n = 3
  }

  SUBCASE("underdetermined fit leaves tau null") {
    CorrespondenceSet c;
    c.k = 0;
    c.n = 3;
    const Vec x{{1.0, 1.0, 0.0, 0.0}};
    for (int i = 1; i <= 5; ++i) c.pairs.emplace_back(double(i) * x, double(i) * x);
    const json j = io::recovery_to_json(recover_tau(c));
    CHECK(j["status"] == "underdetermined");
    CHECK(j["tau"].is_null());
  }
}

TEST_CASE("validity and immersion reports expose every residual") {
  const ValidityReport v = lorentz_check(random_conformal(3, 2, 4, 2.0).entries);
  const json jv = io::validity_to_json(v);
  for (const char* key : {"residual_scalar", "residual_mixed", "residual_block",
                          "residual_global"})
    CHECK(jv[key].is_string());
  CHECK(jv["orthochronous"] == true);
  CHECK(jv["pass"] == true);

  ImmersionReport r;
  r.pass = false;
  r.max_metric_deviation = 0.25;
  const json jr = io::immersion_to_json(r);
  CHECK(jr["pass"] == false);
  CHECK(parse_back(jr["max_metric_deviation"].get<std::string>()) == 0.25);
  CHECK(jr.contains("min_jacobian_sv"));
  CHECK(jr.contains("full_rank"));
}

TEST_CASE("file io reports missing files and malformed JSON by name") {
  const std::string missing = scratch_path("conelift_io_does_not_exist.json");
  try {
    io::read_file(missing);
    FAIL("expected io_error");
  } catch (const io::io_error& e) {
    CHECK(std::string(e.what()).find(missing) != std::string::npos);
  }

  const std::string garbled = scratch_path("conelift_io_garbled.json");
  {
    std::FILE* f = std::fopen(garbled.c_str(), "wb");
    REQUIRE(f != nullptr);
    std::fputs("{\"n\": 3,,}", f);
    std::fclose(f);
  }
  try {
    io::read_file(garbled);
    FAIL("expected io_error");
  } catch (const io::io_error& e) {
    CHECK(std::string(e.what()).rfind("invalid JSON in", 0) == 0);
  }
  std::filesystem::remove(garbled);

  const std::string ok = scratch_path("conelift_io_roundtrip.json");
  const LorentzMap tau = random_conformal(3, 8, 7, 2.0);
  io::write_file(ok, io::matrix_to_json(tau.entries));
  CHECK(io::matrix_from_json(io::read_file(ok)) == tau.entries);
  std::filesystem::remove(ok);
}
