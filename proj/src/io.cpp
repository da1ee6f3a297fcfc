#include "conelift/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace conelift {
namespace io {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object()) throw io_error("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw io_error(std::string("missing field '") + key + "'");
  return *it;
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer())
    throw io_error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number_at(const json& v, const char* key) {
  if (!v.is_number()) throw io_error(std::string("field '") + key + "' must hold numbers");
  return v.get<double>();
}

Vec vec_at(const json& v, const char* key) {
  if (!v.is_array()) throw io_error(std::string("field '") + key + "' must hold arrays");
  Vec x(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<Index>(i)] = number_at(v[i], key);
  return x;
}

std::vector<double> need_doubles(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array()) throw io_error(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number_at(e, key));
  return out;
}

std::vector<int> need_ints(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array()) throw io_error(std::string("field '") + key + "' must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer() && !e.is_boolean())
      throw io_error(std::string("field '") + key + "' must hold integers");
    out.push_back(e.is_boolean() ? (e.get<bool>() ? 1 : 0) : e.get<int>());
  }
  return out;
}

json rows_of(const Mat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_at(const json& v, const char* key, Index want_cols = -1) {
  if (!v.is_array() || v.empty())
    throw io_error(std::string("field '") + key + "' must be a non-empty array of rows");
  const Index rows = static_cast<Index>(v.size());
  Index cols = want_cols;
  Mat m;
  for (Index r = 0; r < rows; ++r) {
    const Vec row = vec_at(v[static_cast<std::size_t>(r)], key);
    if (cols < 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (r == 0) {
      m.resize(rows, cols);
    }
    if (row.size() != cols)
      throw io_error(std::string("field '") + key + "' has rows of unequal length");
    m.row(r) = row.transpose();
  }
  return m;
}

}  // namespace

std::string dec17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

json matrix_to_json(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw io_error("matrix_to_json: expected a square matrix of size at least 2");
  json j;
  j["n"] = static_cast<int>(m.rows()) - 1;
  j["entries"] = rows_of(m);
  return j;
}

Mat matrix_from_json(const json& j) {
  const int n = need_int(j, "n");
  if (n < 1) throw io_error("field 'n' must be at least 1");
  const Mat m = mat_at(need(j, "entries"), "entries", n + 1);
  if (m.rows() != n + 1)
    throw io_error("field 'entries' must have n+1 rows");
  return m;
}

json chart_to_json(const GridChart& chart, const MetricField* metric) {
  json j;
  j["m"] = chart.m;
  j["n"] = chart.n;
  j["target"] = to_string(chart.target);
  j["k"] = chart.k;
  j["shape"] = chart.shape;
  j["spacing"] = chart.spacing;
  j["origin"] = chart.origin;
  json per = json::array();
  for (auto p : chart.periodic) per.push_back(p ? 1 : 0);
  j["periodic"] = std::move(per);
  j["values"] = rows_of(chart.values);
  if (metric) {
    if (metric->num_nodes() != chart.num_nodes())
      throw io_error("chart_to_json: metric node count does not match the chart");
    j["metric"] = rows_of(metric->values);
  }
  return j;
}

GridChart chart_from_json(const json& j) {
  GridChart chart;
  chart.m = need_int(j, "m");
  chart.n = need_int(j, "n");
  const json& t = need(j, "target");
  if (!t.is_string()) throw io_error("field 'target' must be a string");
  const std::string ts = t.get<std::string>();
  if (ts == "sphere")
    chart.target = Target::sphere;
  else if (ts == "cone")
    chart.target = Target::cone;
  else if (ts == "plane")
    chart.target = Target::plane;
  else
    throw io_error("field 'target' must be 'sphere', 'cone' or 'plane'");
  chart.k = need_int(j, "k");
  const std::vector<int> shape = need_ints(j, "shape");
  chart.shape = shape;
  chart.spacing = need_doubles(j, "spacing");
  chart.origin = need_doubles(j, "origin");
  const std::vector<int> periodic = need_ints(j, "periodic");
  chart.periodic.clear();
  for (int p : periodic) chart.periodic.push_back(p ? 1 : 0);
  chart.values = mat_at(need(j, "values"), "values");
  try {
    chart.validate();
  } catch (const std::invalid_argument& e) {
    throw io_error(std::string("invalid chart: ") + e.what());
  }
  return chart;
}

bool chart_has_metric(const json& j) {
  return j.is_object() && j.contains("metric") && !j["metric"].is_null();
}

MetricField metric_from_chart_json(const json& j) {
  const int m = need_int(j, "m");
  if (m < 1) throw io_error("field 'm' must be positive");
  const Mat values = mat_at(need(j, "metric"), "metric", static_cast<Index>(m) * m);
  if (j.contains("values") && j["values"].is_array() &&
      static_cast<Index>(j["values"].size()) != values.rows())
    throw io_error("field 'metric' length does not match 'values'");
  MetricField g(m, values.rows());
  g.values = values;
  return g;
}

json metric_to_json(const MetricField& g) {
  json j;
  j["m"] = g.m;
  j["metric"] = rows_of(g.values);
  return j;
}

MetricField metric_from_json(const json& j) {
  const int m = need_int(j, "m");
  if (m < 1) throw io_error("field 'm' must be positive");
  const Mat values = mat_at(need(j, "metric"), "metric", static_cast<Index>(m) * m);
  MetricField g(m, values.rows());
  g.values = values;
  return g;
}

json correspondences_to_json(const CorrespondenceSet& c) {
  json j;
  j["k"] = c.k;
  j["n"] = c.n;
  json pairs = json::array();
  for (const auto& [x, y] : c.pairs) {
    json p = json::array();
    json xa = json::array(), ya = json::array();
    for (Index i = 0; i < x.size(); ++i) xa.push_back(x[i]);
    for (Index i = 0; i < y.size(); ++i) ya.push_back(y[i]);
    p.push_back(std::move(xa));
    p.push_back(std::move(ya));
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

CorrespondenceSet correspondences_from_json(const json& j) {
  CorrespondenceSet c;
  c.k = need_int(j, "k");
  c.n = need_int(j, "n");
  const json& pairs = need(j, "pairs");
  if (!pairs.is_array() || pairs.empty())
    throw io_error("field 'pairs' must be a non-empty array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2)
      throw io_error("field 'pairs' entries must be [x, y] pairs");
    c.pairs.emplace_back(vec_at(p[0], "pairs"), vec_at(p[1], "pairs"));
  }
  return c;
}

json cone_points_to_json(const ConePointFile& f) {
  json j;
  j["k"] = f.k;
  j["n"] = f.n;
  json pts = json::array();
  for (const Vec& p : f.points) {
    json a = json::array();
    for (Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
    pts.push_back(std::move(a));
  }
  j["points"] = std::move(pts);
  return j;
}

ConePointFile cone_points_from_json(const json& j) {
  ConePointFile f;
  f.k = need_int(j, "k");
  f.n = need_int(j, "n");
  const json& pts = need(j, "points");
  if (!pts.is_array()) throw io_error("field 'points' must be an array");
  for (const auto& p : pts) f.points.push_back(vec_at(p, "points"));
  return f;
}

json sphere_points_to_json(int n, const std::vector<Vec>& points) {
  json j;
  j["n"] = n;
  json pts = json::array();
  for (const Vec& p : points) {
    json a = json::array();
    for (Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
    pts.push_back(std::move(a));
  }
  j["points"] = std::move(pts);
  return j;
}

std::vector<Vec> sphere_points_from_json(const json& j, int* n_out) {
  const int n = need_int(j, "n");
  if (n_out) *n_out = n;
  const json& pts = need(j, "points");
  if (!pts.is_array()) throw io_error("field 'points' must be an array");
  std::vector<Vec> out;
  for (const auto& p : pts) {
    Vec v = vec_at(p, "points");
    if (v.size() != n) throw io_error("field 'points' entries must have length n");
    out.push_back(std::move(v));
  }
  return out;
}

json sphere_pairs_to_json(int n, const std::vector<std::pair<Vec, Vec>>& pairs) {
  json j;
  j["n"] = n;
  json ps = json::array();
  for (const auto& [z, zt] : pairs) {
    json za = json::array(), zta = json::array();
    for (Index i = 0; i < z.size(); ++i) za.push_back(z[i]);
    for (Index i = 0; i < zt.size(); ++i) zta.push_back(zt[i]);
    json p = json::array();
    p.push_back(std::move(za));
    p.push_back(std::move(zta));
    ps.push_back(std::move(p));
  }
  j["pairs"] = std::move(ps);
  return j;
}

std::vector<std::pair<Vec, Vec>> sphere_pairs_from_json(const json& j, int* n_out) {
  const int n = need_int(j, "n");
  if (n_out) *n_out = n;
  const json& ps = need(j, "pairs");
  if (!ps.is_array() || ps.empty()) throw io_error("field 'pairs' must be a non-empty array");
  std::vector<std::pair<Vec, Vec>> out;
  for (const auto& p : ps) {
    if (!p.is_array() || p.size() != 2)
      throw io_error("field 'pairs' entries must be [z, z~] pairs");
    Vec z = vec_at(p[0], "pairs");
    Vec zt = vec_at(p[1], "pairs");
    if (z.size() != n || zt.size() != n)
      throw io_error("field 'pairs' entries must have length n");
    out.emplace_back(std::move(z), std::move(zt));
  }
  return out;
}

json selfmap_to_json(const SelfMapSamples& s) {
  json j;
  j["n"] = s.n;
  j["t_levels"] = s.t_levels;
  j["sphere"] = chart_to_json(s.sphere);
  j["f"] = rows_of(s.f);
  json image = json::array();
  for (const Mat& img : s.image) image.push_back(rows_of(img));
  j["image"] = std::move(image);
  return j;
}

SelfMapSamples selfmap_from_json(const json& j) {
  SelfMapSamples s;
  s.n = need_int(j, "n");
  s.t_levels = need_doubles(j, "t_levels");
  s.sphere = chart_from_json(need(j, "sphere"));
  s.f = mat_at(need(j, "f"), "f");
  const json& image = need(j, "image");
  if (!image.is_array() || image.size() != s.t_levels.size())
    throw io_error("field 'image' must have one entry per t-level");
  for (const auto& img : image) s.image.push_back(mat_at(img, "image", s.n));
  if (s.f.rows() != static_cast<Index>(s.t_levels.size()) ||
      s.f.cols() != s.sphere.num_nodes())
    throw io_error("field 'f' must be t_levels x nodes");
  for (const Mat& img : s.image)
    if (img.rows() != s.sphere.num_nodes())
      throw io_error("field 'image' entries must have one row per node");
  return s;
}

json recovery_to_json(const RecoveryReport& r) {
  json j;
  j["status"] = to_string(r.status);
  j["tau"] = r.has_tau ? rows_of(r.tau.entries) : json(nullptr);
  if (r.has_embedded) j["tau_embedded"] = rows_of(r.tau_embedded.entries);
  j["max_point_residual"] = dec17(r.max_point_residual);
  j["span_rank"] = r.span_rank;
  j["condition_estimate"] = dec17(r.condition_estimate);
  j["near_miss"] = r.near_miss;
  return j;
}

json validity_to_json(const ValidityReport& r) {
  json j;
  j["residual_scalar"] = dec17(r.residual_scalar);
  j["residual_mixed"] = dec17(r.residual_mixed);
  j["residual_block"] = dec17(r.residual_block);
  j["residual_global"] = dec17(r.residual_global);
  j["orthochronous"] = r.orthochronous;
  j["det_sign"] = r.det_sign;
  j["pass"] = r.pass;
  return j;
}

json immersion_to_json(const ImmersionReport& r) {
  json j;
  j["pass"] = r.pass;
  j["max_metric_deviation"] = dec17(r.max_metric_deviation);
  j["max_cone_residual"] = dec17(r.max_cone_residual);
  j["min_jacobian_sv"] = dec17(r.min_jacobian_sv);
  j["full_rank"] = r.full_rank;
  return j;
}

}  // namespace io
}  // namespace conelift
