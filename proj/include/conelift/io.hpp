#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "conelift/analysis.hpp"
#include "conelift/chart.hpp"
#include "conelift/cone.hpp"
#include "conelift/conformal.hpp"
#include "conelift/rigidity.hpp"

namespace conelift {
namespace io {

using json = nlohmann::ordered_json;

/// Malformed or unreadable input; the message names the offending field.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Decimal string with 17 significant digits (round-trip safe).
std::string dec17(double x);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

// Matrix files: {"n": int, "entries": [[row-major]]}, (n+1)x(n+1).
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

// Charts: {"m","n","target","k","shape","spacing","origin","periodic",
// "values", "metric"?}.
json chart_to_json(const GridChart& chart, const MetricField* metric = nullptr);
GridChart chart_from_json(const json& j);
bool chart_has_metric(const json& j);
MetricField metric_from_chart_json(const json& j);

// Standalone metric files: {"m": int, "metric": [[...]]}.
json metric_to_json(const MetricField& g);
MetricField metric_from_json(const json& j);

// Cone correspondences: {"k","n","pairs":[[[x],[y]],...]}.
json correspondences_to_json(const CorrespondenceSet& c);
CorrespondenceSet correspondences_from_json(const json& j);

// Cone point lists: {"k","n","points":[[...]]}.
struct ConePointFile {
  int k = 0;
  int n = 0;
  std::vector<Vec> points;
};
json cone_points_to_json(const ConePointFile& f);
ConePointFile cone_points_from_json(const json& j);

// Sphere samples {"n","points":[[...]]} and pairs {"n","pairs":[[[z],[z~]],...]}.
json sphere_points_to_json(int n, const std::vector<Vec>& points);
std::vector<Vec> sphere_points_from_json(const json& j, int* n_out = nullptr);
json sphere_pairs_to_json(int n, const std::vector<std::pair<Vec, Vec>>& pairs);
std::vector<std::pair<Vec, Vec>> sphere_pairs_from_json(const json& j, int* n_out = nullptr);

// Self-map samples: {"n","t_levels","sphere":{chart},"f","image"}.
json selfmap_to_json(const SelfMapSamples& s);
SelfMapSamples selfmap_from_json(const json& j);

// Reports. Residuals serialize as decimal strings.
json recovery_to_json(const RecoveryReport& r);
json validity_to_json(const ValidityReport& r);
json immersion_to_json(const ImmersionReport& r);

}  // namespace io
}  // namespace conelift
