// Batch front door: fixture generation, verification pipelines, recovery
// runs, and report emission with stable formats and exit codes.
//
// Exit codes: 0 ok/unique, 1 usage/IO, 2 validation failure,
// 3 inconsistent/rejected, 4 underdetermined.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conelift/analysis.hpp"
#include "conelift/fixtures.hpp"
#include "conelift/io.hpp"
#include "conelift/rigidity.hpp"

namespace {

using conelift::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitUnderdetermined = 4;

int status_exit_code(conelift::FitStatus s) {
  switch (s) {
    case conelift::FitStatus::unique: return kExitOk;
    case conelift::FitStatus::inconsistent: return kExitInconsistent;
    case conelift::FitStatus::underdetermined: return kExitUnderdetermined;
  }
  return kExitUsage;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty())
    std::cout << report.dump(2) << '\n';
  else
    conelift::io::write_file(out_path, report);
}

std::filesystem::path out_dir_or_cwd(const std::string& out) {
  std::filesystem::path dir = out.empty() ? "." : out;
  std::filesystem::create_directories(dir);
  return dir;
}

struct GenOptions {
  std::string fixture;
  std::string out;
  int nodes = 16;
  int n = 3;
  std::uint64_t seed = 7;
  std::vector<int> shape;
  std::vector<double> levels;
  int count = 12;
  int steps = 8;
  double bound = 2.0;
};

std::vector<int> default_shape(int n, int per_axis) {
  return std::vector<int>(static_cast<std::size_t>(n - 1), per_axis);
}

int run_gen(const GenOptions& opt) {
  namespace fx = conelift::fixtures;
  namespace io = conelift::io;
  const auto dir = out_dir_or_cwd(opt.out);

  if (opt.fixture == "circle-n2") {
    const fx::CircleFixture f = fx::make_circle(opt.nodes);
    io::write_file((dir / "circle_phi1.json").string(), io::chart_to_json(f.phi1, &f.g));
    io::write_file((dir / "circle_phi2.json").string(), io::chart_to_json(f.phi2, &f.g));
    io::write_file((dir / "circle_pairs.json").string(), io::correspondences_to_json(f.pairs));
    return kExitOk;
  }
  if (opt.fixture == "sphere-identity") {
    const std::vector<int> shape = opt.shape.empty() ? default_shape(opt.n, 9) : opt.shape;
    const fx::SphereIdentityFixture f = fx::make_sphere_identity(opt.n, shape);
    io::write_file((dir / "sphere_identity.json").string(), io::chart_to_json(f.chart, &f.g));
    return kExitOk;
  }
  if (opt.fixture == "tau-pair") {
    const std::vector<int> shape = opt.shape.empty() ? default_shape(opt.n, 7) : opt.shape;
    const fx::TauPairFixture f = fx::make_tau_pair(opt.n, opt.seed, shape, opt.steps, opt.bound);
    io::write_file((dir / "tau_chart1.json").string(), io::chart_to_json(f.chart1, &f.g));
    io::write_file((dir / "tau_chart2.json").string(), io::chart_to_json(f.chart2, &f.g));
    io::write_file((dir / "tau_pairs.json").string(), io::correspondences_to_json(f.pairs));
    io::write_file((dir / "tau_oracle.json").string(), io::matrix_to_json(f.tau.entries));
    return kExitOk;
  }
  if (opt.fixture == "cone-selfmap") {
    const std::vector<int> shape = opt.shape.empty() ? default_shape(opt.n, 5) : opt.shape;
    const std::vector<double> levels =
        opt.levels.empty() ? std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0} : opt.levels;
    const conelift::LorentzMap tau =
        conelift::random_conformal(opt.n, opt.seed, opt.steps, opt.bound);
    const conelift::SelfMapSamples s = fx::make_selfmap(tau, levels, shape);
    io::write_file((dir / "selfmap.json").string(), io::selfmap_to_json(s));
    io::write_file((dir / "selfmap_tau_oracle.json").string(), io::matrix_to_json(tau.entries));
    return kExitOk;
  }
  if (opt.fixture == "nonconformal-pair") {
    const auto pairs = fx::make_nonconformal_pairs(opt.n, opt.count, opt.seed);
    io::write_file((dir / "nonconformal_pairs.json").string(),
                   io::sphere_pairs_to_json(opt.n, pairs));
    return kExitOk;
  }
  std::cerr << "unknown fixture '" << opt.fixture << "'\n";
  return kExitUsage;
}

conelift::MetricField metric_for_chart(const json& chart_json, const std::string& metric_path) {
  namespace io = conelift::io;
  if (!metric_path.empty()) return io::metric_from_json(io::read_file(metric_path));
  if (io::chart_has_metric(chart_json)) return io::metric_from_chart_json(chart_json);
  throw io::io_error("no metric: embed a 'metric' field in the chart or pass a metric file");
}

int run_verify(const std::string& chart_path, const std::string& metric_path, double tol,
               double fd_tol, const std::string& out) {
  namespace io = conelift::io;
  const json cj = io::read_file(chart_path);
  const conelift::GridChart chart = io::chart_from_json(cj);
  const conelift::MetricField g = metric_for_chart(cj, metric_path);

  const conelift::ImmersionReport imm = conelift::verify_isometric_immersion(chart, g, fd_tol);
  const double proj = conelift::verify_projected_metric(chart, g);
  const bool pass = imm.pass && proj <= fd_tol;
  (void)tol;

  json report;
  report["immersion"] = io::immersion_to_json(imm);
  report["projected_metric_residual"] = io::dec17(proj);
  report["fd_tolerance"] = io::dec17(fd_tol);
  report["pass"] = pass;
  emit(report, out);
  return pass ? kExitOk : kExitValidation;
}

int run_recover(const std::vector<std::string>& inputs, const std::string& metric_path,
                double tol, double fd_tol, bool polish, const std::string& out) {
  namespace io = conelift::io;
  if (inputs.size() == 1) {
    const conelift::CorrespondenceSet c =
        io::correspondences_from_json(io::read_file(inputs[0]));
    const conelift::RecoveryReport rep = conelift::recover_tau(c, tol, polish);
    emit(io::recovery_to_json(rep), out);
    return status_exit_code(rep.status);
  }
  if (inputs.size() == 2 || inputs.size() == 3) {
    const json cj1 = io::read_file(inputs[0]);
    const json cj2 = io::read_file(inputs[1]);
    const conelift::GridChart chart1 = io::chart_from_json(cj1);
    const conelift::GridChart chart2 = io::chart_from_json(cj2);
    const conelift::MetricField g = inputs.size() == 3
                                        ? io::metric_from_json(io::read_file(inputs[2]))
                                        : metric_for_chart(cj1, metric_path);
    const conelift::RigidityReport rep =
        conelift::verify_rigidity(chart1, chart2, g, tol, fd_tol);
    json report;
    report["immersion1"] = io::immersion_to_json(rep.immersion1);
    report["immersion2"] = io::immersion_to_json(rep.immersion2);
    report["immersions_ok"] = rep.immersions_ok;
    report["recovery"] = rep.recovery_ran ? io::recovery_to_json(rep.recovery) : json(nullptr);
    emit(report, out);
    if (!rep.immersions_ok) return kExitValidation;
    return status_exit_code(rep.recovery.status);
  }
  std::cerr << "recover expects a pair file, or two charts plus a metric\n";
  return kExitUsage;
}

int run_extend(const std::string& selfmap_path, double tol, double fd_tol,
               const std::string& out) {
  namespace io = conelift::io;
  const conelift::SelfMapSamples s = io::selfmap_from_json(io::read_file(selfmap_path));
  const conelift::ExtendReport rep = conelift::extend_cone_isometry(s, tol, fd_tol);

  json report;
  report["t_independent"] = rep.t_independent;
  report["t_variation"] = io::dec17(rep.t_variation);
  report["scaling_ok"] = rep.scaling_ok;
  report["scaling_residual"] = io::dec17(rep.scaling_residual);
  report["recovery"] = rep.recovery_ran ? io::recovery_to_json(rep.recovery) : json(nullptr);
  report["height_consistent"] = rep.height_consistent;
  report["height_residual"] = io::dec17(rep.height_residual);
  report["pass"] = rep.pass;
  emit(report, out);

  if (!rep.t_independent || !rep.scaling_ok) return kExitInconsistent;
  if (rep.recovery.status != conelift::FitStatus::unique)
    return status_exit_code(rep.recovery.status);
  return rep.height_consistent ? kExitOk : kExitInconsistent;
}

int run_embed(const std::string& points_path, int k_to, const std::string& out) {
  namespace io = conelift::io;
  const io::ConePointFile in = io::cone_points_from_json(io::read_file(points_path));

  std::vector<std::size_t> offending;
  for (std::size_t i = 0; i < in.points.size(); ++i) {
    conelift::ConePoint p{in.k, in.points[i]};
    const conelift::ConeCheck c = conelift::cone_contains(p);
    const double scale = std::max(1.0, p.coords.squaredNorm());
    if (!c.future || c.quadric_residual / scale > 1e-8 || c.slice_residual > 1e-8)
      offending.push_back(i);
  }
  if (!offending.empty()) {
    std::cerr << "points off the cone at indices:";
    for (std::size_t i : offending) std::cerr << ' ' << i;
    std::cerr << '\n';
    return kExitValidation;
  }

  io::ConePointFile converted;
  converted.k = k_to;
  converted.n = in.n;
  json residuals = json::array();
  for (const conelift::Vec& coords : in.points) {
    const conelift::ConePoint q = conelift::cone_convert({in.k, coords}, k_to);
    converted.points.push_back(q.coords);
    residuals.push_back(io::dec17(conelift::cone_contains(q).quadric_residual));
  }
  json report = io::cone_points_to_json(converted);
  report["residuals"] = std::move(residuals);
  emit(report, out);
  return kExitOk;
}

int run_project(const std::string& points_path, const std::string& out) {
  namespace io = conelift::io;
  const io::ConePointFile in = io::cone_points_from_json(io::read_file(points_path));
  std::vector<conelift::Vec> sphere;
  sphere.reserve(in.points.size());
  for (const conelift::Vec& coords : in.points)
    sphere.push_back(conelift::cone_project({in.k, coords}));
  emit(io::sphere_points_to_json(in.n, sphere), out);
  return kExitOk;
}

int run_lift(const std::string& chart_path, const std::string& metric_path, int k, double fd_tol,
             const std::string& out) {
  namespace io = conelift::io;
  const json cj = io::read_file(chart_path);
  const conelift::GridChart psi = io::chart_from_json(cj);
  const conelift::MetricField g = metric_for_chart(cj, metric_path);

  const conelift::ConformalFactorResult factor = conelift::extract_conformal_factor(psi, g);
  if (factor.max_residual > fd_tol) {
    std::cerr << "chart is not conformal for the supplied metric (residual "
              << io::dec17(factor.max_residual) << ")\n";
    return kExitValidation;
  }
  const conelift::GridChart lifted = conelift::cone_lift(psi, factor.lambda, k);
  emit(io::chart_to_json(lifted, &g), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"light-cone immersion and Lorentz recovery toolkit"};
  app.require_subcommand(1);

  double tol = 1e-9;
  double fd_tol = 1e-3;
  std::string out;
  if (const char* env = std::getenv("CONELIFT_TOL")) {
    try {
      tol = std::stod(env);
    } catch (...) {
      std::cerr << "CONELIFT_TOL is not a number\n";
      return kExitUsage;
    }
  }
  app.add_option("--tol", tol, "validation tolerance (env CONELIFT_TOL; flags win)")
      ->capture_default_str();
  app.add_option("--fd-tol", fd_tol, "finite-difference tolerance")->capture_default_str();
  app.add_option("--out", out, "output file (reports) or directory (gen)");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "write fixture files");
  gen->fallthrough();
  gen->add_option("fixture", gen_opt.fixture,
                  "circle-n2 | sphere-identity | tau-pair | cone-selfmap | nonconformal-pair")
      ->required();
  gen->add_option("--nodes", gen_opt.nodes, "grid nodes (circle-n2)");
  gen->add_option("--n", gen_opt.n, "sphere dimension parameter");
  gen->add_option("--seed", gen_opt.seed, "random seed");
  gen->add_option("--shape", gen_opt.shape, "grid shape per axis")->delimiter(',');
  gen->add_option("--levels", gen_opt.levels, "t levels (cone-selfmap)")->delimiter(',');
  gen->add_option("--count", gen_opt.count, "pair count (nonconformal-pair)");
  gen->add_option("--steps", gen_opt.steps, "generator composition steps");
  gen->add_option("--bound", gen_opt.bound, "generator parameter bound");

  std::string verify_chart, verify_metric;
  CLI::App* verify = app.add_subcommand("verify", "check a cone chart is an isometric immersion");
  verify->fallthrough();
  verify->add_option("chart", verify_chart, "cone chart JSON")->required();
  verify->add_option("metric", verify_metric, "metric JSON (optional if embedded)");

  std::vector<std::string> recover_inputs;
  std::string recover_metric;
  bool polish = false;
  CLI::App* recover = app.add_subcommand("recover", "recover the relating transformation");
  recover->fallthrough();
  recover->add_option("inputs", recover_inputs,
                      "pair file, or chart1 chart2 [metric]")
      ->expected(1, 3);
  recover->add_option("--metric", recover_metric, "metric JSON for the two-chart form");
  recover->add_flag("--polish", polish, "one Newton polishing step before validation");

  std::string extend_input;
  CLI::App* extend = app.add_subcommand("extend", "extend a cone self-map to an ambient map");
  extend->fallthrough();
  extend->add_option("selfmap", extend_input, "self-map sample JSON")->required();

  std::string embed_input;
  int embed_k = 0;
  CLI::App* embed = app.add_subcommand("embed", "convert cone points between tags");
  embed->fallthrough();
  embed->add_option("points", embed_input, "cone point JSON")->required();
  embed->add_option("--to", embed_k, "target tag: 0, +1 or -1")->required();

  std::string project_input;
  CLI::App* project = app.add_subcommand("project", "project cone points to sphere points");
  project->fallthrough();
  project->add_option("points", project_input, "cone point JSON")->required();

  std::string lift_chart, lift_metric;
  int lift_k = 0;
  CLI::App* lift = app.add_subcommand("lift", "lift a conformal sphere chart onto a cone");
  lift->fallthrough();
  lift->add_option("chart", lift_chart, "sphere chart JSON")->required();
  lift->add_option("metric", lift_metric, "metric JSON (optional if embedded)");
  lift->add_option("--k", lift_k, "cone tag: 0, +1 or -1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_opt.out = out;
      return run_gen(gen_opt);
    }
    if (verify->parsed()) return run_verify(verify_chart, verify_metric, tol, fd_tol, out);
    if (recover->parsed())
      return run_recover(recover_inputs, recover_metric, tol, fd_tol, polish, out);
    if (extend->parsed()) return run_extend(extend_input, tol, fd_tol, out);
    if (embed->parsed()) return run_embed(embed_input, embed_k, out);
    if (project->parsed()) return run_project(project_input, out);
    if (lift->parsed()) return run_lift(lift_chart, lift_metric, lift_k, fd_tol, out);
  } catch (const conelift::io::io_error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
