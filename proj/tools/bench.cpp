// Timing comparison of the serial reference kernels against the
// OpenMP paths, on a cone chart big enough to amortize dispatch.
// Also asserts the two paths agree bit-for-bit, since that is the
// contract the tests rely on.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conelift/analysis.hpp"
#include "conelift/fixtures.hpp"
#include "conelift/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

bool report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-22s %10.2f ms %10.2f ms   %5.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "bitwise equal" : "MISMATCH");
  return equal;
}

}  // namespace

int main(int argc, char** argv) {
  const int per_axis = argc > 1 ? std::atoi(argv[1]) : 36;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  const int n = 4;

  const std::vector<int> shape(static_cast<std::size_t>(n - 1), per_axis);
  const conelift::fixtures::TauPairFixture fx =
      conelift::fixtures::make_tau_pair(n, 42, shape);
  const conelift::GridChart& chart = fx.chart1;
  const conelift::MetricField& g = fx.g;

  std::printf("grid: %lld nodes (%d^%d), ambient width %d\n",
              static_cast<long long>(chart.num_nodes()), per_axis, n - 1, chart.width());
#ifdef _OPENMP
  std::printf("openmp threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled in this build\n\n");
#endif

  bool ok = true;

  conelift::MetricField p_serial, p_parallel;
  double t_s = best_of(reps, [&] { p_serial = conelift::pullback_metric(chart, conelift::Exec::serial); });
  double t_p = best_of(reps, [&] { p_parallel = conelift::pullback_metric(chart, conelift::Exec::parallel); });
  ok &= report("pullback_metric", t_s, t_p, p_serial.values == p_parallel.values);

  std::vector<double> d_serial, d_parallel;
  t_s = best_of(reps, [&] { d_serial = conelift::metric_deviation(p_serial, g, conelift::Exec::serial); });
  t_p = best_of(reps, [&] { d_parallel = conelift::metric_deviation(p_serial, g, conelift::Exec::parallel); });
  ok &= report("metric_deviation", t_s, t_p, d_serial == d_parallel);

  const conelift::Mat M = fx.tau.entries;
  conelift::GridChart a_serial, a_parallel;
  t_s = best_of(reps, [&] { a_serial = conelift::chart_apply(M, chart, conelift::Exec::serial); });
  t_p = best_of(reps, [&] { a_parallel = conelift::chart_apply(M, chart, conelift::Exec::parallel); });
  ok &= report("chart_apply", t_s, t_p, a_serial.values == a_parallel.values);

  const conelift::GridChart sphere = conelift::fixtures::make_sphere_box_chart(n, shape, true);
  conelift::Mat m_serial, m_parallel;
  t_s = best_of(reps, [&] { m_serial = conelift::mobius_apply_batch(fx.tau, sphere.values, conelift::Exec::serial); });
  t_p = best_of(reps, [&] { m_parallel = conelift::mobius_apply_batch(fx.tau, sphere.values, conelift::Exec::parallel); });
  ok &= report("mobius_apply_batch", t_s, t_p, m_serial == m_parallel);

  const conelift::MetricField ground = conelift::fixtures::round_sphere_metric(sphere);
  conelift::ConformalFactorResult f_serial, f_parallel;
  t_s = best_of(reps, [&] { f_serial = conelift::extract_conformal_factor(sphere, ground, conelift::Exec::serial); });
  t_p = best_of(reps, [&] { f_parallel = conelift::extract_conformal_factor(sphere, ground, conelift::Exec::parallel); });
  ok &= report("extract_factor", t_s, t_p, f_serial.lambda == f_parallel.lambda);

  conelift::GridChart l_serial, l_parallel;
  t_s = best_of(reps, [&] { l_serial = conelift::cone_lift(sphere, f_serial.lambda, 0, conelift::Exec::serial); });
  t_p = best_of(reps, [&] { l_parallel = conelift::cone_lift(sphere, f_serial.lambda, 0, conelift::Exec::parallel); });
  ok &= report("cone_lift", t_s, t_p, l_serial.values == l_parallel.values);

  if (!ok) {
    std::fprintf(stderr, "\nserial/parallel mismatch detected\n");
    return 1;
  }
  return 0;
}
