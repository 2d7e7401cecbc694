// Benchmark: parallel gradient estimation vs the serial reference, and the
// full rollout+gradient iteration, across batch sizes.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>
#include <vector>

#include "riskgrad/harness.hpp"

using namespace riskgrad;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

} // namespace

int main() {
  const int horizon = 200;
  auto env = make_env("cartpole", horizon);
  Rng init_rng(42);
  PolicyParams params =
      init_params(std::array<int, 5>{env->spec().obs_dim, 64, 64, 64, env->spec().action_count},
                  init_rng);
  RiskObjective objective = RiskObjective::sensitive(-0.1);
  const double gamma = 0.99;

  std::printf("threads=%d  net=[%d,64,64,64,%d]  horizon=%d\n\n", omp_get_max_threads(),
              env->spec().obs_dim, env->spec().action_count, horizon);
  std::printf("%8s %14s %14s %9s %14s\n", "batch", "serial ms", "parallel ms", "speedup",
              "rollout+grad ms");

  for (int batch : {10, 40, 160}) {
    std::vector<Trajectory> trajectories(batch);
    for (int i = 0; i < batch; ++i) {
      Rng rng(mix_seed(7, 1, static_cast<std::uint64_t>(i)));
      auto worker = env->clone();
      trajectories[i] = sample_trajectory(params, *worker, horizon, rng);
    }
    const int reps = batch <= 40 ? 20 : 5;

    double serial_ms = time_ms(
        [&] { ref::estimate_gradient_serial(params, trajectories, gamma, objective); }, reps);
    double parallel_ms =
        time_ms([&] { estimate_gradient(params, trajectories, gamma, objective); }, reps);

    double pipeline_ms = time_ms(
        [&] {
          std::vector<Trajectory> batch_trajs(batch);
#pragma omp parallel for schedule(dynamic, 1)
          for (int i = 0; i < batch; ++i) {
            auto worker = env->clone();
            Rng rng(mix_seed(9, 1, static_cast<std::uint64_t>(i)));
            batch_trajs[i] = sample_trajectory(params, *worker, horizon, rng);
          }
          estimate_gradient(params, batch_trajs, gamma, objective);
        },
        reps);

    std::printf("%8d %14.3f %14.3f %8.2fx %14.3f\n", batch, serial_ms, parallel_ms,
                serial_ms / parallel_ms, pipeline_ms);
  }
  return 0;
}
