#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qnnbench::optim {

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct OptimizeOptions {
  int max_iter = 25;
  double grad_tol = 1e-8; // on the infinity norm of the projected gradient
  int memory = 10;
  std::optional<Bounds> bounds;

  // Strong-Wolfe line-search constants.
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search_evals = 40;

  // When a step is accepted without interpolation, try the minimiser of the
  // cubic model through both endpoints and keep it if it also satisfies the
  // Wolfe conditions with a lower objective. Makes quadratics terminate in
  // at most d+1 iterations at the cost of one extra evaluation per step.
  bool refine_unit_steps = true;
};

enum class Termination { MaxIter, GradTol, LineSearchFail };

std::string_view to_string(Termination t);

// Data for one accepted step, enough to re-check the Wolfe conditions.
struct StepRecord {
  double alpha = 0.0;
  double phi0 = 0.0;  // f at the start of the step
  double dphi0 = 0.0; // directional derivative at the start
  double phi = 0.0;   // f at the accepted point
  double dphi = 0.0;  // directional derivative at the accepted point
  bool hit_bound = false; // step truncated at the feasible boundary
};

struct OptimizeResult {
  std::vector<double> x_final;
  double f_initial = 0.0;
  double f_final = 0.0;
  std::vector<double> f_history; // f after each completed iteration
  std::vector<StepRecord> steps;
  int n_iters = 0;
  int n_evals = 0;
  Termination termination = Termination::MaxIter;
};

// Writes the gradient into `grad` and returns the objective value.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

// Limited-memory BFGS with a strong-Wolfe line search. With bounds, search
// directions are clipped on active coordinates and steps are capped at the
// feasible boundary, so every iterate stays in the box.
//
// Throws std::invalid_argument for bad options, an infeasible x0, or a
// non-finite objective/gradient at x0.
OptimizeResult minimize(const Objective &objective, std::span<const double> x0,
                        const OptimizeOptions &options = {});

OptimizeResult minimize(const std::function<double(std::span<const double>)> &f,
                        const std::function<void(std::span<const double>, std::span<double>)> &grad,
                        std::span<const double> x0, const OptimizeOptions &options = {});

} // namespace qnnbench::optim
