#include "qnnbench/optim/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace qnnbench::optim {

std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::MaxIter:
    return "max_iter";
  case Termination::GradTol:
    return "grad_tol";
  case Termination::LineSearchFail:
    return "line_search_fail";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a)
    m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

// Minimiser of the cubic interpolating (a, fa, da) and (b, fb, db); NaN if
// the cubic has no local minimum.
double cubic_minimizer(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  if (!(disc >= 0.0))
    return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  const double denom = db - da + 2.0 * d2;
  if (denom == 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return b - (b - a) * (db + d2 - d1) / denom;
}

struct Point {
  double alpha = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  std::vector<double> x;
  std::vector<double> g;
};

struct SearchOutcome {
  enum class Kind { Wolfe, ArmijoOnly, Fail } kind = Kind::Fail;
  Point point;
  bool interpolated = false;
  bool hit_bound = false;
};

class Problem {
public:
  Problem(const Objective &objective, const OptimizeOptions &options)
      : objective_(objective), options_(options) {}

  double evaluate(std::span<const double> x, std::span<double> g) {
    ++evals;
    return objective_(x, g);
  }

  void project(std::span<double> x) const {
    if (!options_.bounds)
      return;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::clamp(x[i], options_.bounds->lower[i], options_.bounds->upper[i]);
  }

  // P(x - g) - x; equals -g without bounds.
  std::vector<double> projected_gradient(std::span<const double> x,
                                         std::span<const double> g) const {
    std::vector<double> pg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double moved = x[i] - g[i];
      if (options_.bounds)
        moved = std::clamp(moved, options_.bounds->lower[i], options_.bounds->upper[i]);
      pg[i] = x[i] - moved;
    }
    return pg;
  }

  int evals = 0;

private:
  const Objective &objective_;
  const OptimizeOptions &options_;
};

class LineSearch {
public:
  LineSearch(Problem &problem, const OptimizeOptions &options, const Point &start,
             std::span<const double> direction, double alpha_max)
      : problem_(problem), options_(options), start_(start), d_(direction),
        alpha_max_(alpha_max), eval_budget_(problem.evals + options.max_line_search_evals) {}

  SearchOutcome run(double alpha_init) {
    Point prev = start_;
    double alpha = std::min(alpha_init, alpha_max_);
    for (int i = 0;; ++i) {
      if (problem_.evals >= eval_budget_)
        return fail(prev);
      Point trial = at(alpha);
      if (!std::isfinite(trial.phi) || !armijo(trial) || (i > 0 && trial.phi >= prev.phi))
        return zoom(std::move(prev), std::move(trial));
      if (curvature(trial))
        return {SearchOutcome::Kind::Wolfe, std::move(trial), false, false};
      if (trial.dphi >= 0.0)
        return zoom(std::move(trial), std::move(prev));
      if (alpha >= alpha_max_)
        return {SearchOutcome::Kind::Wolfe, std::move(trial), false, true};
      prev = std::move(trial);
      alpha = std::min(4.0 * alpha, alpha_max_);
    }
  }

  // Try the cubic-model minimiser through the start point and `accepted`.
  SearchOutcome refine(SearchOutcome accepted) {
    const Point &t = accepted.point;
    const double a = cubic_minimizer(0.0, start_.phi, start_.dphi, t.alpha, t.phi, t.dphi);
    if (!std::isfinite(a) || a <= 0.0 || a > std::min(alpha_max_, 10.0 * t.alpha) ||
        std::abs(a - t.alpha) <= 1e-12 * t.alpha)
      return accepted;
    Point r = at(a);
    if (std::isfinite(r.phi) && armijo(r) && curvature(r) && r.phi < t.phi)
      return {SearchOutcome::Kind::Wolfe, std::move(r), true, a >= alpha_max_};
    return accepted;
  }

private:
  Point at(double alpha) {
    Point p;
    p.alpha = alpha;
    p.x.resize(start_.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i)
      p.x[i] = start_.x[i] + alpha * d_[i];
    problem_.project(p.x);
    p.g.assign(p.x.size(), 0.0);
    p.phi = problem_.evaluate(p.x, p.g);
    p.dphi = all_finite(p.g) ? dot(p.g, d_) : std::numeric_limits<double>::quiet_NaN();
    return p;
  }

  bool armijo(const Point &p) const {
    return p.phi <= start_.phi + options_.c1 * p.alpha * start_.dphi;
  }
  bool curvature(const Point &p) const {
    return std::abs(p.dphi) <= -options_.c2 * start_.dphi;
  }

  SearchOutcome zoom(Point lo, Point hi) {
    while (problem_.evals < eval_budget_) {
      const double lo_a = lo.alpha, hi_a = hi.alpha;
      const double width = std::abs(hi_a - lo_a);
      if (width <= 1e-16 * std::max(1.0, std::abs(lo_a)))
        break;
      double alpha = std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(hi.phi) && std::isfinite(hi.dphi))
        alpha = cubic_minimizer(lo_a, lo.phi, lo.dphi, hi_a, hi.phi, hi.dphi);
      const double left = std::min(lo_a, hi_a), right = std::max(lo_a, hi_a);
      if (!(alpha > left + 1e-3 * width && alpha < right - 1e-3 * width))
        alpha = 0.5 * (lo_a + hi_a);

      Point trial = at(alpha);
      if (!std::isfinite(trial.phi) || !armijo(trial) || trial.phi >= lo.phi) {
        hi = std::move(trial);
      } else {
        if (curvature(trial))
          return {SearchOutcome::Kind::Wolfe, std::move(trial), true, false};
        if (trial.dphi * (hi.alpha - lo.alpha) >= 0.0)
          hi = std::move(lo);
        lo = std::move(trial);
      }
    }
    return fail(lo);
  }

  SearchOutcome fail(const Point &best) const {
    if (best.alpha > 0.0 && best.phi < start_.phi)
      return {SearchOutcome::Kind::ArmijoOnly, best, false, false};
    return {SearchOutcome::Kind::Fail, start_, false, false};
  }

  Problem &problem_;
  const OptimizeOptions &options_;
  const Point &start_;
  std::span<const double> d_;
  double alpha_max_;
  int eval_budget_;
};

void validate(std::span<const double> x0, const OptimizeOptions &o) {
  if (o.max_iter < 1)
    throw std::invalid_argument("minimize: max_iter must be >= 1");
  if (!(o.grad_tol > 0.0))
    throw std::invalid_argument("minimize: grad_tol must be > 0");
  if (o.memory < 1)
    throw std::invalid_argument("minimize: memory must be >= 1");
  if (!(o.c1 > 0.0 && o.c1 < o.c2 && o.c2 < 1.0))
    throw std::invalid_argument("minimize: need 0 < c1 < c2 < 1");
  if (o.bounds) {
    const auto &b = *o.bounds;
    if (b.lower.size() != x0.size() || b.upper.size() != x0.size())
      throw std::invalid_argument("minimize: bounds dimension mismatch");
    for (std::size_t i = 0; i < x0.size(); ++i) {
      if (!(b.lower[i] <= b.upper[i]))
        throw std::invalid_argument("minimize: lower bound exceeds upper bound");
      if (x0[i] < b.lower[i] || x0[i] > b.upper[i])
        throw std::invalid_argument("minimize: x0 outside bounds");
    }
  }
}

} // namespace

OptimizeResult minimize(const Objective &objective, std::span<const double> x0,
                        const OptimizeOptions &options) {
  validate(x0, options);
  const std::size_t n = x0.size();
  Problem problem(objective, options);

  Point current;
  current.x.assign(x0.begin(), x0.end());
  current.g.assign(n, 0.0);
  current.phi = problem.evaluate(current.x, current.g);
  if (!std::isfinite(current.phi) || !all_finite(current.g))
    throw std::invalid_argument("minimize: objective or gradient not finite at x0");

  OptimizeResult result;
  result.f_initial = current.phi;

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> memory;

  auto finish = [&](Termination t) {
    result.x_final = current.x;
    result.f_final = current.phi;
    result.termination = t;
    result.n_evals = problem.evals;
    return result;
  };

  std::vector<double> pg = problem.projected_gradient(current.x, current.g);
  if (inf_norm(pg) <= options.grad_tol)
    return finish(Termination::GradTol);

  std::vector<double> d(n), alpha_buf(static_cast<std::size_t>(options.memory));
  // Coordinates held on a bound because the gradient pushes outward. The
  // quasi-Newton model lives on the remaining ones; curvature pairs from a
  // different face are discarded.
  std::vector<char> active(n, 0), prev_active(n, 0);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    if (options.bounds) {
      const auto &b = *options.bounds;
      for (std::size_t i = 0; i < n; ++i)
        active[i] = (current.x[i] <= b.lower[i] && current.g[i] > 0.0) ||
                    (current.x[i] >= b.upper[i] && current.g[i] < 0.0);
      if (active != prev_active)
        memory.clear();
      prev_active = active;
    }

    // Two-loop recursion: d = -H g on the free coordinates.
    for (std::size_t i = 0; i < n; ++i)
      d[i] = active[i] ? 0.0 : -current.g[i];
    for (std::size_t k = memory.size(); k-- > 0;) {
      const auto &m = memory[k];
      alpha_buf[k] = m.rho * dot(m.s, d);
      for (std::size_t i = 0; i < n; ++i)
        d[i] -= alpha_buf[k] * m.y[i];
    }
    if (!memory.empty()) {
      const auto &last = memory.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (auto &v : d)
        v *= gamma;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const auto &m = memory[k];
      const double beta = m.rho * dot(m.y, d);
      for (std::size_t i = 0; i < n; ++i)
        d[i] += (alpha_buf[k] - beta) * m.s[i];
    }

    // Also freeze free coordinates on a bound that the model would push out.
    if (options.bounds) {
      const auto &b = *options.bounds;
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i] || (current.x[i] <= b.lower[i] && d[i] < 0.0) ||
            (current.x[i] >= b.upper[i] && d[i] > 0.0))
          d[i] = 0.0;
      }
    }

    current.dphi = dot(current.g, d);
    if (!(current.dphi < 0.0)) {
      // Not a descent direction: restart from projected steepest descent.
      memory.clear();
      for (std::size_t i = 0; i < n; ++i)
        d[i] = -pg[i];
      current.dphi = dot(current.g, d);
      if (!(current.dphi < 0.0))
        return finish(Termination::LineSearchFail);
    }

    double alpha_max = kInf;
    if (options.bounds) {
      const auto &b = *options.bounds;
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] > 0.0)
          alpha_max = std::min(alpha_max, (b.upper[i] - current.x[i]) / d[i]);
        else if (d[i] < 0.0)
          alpha_max = std::min(alpha_max, (b.lower[i] - current.x[i]) / d[i]);
      }
    }
    const double alpha_init = memory.empty() ? std::min(1.0, 1.0 / std::sqrt(dot(d, d))) : 1.0;

    current.alpha = 0.0;
    LineSearch search(problem, options, current, d, alpha_max);
    SearchOutcome outcome = search.run(alpha_init);
    if (outcome.kind == SearchOutcome::Kind::Fail)
      return finish(Termination::LineSearchFail);
    if (outcome.kind == SearchOutcome::Kind::Wolfe && !outcome.interpolated &&
        !outcome.hit_bound && options.refine_unit_steps)
      outcome = search.refine(std::move(outcome));

    Point next = std::move(outcome.point);
    result.steps.push_back(
        {next.alpha, current.phi, current.dphi, next.phi, next.dphi, outcome.hit_bound});

    Pair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = next.x[i] - current.x[i];
      pair.y[i] = active[i] ? 0.0 : next.g[i] - current.g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > std::numeric_limits<double>::epsilon() * dot(pair.y, pair.y)) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > static_cast<std::size_t>(options.memory))
        memory.pop_front();
    }

    current.x = std::move(next.x);
    current.g = std::move(next.g);
    current.phi = next.phi;
    result.f_history.push_back(current.phi);
    result.n_iters = iter + 1;

    if (outcome.kind == SearchOutcome::Kind::ArmijoOnly)
      return finish(Termination::LineSearchFail);
    pg = problem.projected_gradient(current.x, current.g);
    if (inf_norm(pg) <= options.grad_tol)
      return finish(Termination::GradTol);
  }
  return finish(Termination::MaxIter);
}

OptimizeResult minimize(const std::function<double(std::span<const double>)> &f,
                        const std::function<void(std::span<const double>, std::span<double>)> &grad,
                        std::span<const double> x0, const OptimizeOptions &options) {
  return minimize(
      [&](std::span<const double> x, std::span<double> g) {
        grad(x, g);
        return f(x);
      },
      x0, options);
}

} // namespace qnnbench::optim
