#include "qnnbench/qnn/regressor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qnnbench/core/random.hpp"

namespace qnnbench::qnn {

QnnModel::QnnModel(QnnConfig config, std::vector<double> params)
    : config_(std::move(config)), circuits_(build_circuits(config_)), params_(std::move(params)) {
  if (params_.size() != circuits_.composed.n_trainable_slots())
    throw std::invalid_argument("QnnModel: expected " +
                                std::to_string(circuits_.composed.n_trainable_slots()) +
                                " parameters, got " + std::to_string(params_.size()));
  for (double p : params_)
    if (!std::isfinite(p))
      throw std::invalid_argument("QnnModel: non-finite parameter");
}

double QnnModel::predict(std::span<const double> features) const {
  if (features.size() != static_cast<std::size_t>(config_.n_qubits))
    throw std::invalid_argument("QnnModel::predict: expected " +
                                std::to_string(config_.n_qubits) + " features");
  const auto state = circuit::evaluate_circuit(circuits_.composed, features, params_);
  return quantum::expectation(state, config_.observable);
}

std::vector<double> QnnModel::predict(const Matrix &X) const {
  std::vector<double> out;
  out.reserve(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i)
    out.push_back(predict(X.row(i)));
  return out;
}

QnnObjective::QnnObjective(const QnnCircuits &circuits, quantum::Observable observable,
                           const Matrix &X, std::span<const double> y)
    : ansatz_(circuits.ansatz), observable_(observable), targets_(y.begin(), y.end()) {
  if (X.rows() == 0)
    throw std::invalid_argument("QnnObjective: empty data");
  if (X.rows() != y.size())
    throw std::invalid_argument("QnnObjective: feature/target row mismatch");
  if (X.cols() != circuits.feature_map.n_feature_slots())
    throw std::invalid_argument("QnnObjective: expected " +
                                std::to_string(circuits.feature_map.n_feature_slots()) +
                                " feature columns");

  // The shift rule below perturbs one gate per parameter, so every trainable
  // slot must be used exactly once.
  multipliers_.assign(ansatz_.n_trainable_slots(), 0.0);
  std::vector<int> uses(ansatz_.n_trainable_slots(), 0);
  for (const auto &ins : ansatz_.instructions()) {
    if (ins.slot && ins.slot->role == circuit::SlotRole::Trainable) {
      ++uses[ins.slot->index];
      multipliers_[ins.slot->index] = ins.slot->multiplier;
    }
  }
  for (int u : uses)
    if (u != 1)
      throw std::invalid_argument("QnnObjective: each parameter must drive exactly one gate");

  encoded_.reserve(X.rows());
  const std::vector<double> no_params;
  for (std::size_t i = 0; i < X.rows(); ++i)
    encoded_.push_back(circuit::evaluate_circuit(circuits.feature_map, X.row(i), no_params));
}

double QnnObjective::expectation_from(std::size_t sample, std::span<const double> params) const {
  quantum::StateVector state = encoded_[sample];
  circuit::apply_circuit(ansatz_, state, {}, params);
  return quantum::expectation(state, observable_);
}

std::vector<double> QnnObjective::predictions(std::span<const double> params) const {
  std::vector<double> out(n_samples());
  for (std::size_t i = 0; i < n_samples(); ++i)
    out[i] = expectation_from(i, params);
  return out;
}

double QnnObjective::loss(std::span<const double> params) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_samples(); ++i) {
    const double r = expectation_from(i, params) - targets_[i];
    total += r * r;
  }
  return total / static_cast<double>(n_samples());
}

double QnnObjective::loss_and_gradient(std::span<const double> params,
                                       std::span<double> grad) const {
  const std::size_t n_params = this->n_params();
  if (params.size() != n_params || grad.size() != n_params)
    throw std::invalid_argument("QnnObjective: parameter/gradient length mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);

  std::vector<double> shifted(params.begin(), params.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n_samples(); ++i) {
    const double residual = expectation_from(i, params) - targets_[i];
    total += residual * residual;
    for (std::size_t k = 0; k < n_params; ++k) {
      // Gate angle = m * theta, so shift theta by (pi/2)/m and rescale by m.
      const double m = multipliers_[k];
      const double shift = std::numbers::pi / 2.0 / m;
      shifted[k] = params[k] + shift;
      const double plus = expectation_from(i, shifted);
      shifted[k] = params[k] - shift;
      const double minus = expectation_from(i, shifted);
      shifted[k] = params[k];
      grad[k] += residual * m * 0.5 * (plus - minus);
    }
  }
  const double n = static_cast<double>(n_samples());
  for (auto &g : grad)
    g *= 2.0 / n;
  return total / n;
}

double mse_loss(const QnnModel &model, std::span<const double> params, const Matrix &X,
                std::span<const double> y) {
  return QnnObjective(model.circuits(), model.config().observable, X, y).loss(params);
}

std::vector<double> param_shift_gradient(const QnnModel &model, std::span<const double> params,
                                         const Matrix &X, std::span<const double> y) {
  QnnObjective objective(model.circuits(), model.config().observable, X, y);
  std::vector<double> grad(objective.n_params());
  objective.loss_and_gradient(params, grad);
  return grad;
}

LossHistory pad_history(std::span<const double> per_iteration, double initial_loss,
                        std::size_t length) {
  LossHistory h;
  h.values.assign(per_iteration.begin(), per_iteration.end());
  if (h.values.size() > length)
    h.values.resize(length);
  const double fill = h.values.empty() ? initial_loss : h.values.back();
  h.values.resize(length, fill);
  return h;
}

bool converged_by(const LossHistory &history, std::size_t early, std::size_t late,
                  double rel_tol) {
  const double a = history.at_iteration(early);
  const double b = history.at_iteration(late);
  return std::abs(a - b) <= rel_tol * std::abs(b);
}

std::vector<double> initial_params(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> params(count);
  for (auto &p : params)
    p = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return params;
}

TrainResult train(const QnnConfig &config, const Matrix &X, std::span<const double> y,
                  std::uint64_t seed, const TrainOptions &options) {
  if (X.rows() < options.min_samples)
    throw std::invalid_argument("train: need at least " + std::to_string(options.min_samples) +
                                " samples, got " + std::to_string(X.rows()));

  const QnnCircuits circuits = build_circuits(config);
  const QnnObjective objective(circuits, config.observable, X, y);
  auto x0 = initial_params(objective.n_params(), seed);

  auto opt = optim::minimize(
      [&](std::span<const double> p, std::span<double> g) {
        return objective.loss_and_gradient(p, g);
      },
      x0, options.optimizer);

  auto history = pad_history(opt.f_history, opt.f_initial,
                             static_cast<std::size_t>(options.optimizer.max_iter));
  const double initial = opt.f_initial;
  QnnModel model(config, opt.x_final);
  return TrainResult{std::move(model), std::move(history), initial, std::move(x0), std::move(opt)};
}

} // namespace qnnbench::qnn
