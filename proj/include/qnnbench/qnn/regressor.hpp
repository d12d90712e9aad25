#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qnnbench/core/matrix.hpp"
#include "qnnbench/optim/lbfgs.hpp"
#include "qnnbench/qnn/config.hpp"

namespace qnnbench::qnn {

// A QNN configuration plus its trainable angles. The prediction is the raw
// observable expectation in [-1, 1], regressed directly against targets
// scaled to [0, 1].
class QnnModel {
public:
  // Throws std::invalid_argument if params has the wrong length or a
  // non-finite entry.
  QnnModel(QnnConfig config, std::vector<double> params);

  const QnnConfig &config() const noexcept { return config_; }
  const QnnCircuits &circuits() const noexcept { return circuits_; }
  const circuit::Circuit &circuit() const noexcept { return circuits_.composed; }
  std::span<const double> params() const noexcept { return params_; }
  std::size_t n_params() const noexcept { return params_.size(); }

  double predict(std::span<const double> features) const;
  std::vector<double> predict(const Matrix &X) const;

private:
  QnnConfig config_;
  QnnCircuits circuits_;
  std::vector<double> params_;
};

// MSE objective over a fixed data set. The feature-map state of every sample
// is computed once at construction; evaluations only replay the ansatz.
// Sums run in sample order so results are bit-reproducible.
class QnnObjective {
public:
  // Throws std::invalid_argument for empty data, |X| != |y|, or a feature
  // width different from the qubit count.
  QnnObjective(const QnnCircuits &circuits, quantum::Observable observable, const Matrix &X,
               std::span<const double> y);

  std::size_t n_samples() const noexcept { return targets_.size(); }
  std::size_t n_params() const noexcept { return ansatz_.n_trainable_slots(); }

  std::vector<double> predictions(std::span<const double> params) const;
  double loss(std::span<const double> params) const;

  // Loss plus its exact gradient via the parameter-shift rule:
  //   d<O>/dtheta = (<O>(theta + pi/2) - <O>(theta - pi/2)) / 2
  // chained through the MSE.
  double loss_and_gradient(std::span<const double> params, std::span<double> grad) const;

private:
  double expectation_from(std::size_t sample, std::span<const double> params) const;

  circuit::Circuit ansatz_;
  std::vector<double> multipliers_; // per trainable slot
  quantum::Observable observable_;
  std::vector<quantum::StateVector> encoded_;
  std::vector<double> targets_;
};

double mse_loss(const QnnModel &model, std::span<const double> params, const Matrix &X,
                std::span<const double> y);

std::vector<double> param_shift_gradient(const QnnModel &model, std::span<const double> params,
                                         const Matrix &X, std::span<const double> y);

// Per-iteration training loss, right-padded with the last value to a fixed
// length (the iteration budget).
struct LossHistory {
  std::vector<double> values;

  double at_iteration(std::size_t one_based) const { return values.at(one_based - 1); }
  double final_loss() const { return values.back(); }
};

LossHistory pad_history(std::span<const double> per_iteration, double initial_loss,
                        std::size_t length);

// Loss at `early` within `rel_tol` (relative) of the loss at `late`.
bool converged_by(const LossHistory &history, std::size_t early = 15, std::size_t late = 25,
                  double rel_tol = 0.10);

struct TrainOptions {
  optim::OptimizeOptions optimizer{};
  std::size_t min_samples = 12;
};

struct TrainResult {
  QnnModel model;
  LossHistory history;
  double initial_loss = 0.0;
  std::vector<double> initial_params;
  optim::OptimizeResult optimizer;
};

// Uniform [0, 2pi) initial angles from `seed`, then L-BFGS on the MSE.
// Throws std::invalid_argument if there are fewer than min_samples rows.
TrainResult train(const QnnConfig &config, const Matrix &X, std::span<const double> y,
                  std::uint64_t seed, const TrainOptions &options = {});

std::vector<double> initial_params(std::size_t count, std::uint64_t seed);

} // namespace qnnbench::qnn
