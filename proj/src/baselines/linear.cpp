#include "qnnbench/baselines/linear.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace qnnbench::baselines {

double LinearModel::predict(std::span<const double> x) const {
  if (x.size() != weights.size())
    throw std::invalid_argument("LinearModel::predict: width mismatch");
  double v = intercept;
  for (std::size_t i = 0; i < x.size(); ++i)
    v += weights[i] * x[i];
  return v;
}

std::vector<double> LinearModel::predict(const Matrix &X) const {
  std::vector<double> out;
  out.reserve(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i)
    out.push_back(predict(X.row(i)));
  return out;
}

LinearModel ols_fit(const Matrix &X, std::span<const double> y) {
  if (X.rows() != y.size())
    throw std::invalid_argument("ols_fit: row count mismatch");
  if (X.rows() <= X.cols())
    throw std::invalid_argument("ols_fit: need more rows than features");

  const auto n = static_cast<Eigen::Index>(X.rows());
  const auto p = static_cast<Eigen::Index>(X.cols());
  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j)
      A(i, j) = X(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    b(i) = y[static_cast<std::size_t>(i)];
  }

  const Eigen::RowVectorXd x_mean = A.colwise().mean();
  const double y_mean = b.mean();
  A.rowwise() -= x_mean;
  b.array() -= y_mean;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  const Eigen::VectorXd w = cod.solve(b);

  LinearModel model;
  model.weights.assign(w.data(), w.data() + w.size());
  model.intercept = y_mean - x_mean.dot(w);
  model.rank = static_cast<std::size_t>(cod.rank());
  model.rank_deficient = cod.rank() < p;
  return model;
}

} // namespace qnnbench::baselines
