#include "cfrl/features.hpp"

#include <stdexcept>

namespace cfrl {

namespace {

void enumerate(int dims, int remaining, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == dims) {
    out.push_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current.push_back(e);
    enumerate(dims, remaining - e, current, out);
    current.pop_back();
  }
}

}  // namespace

PolynomialFeatures::PolynomialFeatures(int input_dim, int degree)
    : input_dim_(input_dim), degree_(degree) {
  if (input_dim < 1 || degree < 0) throw std::invalid_argument("polynomial features: bad dims");
  std::vector<std::vector<int>> all;
  std::vector<int> current;
  enumerate(input_dim, degree, current, all);
  // Order by total degree, then lexicographically; keeps [1, x, x^2, ...] for p=1.
  for (int d = 0; d <= degree; ++d) {
    for (const auto& e : all) {
      int total = 0;
      for (int v : e) total += v;
      if (total == d) exponents_.push_back(e);
    }
  }
}

Eigen::RowVectorXd PolynomialFeatures::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != input_dim_) throw std::invalid_argument("polynomial features: input dim mismatch");
  Eigen::RowVectorXd out(output_dim());
  for (int j = 0; j < output_dim(); ++j) {
    double v = 1.0;
    const auto& e = exponents_[j];
    for (int k = 0; k < input_dim_; ++k) {
      for (int r = 0; r < e[k]; ++r) v *= x[k];
    }
    out[j] = v;
  }
  return out;
}

Eigen::MatrixXd PolynomialFeatures::matrix(const Eigen::Ref<const Eigen::MatrixXd>& X) const {
  Eigen::MatrixXd out(X.rows(), output_dim());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out.row(i) = (*this)(X.row(i).transpose());
  }
  return out;
}

PolynomialActionFeatures::PolynomialActionFeatures(int state_dim, int n_actions, int degree)
    : base_(state_dim, degree), n_actions_(n_actions) {
  if (n_actions < 2) throw std::invalid_argument("action features: need n_actions >= 2");
}

Eigen::RowVectorXd PolynomialActionFeatures::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                                                        int action) const {
  if (action < 0 || action >= n_actions_) throw std::invalid_argument("action features: bad action");
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(output_dim());
  out.segment(action * terms_per_block(), terms_per_block()) = base_(x);
  return out;
}

Eigen::MatrixXd PolynomialActionFeatures::matrix(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                                 const std::vector<int>& actions) const {
  if (static_cast<Eigen::Index>(actions.size()) != X.rows()) {
    throw std::invalid_argument("action features: actions/states length mismatch");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(X.rows(), output_dim());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int a = actions[i];
    if (a < 0 || a >= n_actions_) throw std::invalid_argument("action features: bad action");
    out.row(i).segment(a * terms_per_block(), terms_per_block()) = base_(X.row(i).transpose());
  }
  return out;
}

}  // namespace cfrl
