#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cfrl {

// Monomials of total degree <= degree in `input_dim` variables, ordered by
// graded lexicographic multi-index. Degree 2 over p=1 gives [1, x, x^2].
class PolynomialFeatures {
 public:
  PolynomialFeatures(int input_dim, int degree);

  int input_dim() const { return input_dim_; }
  int degree() const { return degree_; }
  int output_dim() const { return static_cast<int>(exponents_.size()); }
  const std::vector<std::vector<int>>& exponents() const { return exponents_; }

  Eigen::RowVectorXd operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd matrix(const Eigen::Ref<const Eigen::MatrixXd>& X) const;

 private:
  int input_dim_;
  int degree_;
  std::vector<std::vector<int>> exponents_;
};

// Polynomial state features crossed with a one-hot action block:
// phi(x, a) is zero outside the block of action a, so phi(x,a).phi(x,a') = 0
// for a != a'.
class PolynomialActionFeatures {
 public:
  PolynomialActionFeatures(int state_dim, int n_actions, int degree);

  int state_dim() const { return base_.input_dim(); }
  int n_actions() const { return n_actions_; }
  int degree() const { return base_.degree(); }
  int terms_per_block() const { return base_.output_dim(); }
  int output_dim() const { return base_.output_dim() * n_actions_; }

  Eigen::RowVectorXd operator()(const Eigen::Ref<const Eigen::VectorXd>& x, int action) const;
  Eigen::MatrixXd matrix(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const std::vector<int>& actions) const;
  const PolynomialFeatures& state_features() const { return base_; }

 private:
  PolynomialFeatures base_;
  int n_actions_;
};

}  // namespace cfrl
