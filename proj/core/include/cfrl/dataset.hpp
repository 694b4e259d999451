#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfrl {

// Longitudinal log of N individuals observed over T+1 decision points.
// Step (i, t) lives at flat row index i*(T+1)+t in every array.
struct TrajectoryDataset {
  Eigen::MatrixXd states;    // (N*(T+1)) x p
  std::vector<int> actions;  // N*(T+1), values in [0, n_actions)
  Eigen::VectorXd outcomes;  // N*(T+1)
  int n_individuals = 0;     // N
  int horizon = 0;           // T
  int state_dim = 0;         // p
  int n_actions = 0;
  std::vector<std::string> action_labels;  // optional, code -> raw label

  int steps_per_individual() const { return horizon + 1; }
  Eigen::Index n_steps() const { return states.rows(); }
  int flat(int individual, int t) const { return individual * (horizon + 1) + t; }
  Eigen::VectorXd state_at(int individual, int t) const {
    return states.row(flat(individual, t)).transpose();
  }
  int action_at(int individual, int t) const { return actions[flat(individual, t)]; }
  double outcome_at(int individual, int t) const { return outcomes[flat(individual, t)]; }

  // Checks the shape and action-range invariants; throws on violation.
  void validate() const;
};

// Pooled one-step transitions (X, A, R, X'). The last step of each
// trajectory has no successor and is dropped as a source, so n = N*T.
struct TransitionBatch {
  Eigen::MatrixXd state;       // n x p
  std::vector<int> action;     // n
  Eigen::VectorXd utility;     // n
  Eigen::MatrixXd next_state;  // n x p
  int n_actions = 0;

  Eigen::Index size() const { return state.rows(); }
};

// utilities must be N x (T+1); the value at the source step becomes the row's utility.
TransitionBatch pool_transitions(const TrajectoryDataset& data, const Eigen::MatrixXd& utilities);

// Action construction from one or more raw CSV columns. Each rule maps a
// column's raw values onto a small component code; the combined action is
// the weighted sum of the components (e.g. 2*base + comp).
struct ActionRule {
  std::string column;
  bool identity = false;  // raw value already is the component code
  std::vector<std::pair<std::vector<std::string>, int>> groups;  // raw values -> code
  int weight = 1;
};

struct ActionMapping {
  std::vector<ActionRule> rules;

  // Identity mapping over a single action column.
  static ActionMapping identity(const std::string& column);

  bool is_identity() const;
  int max_component_code(const ActionRule& rule) const;
  // Number of combined codes; requires a non-identity mapping.
  int n_actions() const;
  // Every combination of component codes must land on a distinct code and
  // the codes must form the contiguous range {0..n_actions-1}.
  void validate() const;
  // Maps raw column values (one per rule, in rule order) to the combined code.
  int encode(const std::vector<std::string>& raw) const;
  // Human-readable label for a combined code, e.g. "base=1,comp=0".
  std::vector<std::string> labels() const;
};

// Column roles for the longitudinal CSV layout (one row per id x time).
struct CsvSchema {
  std::string id_column = "id";
  std::string time_column = "t";
  std::vector<std::string> state_columns;   // x_1..x_p
  std::vector<std::string> action_columns;  // one per mapping rule
  std::string outcome_column = "y";
};

// Reads a longitudinal CSV. Every (id, time) pair must be unique, times per
// id must be 0..T contiguous, and all ids must share the same T. Actions are
// mapped through `mapping` (identity over the single action column when
// absent). Missing values are a hard error.
TrajectoryDataset load_longitudinal_csv(const std::string& path, const CsvSchema& schema,
                                        const std::optional<ActionMapping>& mapping = std::nullopt);

// Writes a dataset using integer action codes in a single action column.
void write_longitudinal_csv(const std::string& path, const TrajectoryDataset& data,
                            const CsvSchema& schema);

}  // namespace cfrl
