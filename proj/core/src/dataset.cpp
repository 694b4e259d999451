#include "cfrl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cfrl/errors.hpp"

namespace cfrl {

void TrajectoryDataset::validate() const {
  const Eigen::Index rows = static_cast<Eigen::Index>(n_individuals) * (horizon + 1);
  if (n_individuals < 1 || horizon < 1 || state_dim < 1 || n_actions < 2) {
    throw std::runtime_error("dataset: need N >= 1, T >= 1, p >= 1, n_actions >= 2");
  }
  if (states.rows() != rows || states.cols() != state_dim ||
      static_cast<Eigen::Index>(actions.size()) != rows || outcomes.size() != rows) {
    throw std::runtime_error("dataset: states/actions/outcomes shapes disagree");
  }
  for (int a : actions) {
    if (a < 0 || a >= n_actions) {
      throw std::runtime_error("dataset: action code " + std::to_string(a) +
                               " outside [0, " + std::to_string(n_actions) + ")");
    }
  }
}

TransitionBatch pool_transitions(const TrajectoryDataset& data, const Eigen::MatrixXd& utilities) {
  data.validate();
  if (utilities.rows() != data.n_individuals || utilities.cols() != data.horizon + 1) {
    throw std::runtime_error("pool_transitions: utilities must be N x (T+1)");
  }
  const int n = data.n_individuals * data.horizon;
  TransitionBatch batch;
  batch.state.resize(n, data.state_dim);
  batch.next_state.resize(n, data.state_dim);
  batch.action.resize(n);
  batch.utility.resize(n);
  batch.n_actions = data.n_actions;
  int row = 0;
  for (int i = 0; i < data.n_individuals; ++i) {
    for (int t = 0; t < data.horizon; ++t, ++row) {
      batch.state.row(row) = data.states.row(data.flat(i, t));
      batch.next_state.row(row) = data.states.row(data.flat(i, t + 1));
      batch.action[row] = data.actions[data.flat(i, t)];
      batch.utility[row] = utilities(i, t);
    }
  }
  return batch;
}

ActionMapping ActionMapping::identity(const std::string& column) {
  ActionMapping m;
  ActionRule rule;
  rule.column = column;
  rule.identity = true;
  rule.weight = 1;
  m.rules.push_back(std::move(rule));
  return m;
}

bool ActionMapping::is_identity() const {
  return rules.size() == 1 && rules[0].identity;
}

int ActionMapping::max_component_code(const ActionRule& rule) const {
  int mx = 0;
  for (const auto& [values, code] : rule.groups) {
    (void)values;
    mx = std::max(mx, code);
  }
  return mx;
}

int ActionMapping::n_actions() const {
  if (is_identity()) {
    throw std::runtime_error("action mapping: identity mapping has data-dependent size");
  }
  int total = 0;
  for (const auto& rule : rules) total += rule.weight * max_component_code(rule);
  return total + 1;
}

void ActionMapping::validate() const {
  if (rules.empty()) throw ConfigError("action mapping: no rules");
  if (is_identity()) return;
  for (const auto& rule : rules) {
    if (rule.identity) {
      throw ConfigError("action mapping: identity rule cannot be combined with grouped rules");
    }
    if (rule.groups.empty()) {
      throw ConfigError("action mapping: rule for column '" + rule.column + "' has no groups");
    }
    std::set<std::string> seen;
    std::set<int> codes;
    for (const auto& [values, code] : rule.groups) {
      if (code < 0) throw ConfigError("action mapping: negative component code");
      codes.insert(code);
      for (const auto& v : values) {
        if (!seen.insert(v).second) {
          throw ConfigError("action mapping: value '" + v + "' appears in two groups of column '" +
                            rule.column + "'");
        }
      }
    }
    for (int c = 0; c <= max_component_code(rule); ++c) {
      if (!codes.count(c)) {
        throw ConfigError("action mapping: component codes of column '" + rule.column +
                          "' are not contiguous");
      }
    }
  }
  // All combinations of component codes must produce each combined code exactly once.
  std::vector<int> combos{0};
  for (const auto& rule : rules) {
    std::vector<int> next;
    for (int base : combos) {
      for (int c = 0; c <= max_component_code(rule); ++c) {
        next.push_back(base + rule.weight * c);
      }
    }
    combos = std::move(next);
  }
  std::set<int> combined(combos.begin(), combos.end());
  if (static_cast<int>(combined.size()) != static_cast<int>(combos.size()) ||
      *combined.begin() != 0 || *combined.rbegin() != static_cast<int>(combined.size()) - 1) {
    throw ConfigError("action mapping: combined codes are not a contiguous range starting at 0");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) throw std::runtime_error("csv: missing value in column '" + what + "'");
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("csv: bad numeric value '" + s + "' in column '" + what + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) {
    throw std::runtime_error("csv: bad numeric value '" + s + "' in column '" + what + "'");
  }
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("csv: bad integer '" + s + "' in column '" + what + "'");
  }
  if (pos != s.size()) {
    throw std::runtime_error("csv: bad integer '" + s + "' in column '" + what + "'");
  }
  return v;
}

}  // namespace

int ActionMapping::encode(const std::vector<std::string>& raw) const {
  if (raw.size() != rules.size()) {
    throw std::runtime_error("action mapping: expected " + std::to_string(rules.size()) +
                             " action values, got " + std::to_string(raw.size()));
  }
  int code = 0;
  for (size_t k = 0; k < rules.size(); ++k) {
    const auto& rule = rules[k];
    if (rule.identity) {
      code += rule.weight * parse_int(raw[k], rule.column);
      continue;
    }
    bool matched = false;
    for (const auto& [values, component] : rule.groups) {
      if (std::find(values.begin(), values.end(), raw[k]) != values.end()) {
        code += rule.weight * component;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw std::runtime_error("action mapping: value '" + raw[k] + "' in column '" + rule.column +
                               "' matches no group");
    }
  }
  return code;
}

std::vector<std::string> ActionMapping::labels() const {
  if (is_identity()) return {};
  std::vector<std::pair<int, std::string>> partial{{0, ""}};
  for (const auto& rule : rules) {
    std::vector<std::pair<int, std::string>> next;
    for (const auto& [base, text] : partial) {
      for (int c = 0; c <= max_component_code(rule); ++c) {
        std::string t = text.empty() ? "" : text + ",";
        next.emplace_back(base + rule.weight * c, t + rule.column + "=" + std::to_string(c));
      }
    }
    partial = std::move(next);
  }
  std::vector<std::string> out(partial.size());
  for (const auto& [code, text] : partial) out[code] = text;
  return out;
}

TrajectoryDataset load_longitudinal_csv(const std::string& path, const CsvSchema& schema,
                                        const std::optional<ActionMapping>& mapping_opt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");

  ActionMapping mapping = mapping_opt.value_or(
      schema.action_columns.size() == 1 ? ActionMapping::identity(schema.action_columns[0])
                                        : ActionMapping{});
  mapping.validate();
  if (mapping.rules.size() != schema.action_columns.size()) {
    throw ConfigError("csv schema: action mapping has " + std::to_string(mapping.rules.size()) +
                      " rules but schema names " + std::to_string(schema.action_columns.size()) +
                      " action columns");
  }

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file '" + path + "'");
  const std::vector<std::string> header = split_csv_line(line);
  auto column_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error("csv schema: missing column '" + name + "' in '" + path + "'");
    }
    return static_cast<int>(it - header.begin());
  };

  const int id_col = column_index(schema.id_column);
  const int time_col = column_index(schema.time_column);
  std::vector<int> state_cols, action_cols;
  for (const auto& c : schema.state_columns) state_cols.push_back(column_index(c));
  for (const auto& c : schema.action_columns) action_cols.push_back(column_index(c));
  const int outcome_col = column_index(schema.outcome_column);
  if (state_cols.empty()) throw ConfigError("csv schema: no state columns");

  struct Step {
    Eigen::VectorXd x;
    int action;
    double y;
  };
  std::map<std::string, std::map<int, Step>> by_id;
  std::vector<std::string> id_order;

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("csv: row with " + std::to_string(fields.size()) +
                               " fields, header has " + std::to_string(header.size()));
    }
    const std::string id = fields[id_col];
    const int t = parse_int(fields[time_col], schema.time_column);
    Step step;
    step.x.resize(static_cast<Eigen::Index>(state_cols.size()));
    for (size_t k = 0; k < state_cols.size(); ++k) {
      step.x[static_cast<Eigen::Index>(k)] = parse_double(fields[state_cols[k]], schema.state_columns[k]);
    }
    std::vector<std::string> raw_actions;
    for (int c : action_cols) raw_actions.push_back(fields[c]);
    step.action = mapping.encode(raw_actions);
    if (step.action < 0) throw std::runtime_error("csv: negative action code");
    step.y = parse_double(fields[outcome_col], schema.outcome_column);

    auto [it, inserted] = by_id[id].emplace(t, std::move(step));
    (void)it;
    if (!inserted) {
      throw std::runtime_error("csv: duplicate (id, time) pair (" + id + ", " + std::to_string(t) + ")");
    }
    if (by_id[id].size() == 1) id_order.push_back(id);
  }
  if (by_id.empty()) throw std::runtime_error("csv: no data rows in '" + path + "'");

  // Every id must cover exactly t = 0..T for a shared T.
  int horizon = -1;
  for (const auto& id : id_order) {
    const auto& steps = by_id[id];
    const int tmax = steps.rbegin()->first;
    if (steps.begin()->first != 0 || static_cast<int>(steps.size()) != tmax + 1) {
      throw std::runtime_error("csv: id '" + id + "' has non-contiguous time steps");
    }
    if (horizon < 0) horizon = tmax;
    if (tmax != horizon) {
      throw std::runtime_error("csv: ragged horizons (id '" + id + "' has T=" + std::to_string(tmax) +
                               ", expected " + std::to_string(horizon) + ")");
    }
  }

  TrajectoryDataset data;
  data.n_individuals = static_cast<int>(id_order.size());
  data.horizon = horizon;
  data.state_dim = static_cast<int>(state_cols.size());
  const Eigen::Index rows = static_cast<Eigen::Index>(data.n_individuals) * (horizon + 1);
  data.states.resize(rows, data.state_dim);
  data.actions.resize(rows);
  data.outcomes.resize(rows);

  int max_action = 0;
  Eigen::Index row = 0;
  for (const auto& id : id_order) {
    for (const auto& [t, step] : by_id[id]) {
      (void)t;
      data.states.row(row) = step.x.transpose();
      data.actions[row] = step.action;
      data.outcomes[row] = step.y;
      max_action = std::max(max_action, step.action);
      ++row;
    }
  }
  data.n_actions = mapping.is_identity() ? max_action + 1 : mapping.n_actions();
  data.action_labels = mapping.labels();

  // The mapping must be surjective on the loaded data.
  std::vector<bool> seen(data.n_actions, false);
  for (int a : data.actions) seen[a] = true;
  for (int a = 0; a < data.n_actions; ++a) {
    if (!seen[a]) {
      throw std::runtime_error("csv: action code " + std::to_string(a) +
                               " never occurs in the data (mapping not surjective)");
    }
  }
  data.validate();
  return data;
}

void write_longitudinal_csv(const std::string& path, const TrajectoryDataset& data,
                            const CsvSchema& schema) {
  if (schema.action_columns.size() != 1) {
    throw ConfigError("csv writer: expects a single action column for integer codes");
  }
  if (static_cast<int>(schema.state_columns.size()) != data.state_dim) {
    throw ConfigError("csv writer: schema names " + std::to_string(schema.state_columns.size()) +
                      " state columns, dataset has p=" + std::to_string(data.state_dim));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write '" + path + "'");
  out.precision(17);
  out << schema.id_column << ',' << schema.time_column;
  for (const auto& c : schema.state_columns) out << ',' << c;
  out << ',' << schema.action_columns[0] << ',' << schema.outcome_column << '\n';
  for (int i = 0; i < data.n_individuals; ++i) {
    for (int t = 0; t <= data.horizon; ++t) {
      out << i << ',' << t;
      for (int k = 0; k < data.state_dim; ++k) out << ',' << data.states(data.flat(i, t), k);
      out << ',' << data.actions[data.flat(i, t)] << ',' << data.outcomes[data.flat(i, t)] << '\n';
    }
  }
}

}  // namespace cfrl
