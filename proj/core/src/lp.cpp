// Copyright 2026 The bugshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bugshare/lp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bugshare {

std::size_t LPModel::add_variable(std::string name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::invalid_argument("variable '" + name + "' has inconsistent bounds");
  }
  if (index_.count(name) != 0) {
    throw std::invalid_argument("duplicate variable name '" + name + "'");
  }
  const std::size_t id = variables_.size();
  index_.emplace(name, id);
  variables_.push_back({std::move(name), lower, upper});
  return id;
}

void LPModel::check_terms(const std::vector<LinearTerm>& terms) const {
  for (const LinearTerm& t : terms) {
    if (t.var >= variables_.size()) {
      throw std::invalid_argument("linear term references an undeclared variable");
    }
    if (!std::isfinite(t.coef)) throw std::invalid_argument("non-finite coefficient");
  }
}

void LPModel::add_constraint(std::string name, std::vector<LinearTerm> terms, Sense sense,
                             double rhs) {
  check_terms(terms);
  if (!std::isfinite(rhs)) throw std::invalid_argument("non-finite right-hand side");
  constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
}

void LPModel::set_objective(std::vector<LinearTerm> terms, double constant) {
  check_terms(terms);
  objective_ = std::move(terms);
  objective_constant_ = constant;
}

std::optional<std::size_t> LPModel::find_variable(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

bool LPSolution::certified() const {
  return status == LPStatus::optimal && primal_violation <= 1e-7 && dual_violation <= 1e-7 &&
         std::abs(objective_value - dual_bound) <= 1e-6;
}

double max_violation(const LPModel& model, std::span<const double> x) {
  double worst = 0.0;
  const auto& vars = model.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    worst = std::max({worst, vars[j].lower - x[j], x[j] - vars[j].upper});
  }
  for (const LPConstraint& c : model.constraints()) {
    double lhs = 0.0;
    for (const LinearTerm& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.sense) {
      case Sense::less_equal: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::greater_equal: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

double evaluate_objective(const LPModel& model, std::span<const double> x) {
  double value = model.objective_constant();
  for (const LinearTerm& t : model.objective()) value += t.coef * x[t.var];
  return value;
}

class SimplexSolver::Impl {
 public:
  explicit Impl(const LPModel& model) : model_(model) { build(); }

  LPSolution solve() {
    if (!phase_one_done_) phase_one();
    if (!feasible_) return infeasible();
    set_costs(model_.objective(), model_.objective_constant());
    return phase_two();
  }

  LPSolution resolve(const std::vector<LinearTerm>& objective, double constant) {
    model_.set_objective(objective, constant);
    return solve();
  }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;
  static constexpr std::size_t kDegenerateStreak = 50;

  // How a model variable is expressed through non-negative columns:
  // x = offset + sign * y[col], or x = y[col] - y[minus_col] when free.
  struct VarMap {
    std::size_t col = 0;
    std::size_t minus_col = 0;
    double sign = 1.0;
    double offset = 0.0;
    bool free = false;
  };

  struct SparseRow {
    std::vector<std::pair<std::size_t, double>> entries;
    double rhs = 0.0;
  };

  double& at(std::size_t row, std::size_t col) { return tab_[row * width_ + col]; }
  double& rhs(std::size_t row) { return tab_[row * width_ + cols_]; }

  void build() {
    const auto& vars = model_.variables();
    map_.resize(vars.size());
    std::vector<SparseRow> rows;
    std::vector<Sense> senses;
    std::size_t next = 0;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const double lo = vars[j].lower, up = vars[j].upper;
      VarMap& m = map_[j];
      if (std::isfinite(lo)) {
        m = {next++, 0, 1.0, lo, false};
        if (std::isfinite(up)) {
          rows.push_back({{{m.col, 1.0}}, up - lo});
          senses.push_back(Sense::less_equal);
        }
      } else if (std::isfinite(up)) {
        m = {next++, 0, -1.0, up, false};
      } else {
        m = {next, next + 1, 1.0, 0.0, true};
        next += 2;
      }
    }
    structural_ = next;

    const std::size_t bound_rows = rows.size();
    for (const LPConstraint& c : model_.constraints()) {
      SparseRow row;
      row.rhs = c.rhs;
      std::map<std::size_t, double> merged;
      for (const LinearTerm& t : c.terms) {
        const VarMap& m = map_[t.var];
        row.rhs -= t.coef * m.offset;
        if (m.free) {
          merged[m.col] += t.coef;
          merged[m.minus_col] -= t.coef;
        } else {
          merged[m.col] += t.coef * m.sign;
        }
      }
      for (const auto& [col, coef] : merged) {
        if (coef != 0.0) row.entries.emplace_back(col, coef);
      }
      rows.push_back(std::move(row));
      senses.push_back(c.sense);
    }
    // Model constraints first in the tableau so that row order mirrors the
    // model; bound rows follow.
    std::rotate(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(bound_rows), rows.end());
    std::rotate(senses.begin(), senses.begin() + static_cast<std::ptrdiff_t>(bound_rows),
                senses.end());

    m_ = rows.size();
    // Slack or surplus columns.
    std::size_t col = structural_;
    for (std::size_t r = 0; r < m_; ++r) {
      if (senses[r] != Sense::equal) {
        rows[r].entries.emplace_back(col++, senses[r] == Sense::less_equal ? 1.0 : -1.0);
      }
    }
    slack_end_ = col;
    identity_col_.assign(m_, 0);
    for (std::size_t r = 0; r < m_; ++r) {
      SparseRow& row = rows[r];
      if (row.rhs < 0.0) {
        row.rhs = -row.rhs;
        for (auto& e : row.entries) e.second = -e.second;
      }
      bool has_identity = false;
      if (senses[r] != Sense::equal) {
        const auto& slack = row.entries.back();
        if (slack.first >= structural_ && slack.second == 1.0) {
          identity_col_[r] = slack.first;
          has_identity = true;
        }
      }
      if (!has_identity) {
        row.entries.emplace_back(col, 1.0);
        identity_col_[r] = col++;
      }
    }
    cols_ = col;
    width_ = cols_ + 1;
    artificial_.assign(cols_, 0);
    for (std::size_t c = slack_end_; c < cols_; ++c) artificial_[c] = 1;

    tab_.assign(m_ * width_, 0.0);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [c, v] : rows[r].entries) at(r, c) = v;
      rhs(r) = rows[r].rhs;
      basis_[r] = identity_col_[r];
    }
    original_ = std::move(rows);
    d_.assign(cols_, 0.0);
  }

  void pivot(std::size_t row, std::size_t enter) {
    double* pr = &tab_[row * width_];
    const double inv = 1.0 / pr[enter];
    for (std::size_t c = 0; c < width_; ++c) pr[c] *= inv;
    pr[enter] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      double* pi = &tab_[i * width_];
      const double f = pi[enter];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        if (pr[c] != 0.0) pi[c] -= f * pr[c];
      }
      pi[enter] = 0.0;
      if (pi[cols_] < 0.0 && pi[cols_] > -1e-11) pi[cols_] = 0.0;
    }
    const double f = d_[enter];
    if (f != 0.0) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (pr[c] != 0.0) d_[c] -= f * pr[c];
      }
      objective_ += f * pr[cols_];
      d_[enter] = 0.0;
    }
    basis_[row] = enter;
    ++iterations_;
  }

  // Returns false when the objective is unbounded below.
  bool iterate(bool allow_artificial) {
    const std::size_t limit = 50 * (m_ + cols_) + 1000;
    std::size_t degenerate = 0;
    bool bland = false;
    for (std::size_t step = 0; step < limit; ++step) {
      std::size_t enter = cols_;
      double best = -kCostTol;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allow_artificial && artificial_[c]) continue;
        if (d_[c] < best) {
          enter = c;
          best = d_[c];
          if (bland) break;
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = m_;
      double best_ratio = kInfinity, best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(i) / a;
        const bool better =
            leave == m_ || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 &&
             (bland ? basis_[i] < basis_[leave] : a > best_pivot));
        if (better) {
          leave = i;
          best_ratio = ratio;
          best_pivot = a;
        }
      }
      if (leave == m_) return false;
      if (best_ratio <= 1e-12) {
        if (++degenerate > kDegenerateStreak) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

  void phase_one() {
    phase_one_done_ = true;
    std::fill(d_.begin(), d_.end(), 0.0);
    objective_ = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!artificial_[c]) d_[c] -= at(r, c);
      }
      objective_ += rhs(r);
    }
    iterate(true);
    feasible_ = objective_ <= 1e-8;
    if (!feasible_) return;
    // Pivot remaining zero-level artificials out of the basis where the row
    // still has a usable entry; rows without one are redundant.
    for (std::size_t r = 0; r < m_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      std::size_t enter = cols_;
      double best = kPivotTol;
      for (std::size_t c = 0; c < slack_end_; ++c) {
        if (std::abs(at(r, c)) > best) {
          best = std::abs(at(r, c));
          enter = c;
        }
      }
      if (enter != cols_) {
        rhs(r) = 0.0;
        pivot(r, enter);
      }
    }
  }

  void set_costs(const std::vector<LinearTerm>& objective, double constant) {
    cost_.assign(cols_, 0.0);
    cost_constant_ = constant;
    for (const LinearTerm& t : objective) {
      const VarMap& m = map_[t.var];
      cost_constant_ += t.coef * m.offset;
      if (m.free) {
        cost_[m.col] += t.coef;
        cost_[m.minus_col] -= t.coef;
      } else {
        cost_[m.col] += t.coef * m.sign;
      }
    }
    d_ = cost_;
    objective_ = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < cols_; ++c) d_[c] -= cb * at(r, c);
      objective_ += cb * rhs(r);
    }
  }

  LPSolution infeasible() const {
    LPSolution s;
    s.status = LPStatus::infeasible;
    s.iterations = iterations_;
    return s;
  }

  LPSolution phase_two() {
    LPSolution s;
    const bool bounded = iterate(false);
    s.iterations = iterations_;
    if (!bounded) {
      s.status = LPStatus::unbounded;
      return s;
    }
    std::vector<double> y(cols_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) y[basis_[r]] = rhs(r);

    const auto& vars = model_.variables();
    s.values.resize(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const VarMap& m = map_[j];
      s.values[j] = m.free ? y[m.col] - y[m.minus_col] : m.offset + m.sign * y[m.col];
      s.variable_values.emplace(vars[j].name, s.values[j]);
    }
    s.status = LPStatus::optimal;
    s.objective_value = evaluate_objective(model_, s.values);
    s.primal_violation = max_violation(model_, s.values);

    // Dual certificate pi = c_B B^-1, recomputed against the original rows.
    std::vector<double> pi(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double sum = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost_[basis_[i]];
        if (cb != 0.0) sum += cb * at(i, identity_col_[r]);
      }
      pi[r] = sum;
    }
    std::vector<double> reduced = cost_;
    double dual = cost_constant_;
    for (std::size_t r = 0; r < m_; ++r) {
      dual += pi[r] * original_[r].rhs;
      for (const auto& [c, v] : original_[r].entries) reduced[c] -= pi[r] * v;
    }
    double violation = 0.0;
    for (std::size_t c = 0; c < slack_end_; ++c) violation = std::max(violation, -reduced[c]);
    s.dual_bound = dual;
    s.dual_violation = violation;
    return s;
  }

  LPModel model_;
  std::vector<VarMap> map_;
  std::size_t structural_ = 0;
  std::size_t slack_end_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::size_t m_ = 0;
  std::vector<double> tab_;
  std::vector<SparseRow> original_;
  std::vector<std::size_t> identity_col_;
  std::vector<char> artificial_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  double cost_constant_ = 0.0;
  std::vector<double> d_;
  double objective_ = 0.0;
  bool phase_one_done_ = false;
  bool feasible_ = false;
  std::size_t iterations_ = 0;
};

SimplexSolver::SimplexSolver(const LPModel& model) : impl_(std::make_unique<Impl>(model)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LPSolution SimplexSolver::solve() { return impl_->solve(); }

LPSolution SimplexSolver::resolve(const std::vector<LinearTerm>& objective, double constant) {
  return impl_->resolve(objective, constant);
}

LPSolution solve_lp(const LPModel& model) { return SimplexSolver(model).solve(); }

namespace {

void write_terms(std::ostream& os, const LPModel& model, const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    if (t.coef == 0.0) continue;
    os << (t.coef < 0.0 ? " - " : (first ? " " : " + ")) << std::abs(t.coef) << ' '
       << model.variables()[t.var].name;
    first = false;
  }
  if (first) os << " 0";
}

}  // namespace

std::string to_lp_format(const LPModel& model) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "\\ objective constant: " << model.objective_constant() << '\n';
  os << "Minimize\n obj:";
  write_terms(os, model, model.objective());
  os << "\nSubject To\n";
  std::size_t unnamed = 0;
  for (const LPConstraint& c : model.constraints()) {
    os << ' ' << (c.name.empty() ? "c" + std::to_string(unnamed++) : c.name) << ':';
    write_terms(os, model, c.terms);
    switch (c.sense) {
      case Sense::less_equal: os << " <= "; break;
      case Sense::greater_equal: os << " >= "; break;
      case Sense::equal: os << " = "; break;
    }
    os << c.rhs << '\n';
  }
  os << "Bounds\n";
  for (const LPVariable& v : model.variables()) {
    const bool lo = std::isfinite(v.lower), up = std::isfinite(v.upper);
    if (!lo && !up) {
      os << ' ' << v.name << " free\n";
    } else if (lo && up) {
      os << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
    } else if (lo) {
      os << ' ' << v.name << " >= " << v.lower << '\n';
    } else {
      os << " -inf <= " << v.name << " <= " << v.upper << '\n';
    }
  }
  os << "End\n";
  return os.str();
}

}  // namespace bugshare
