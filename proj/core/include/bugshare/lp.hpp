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

#ifndef BUGSHARE_LP_HPP_
#define BUGSHARE_LP_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bugshare {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { less_equal, greater_equal, equal };

struct LinearTerm {
  std::size_t var = 0;
  double coef = 0.0;
};

struct LPVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
};

struct LPConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::less_equal;
  double rhs = 0.0;
};

// A minimization LP over named, bounded variables.
class LPModel {
 public:
  // Throws std::invalid_argument on a duplicate name or lower > upper.
  std::size_t add_variable(std::string name, double lower, double upper);

  // Throws std::invalid_argument if a term references an undeclared variable.
  void add_constraint(std::string name, std::vector<LinearTerm> terms, Sense sense,
                      double rhs);

  void set_objective(std::vector<LinearTerm> terms, double constant = 0.0);

  const std::vector<LPVariable>& variables() const { return variables_; }
  const std::vector<LPConstraint>& constraints() const { return constraints_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  std::optional<std::size_t> find_variable(const std::string& name) const;

 private:
  void check_terms(const std::vector<LinearTerm>& terms) const;

  std::vector<LPVariable> variables_;
  std::map<std::string, std::size_t> index_;
  std::vector<LPConstraint> constraints_;
  std::vector<LinearTerm> objective_;
  double objective_constant_ = 0.0;
};

enum class LPStatus { optimal, infeasible, unbounded };

std::string to_string(LPStatus status);

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  double objective_value = 0.0;
  // Indexed like LPModel::variables().
  std::vector<double> values;
  std::map<std::string, double> variable_values;
  // Largest constraint or bound violation of `values`.
  double primal_violation = 0.0;
  // Objective of the dual solution read off the final basis, and the largest
  // sign violation among its reduced costs.
  double dual_bound = 0.0;
  double dual_violation = 0.0;
  std::size_t iterations = 0;

  // Optimal, primal feasible within 1e-7, dual feasible within 1e-7 and the
  // primal/dual objectives agree within 1e-6.
  bool certified() const;
};

// Largest violation of any constraint or variable bound at `x`.
double max_violation(const LPModel& model, std::span<const double> x);

double evaluate_objective(const LPModel& model, std::span<const double> x);

// Dense two-phase primal simplex. After a solve, the final basis stays primal
// feasible, so resolve() re-optimizes a new objective from it without
// repeating phase one.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LPModel& model);
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  LPSolution solve();
  LPSolution resolve(const std::vector<LinearTerm>& objective, double constant = 0.0);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

LPSolution solve_lp(const LPModel& model);

// CPLEX LP text format (Minimize / Subject To / Bounds / End).
std::string to_lp_format(const LPModel& model);

}  // namespace bugshare

#endif  // BUGSHARE_LP_HPP_
