// Copyright 2026 The e2stat Authors
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

// Exact linear programs over the rationals: the average-Szpiro program in the
// nine exponent variables, its dual, feasibility checks and a two-phase
// simplex with Bland's rule.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "e2/uniformity.hpp"

namespace e2 {

using Rational = boost::multiprecision::cpp_rational;

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MinGe:  minimize c.x  subject to A x >= b, x >= 0.
/// MaxLe:  maximize c.x  subject to A x <= b, x >= 0.
enum class LpSense { MinGe, MaxLe };

struct LinearProgram {
  LpSense sense = LpSense::MinGe;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs;

  [[nodiscard]] std::size_t variables() const { return objective.size(); }
  [[nodiscard]] std::size_t constraints() const { return rhs.size(); }

  void validate() const {
    if (matrix.size() != rhs.size()) throw std::invalid_argument("LinearProgram: row count mismatch");
    for (const auto& row : matrix)
      if (row.size() != objective.size()) throw std::invalid_argument("LinearProgram: column count mismatch");
  }
};

inline Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables()) throw std::invalid_argument("objective_value: dimension mismatch");
  Rational v = 0;
  for (std::size_t j = 0; j < x.size(); ++j) v += lp.objective[j] * x[j];
  return v;
}

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::size_t> violated_rows;  // constraint rows
  std::vector<std::size_t> negative_vars;
  std::vector<Rational> slack;             // A x - b (MinGe) or b - A x (MaxLe)
};

inline FeasibilityReport check_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  lp.validate();
  if (x.size() != lp.variables()) throw std::invalid_argument("check_feasible: dimension mismatch");
  FeasibilityReport r;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0) r.negative_vars.push_back(j);
  for (std::size_t i = 0; i < lp.constraints(); ++i) {
    Rational ax = 0;
    for (std::size_t j = 0; j < x.size(); ++j) ax += lp.matrix[i][j] * x[j];
    Rational s = lp.sense == LpSense::MinGe ? ax - lp.rhs[i] : lp.rhs[i] - ax;
    if (s < 0) r.violated_rows.push_back(i);
    r.slack.push_back(std::move(s));
  }
  r.feasible = r.violated_rows.empty() && r.negative_vars.empty();
  return r;
}

/// Transpose with objective and right-hand side swapped; the dual of the
/// dual is the original program.
inline LinearProgram build_dual(const LinearProgram& lp) {
  lp.validate();
  LinearProgram d;
  d.sense = lp.sense == LpSense::MinGe ? LpSense::MaxLe : LpSense::MinGe;
  d.objective = lp.rhs;
  d.rhs = lp.objective;
  d.matrix.assign(lp.variables(), std::vector<Rational>(lp.constraints()));
  for (std::size_t i = 0; i < lp.constraints(); ++i)
    for (std::size_t j = 0; j < lp.variables(); ++j) d.matrix[j][i] = lp.matrix[i][j];
  return d;
}

// ---------------------------------------------------------------------------
// The average-Szpiro program

/// Variables in ExponentVector order
/// (gamma_I0*, gamma_III, gamma_III*, alpha1, alpha2, beta1, beta2, upsilon, nu).
inline LinearProgram build_primal(const Rational& delta, const Rational& r) {
  if (delta < 0 || delta >= Rational(1, 2)) throw std::invalid_argument("build_primal: need 0 <= delta < 1/2");
  if (r < 0) throw std::invalid_argument("build_primal: need r >= 0");
  LinearProgram lp;
  lp.sense = LpSense::MinGe;
  lp.objective = {6, 0, 12, 0, 0, 3, 3, 0, 0};
  auto row = [](std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) out.emplace_back(x);
    return out;
  };
  lp.matrix = {
      row({-2, -2, -2, -1, -1, 0, 0, -1, -1}),
      row({0, 0, 0, 1, 1, 0, 0, 0, 0}),
      row({0, 0, 0, 1, -1, 1, -1, 0, 0}),
      row({0, 0, 0, -1, 0, 1, 0, 0, 0}),
      row({0, 0, 0, 0, -1, 0, 1, 0, 0}),
  };
  lp.rhs = {Rational(-1), Rational(1, 2) - delta, Rational(0), r, r};
  return lp;
}

/// The stated certificates: x* = (1/2)(0, 0, 0, 1/2 - d, 1/2 - d, 1/2 - d + r,
/// 1/2 - d + r, 1/2 + d, 1/2 + d) and y* = (0, 3, 0, 3, 3).
inline std::vector<Rational> primal_certificate(const Rational& delta, const Rational& r) {
  const Rational h(1, 2);
  const Rational lo = h - delta, mid = h - delta + r, hi = h + delta;
  return {0, 0, 0, h * lo, h * lo, h * mid, h * mid, h * hi, h * hi};
}

inline std::vector<Rational> dual_certificate() { return {0, 3, 0, 3, 3}; }

/// 3/2 - 3 delta + 3 r, the value both certificates are claimed to attain.
inline Rational claimed_optimum(const Rational& delta, const Rational& r) {
  return Rational(3, 2) - 3 * delta + 3 * r;
}

/// 3/2 + (6 gamma_I0* + 12 gamma_III* + 3 beta1 + 3 beta2) / (2 w) with w the
/// conductor weight of the vector.
inline long double avg_szpiro_from_exponents(const ExponentVector& e) {
  const long double w = e.conductor_weight();
  if (!(w > 0)) throw std::invalid_argument("avg_szpiro_from_exponents: zero conductor weight");
  return 1.5L + (6 * e.gamma_I0star + 12 * e.gamma_IIIstar + 3 * (e.beta1 + e.beta2)) / (2 * w);
}

// ---------------------------------------------------------------------------
// Simplex

struct LpSolution {
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

namespace detail {

/// Dense tableau for  minimize c.x  subject to  A x = b, x >= 0, b >= 0,
/// with a feasible basis supplied. Bland's rule throughout.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  /// Minimizes cost over the current feasible region. Columns flagged in
  /// `blocked` never enter.
  void minimize(const std::vector<Rational>& cost, const std::vector<bool>& blocked, std::size_t& pivots) {
    const std::size_t n = cost.size();
    for (;;) {
      // reduced costs c_j - c_B B^{-1} A_j; tableau rows already hold B^{-1} A
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < n && !entering; ++j) {
        if (blocked[j] || is_basic(j)) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) rc -= cost[basis_[i]] * rows_[i][j];
        if (rc < 0) entering = j;
      }
      if (!entering) return;
      const std::size_t e = *entering;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][e] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][e];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) throw UnboundedError("simplex: objective unbounded");
      pivot(*leaving, e);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational piv = rows_[row][col];
    for (auto& v : rows_[row]) v /= piv;
    rhs_[row] /= piv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= f * rows_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  [[nodiscard]] bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  [[nodiscard]] std::vector<Rational> point(std::size_t n) const {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact optimum by two-phase simplex. Throws InfeasibleError or
/// UnboundedError.
inline LpSolution solve_simplex(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.variables(), m = lp.constraints();
  // Normalise to minimize c'.x, A' x - s = b' (MinGe) or A x + s = b (MaxLe).
  const bool maximize = lp.sense == LpSense::MaxLe;
  const Rational slack_sign = maximize ? 1 : -1;
  const std::size_t cols = n + m + m;  // structural, slack, artificial
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols));
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.rhs[i] < 0;
    const Rational sgn = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = sgn * lp.matrix[i][j];
    rows[i][n + i] = sgn * slack_sign;
    rows[i][n + m + i] = 1;
    rhs[i] = sgn * lp.rhs[i];
    basis[i] = n + m + i;
  }
  detail::Tableau t(std::move(rows), std::move(rhs), std::move(basis));
  LpSolution sol;

  std::vector<Rational> phase1(cols);
  for (std::size_t i = 0; i < m; ++i) phase1[n + m + i] = 1;
  std::vector<bool> none(cols, false);
  t.minimize(phase1, none, sol.pivots);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis_[i] >= n + m) infeas += t.rhs_[i];
  if (infeas > 0) throw InfeasibleError("simplex: program is infeasible");
  // drive zero-level artificials out of the basis where possible
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis_[i] < n + m) continue;
    for (std::size_t j = 0; j < n + m; ++j)
      if (t.rows_[i][j] != 0) {
        t.pivot(i, j);
        ++sol.pivots;
        break;
      }
  }

  std::vector<Rational> phase2(cols);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = maximize ? Rational(-lp.objective[j]) : lp.objective[j];
  std::vector<bool> blocked(cols, false);
  for (std::size_t i = 0; i < m; ++i) blocked[n + m + i] = true;
  t.minimize(phase2, blocked, sol.pivots);

  auto full = t.point(cols);
  sol.x.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
  sol.value = objective_value(lp, sol.x);
  return sol;
}

/// Closed form of the optimum of build_primal(delta, r), obtained from the
/// feasible point x4 = x5 = (1/2 - delta)/2, x6 = x4 + r, x7 = x5 + r and the
/// dual certificate.
inline Rational primal_optimum_closed_form(const Rational& delta, const Rational& r) {
  return Rational(3, 2) - 3 * delta + 6 * r;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace e2
