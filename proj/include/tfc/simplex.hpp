#pragma once

// Dense tableau simplex for  max c.y  s.t.  A y <= b, y >= 0  with b >= 0,
// so the slack basis is feasible from the start. Bland's rule guarantees
// termination; T is meant to be an exact number type.

#include <cstddef>
#include <optional>
#include <vector>

#include "tfc/error.hpp"

namespace tfc {

template <class T>
struct SimplexResult {
  T value;
  std::vector<T> solution;
};

// Returns nullopt when the objective is unbounded.
template <class T>
std::optional<SimplexResult<T>> simplex_maximize(const std::vector<std::vector<T>>& a,
                                                 const std::vector<T>& b,
                                                 const std::vector<T>& c) {
  const std::size_t rows = a.size();
  const std::size_t vars = c.size();
  if (b.size() != rows) throw InvalidParameter("simplex: row count mismatch");
  const std::size_t cols = vars + rows;  // structural then slack, rhs kept separately

  std::vector<std::vector<T>> tab(rows, std::vector<T>(cols, T(0)));
  std::vector<T> rhs(b);
  std::vector<T> cost(cols, T(0));  // reduced costs, negative = improving
  std::vector<std::size_t> basis(rows);
  T value(0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != vars) throw InvalidParameter("simplex: column count mismatch");
    if (rhs[i] < T(0)) throw InvalidParameter("simplex: negative right-hand side");
    for (std::size_t j = 0; j < vars; ++j) tab[i][j] = a[i][j];
    tab[i][vars + i] = T(1);
    basis[i] = vars + i;
  }
  for (std::size_t j = 0; j < vars; ++j) cost[j] = -c[j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < T(0)) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    T best_ratio(0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!(tab[i][enter] > T(0))) continue;
      T ratio = rhs[i] / tab[i][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) return std::nullopt;

    const T pivot = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const T factor = tab[i][enter];
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= factor * tab[leave][j];
      rhs[i] -= factor * rhs[leave];
    }
    const T factor = cost[enter];
    for (std::size_t j = 0; j < cols; ++j) cost[j] -= factor * tab[leave][j];
    value -= factor * rhs[leave];
    basis[leave] = enter;
  }

  SimplexResult<T> result{value, std::vector<T>(vars, T(0))};
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) result.solution[basis[i]] = rhs[i];
  }
  return result;
}

}  // namespace tfc
