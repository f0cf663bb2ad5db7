#include "dmh/lp.hpp"

#include <stdexcept>

namespace dmh {

// ---------------------------------------------------------------- LP model

LinearProgram::LinearProgram(Eigen::Index dimension)
    : objective(RationalVector::Zero(dimension)),
      lower(static_cast<std::size_t>(dimension), Rational(0)),
      upper(static_cast<std::size_t>(dimension)) {}

void LinearProgram::add(RationalVector coefficients, Relation relation, Rational rhs) {
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

namespace {

void check_structure(const LinearProgram& lp) {
  const auto n = lp.dimension();
  for (const auto& row : lp.constraints) {
    if (row.coefficients.size() != n) throw std::invalid_argument("constraint dimension does not match objective");
  }
  if (static_cast<Eigen::Index>(lp.lower.size()) != n || static_cast<Eigen::Index>(lp.upper.size()) != n) {
    throw std::invalid_argument("bound vectors do not match objective dimension");
  }
}

// One original variable expressed through standard-form columns:
// x = offset + sum(sign * column).
struct VariableMap {
  Rational offset;
  std::vector<std::pair<Eigen::Index, int>> columns;
};

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(RationalMatrix::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Rational& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  const Rational& at(Eigen::Index r, Eigen::Index c) const { return t_(r, c); }
  Rational& rhs(Eigen::Index r) { return t_(r, t_.cols() - 1); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  Eigen::Index objective_row() const { return t_.rows() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Eigen::Index width = t_.cols();
    const Rational inv = Rational(1) / t_(row, col);
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index j = 0; j < width; ++j) {
      if (t_(row, j) != 0) {
        t_(row, j) *= inv;
        nonzero.push_back(j);
      }
    }
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == row || dead(i)) continue;
      const Rational factor = t_(i, col);
      if (factor == 0) continue;
      for (Eigen::Index j : nonzero) t_(i, j) -= factor * t_(row, j);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Bland's rule over the columns with index < allowed. Returns false when
  // unbounded.
  bool optimize(Eigen::Index allowed) {
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t_(objective_row(), j) > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      Eigen::Index leaving = -1;
      Rational best_ratio;
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (dead(i) || t_(i, entering) <= 0) continue;
        Rational ratio = t_(i, t_.cols() - 1) / t_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void kill(Eigen::Index row) { dead_.push_back(row); }
  bool dead(Eigen::Index row) const {
    for (auto r : dead_) {
      if (r == row) return true;
    }
    return false;
  }

 private:
  RationalMatrix t_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> dead_;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  check_structure(lp);
  const Eigen::Index n = lp.dimension();

  // Map the original variables onto non-negative standard-form columns.
  std::vector<VariableMap> vars(static_cast<std::size_t>(n));
  std::vector<Constraint> rows;
  Eigen::Index columns = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& map = vars[static_cast<std::size_t>(j)];
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    const auto& up = lp.upper[static_cast<std::size_t>(j)];
    if (lo && up && *up < *lo) return {LpStatus::Infeasible, {}, {}};
    if (lo && up && *lo == *up) {
      map.offset = *lo;
    } else if (lo) {
      map.offset = *lo;
      map.columns.push_back({columns++, 1});
    } else if (up) {
      map.offset = *up;
      map.columns.push_back({columns++, -1});
    } else {
      map.columns.push_back({columns++, 1});
      map.columns.push_back({columns++, -1});
    }
  }
  auto translate = [&](const RationalVector& coeffs, Rational rhs, Relation rel) {
    Constraint row{RationalVector::Zero(columns), rel, std::move(rhs)};
    for (Eigen::Index j = 0; j < n; ++j) {
      const Rational& a = coeffs(j);
      if (a == 0) continue;
      const auto& map = vars[static_cast<std::size_t>(j)];
      row.rhs -= a * map.offset;
      for (auto [col, sign] : map.columns) row.coefficients(col) += sign > 0 ? a : Rational(-a);
    }
    return row;
  };
  for (const auto& c : lp.constraints) rows.push_back(translate(c.coefficients, c.rhs, c.relation));
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    const auto& up = lp.upper[static_cast<std::size_t>(j)];
    if (lo && up && *lo != *up) {
      RationalVector e = RationalVector::Zero(n);
      e(j) = 1;
      rows.push_back(translate(e, *up, Relation::LessEqual));
    }
  }

  // Drop rows with no remaining columns; they are either trivially true or
  // make the problem infeasible.
  std::vector<Constraint> live;
  for (auto& row : rows) {
    bool empty = true;
    for (Eigen::Index c = 0; c < columns && empty; ++c) empty = row.coefficients(c) == 0;
    if (!empty) {
      live.push_back(std::move(row));
      continue;
    }
    const bool ok = (row.relation == Relation::LessEqual && 0 <= row.rhs) ||
                    (row.relation == Relation::GreaterEqual && 0 >= row.rhs) ||
                    (row.relation == Relation::Equal && row.rhs == 0);
    if (!ok) return {LpStatus::Infeasible, {}, {}};
  }

  const auto m = static_cast<Eigen::Index>(live.size());
  Eigen::Index slacks = 0;
  for (const auto& row : live) slacks += row.relation == Relation::Equal ? 0 : 1;
  const Eigen::Index structural = columns + slacks;
  Tableau tab(m, structural + m);

  Eigen::Index slack = columns;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = live[static_cast<std::size_t>(i)];
    for (Eigen::Index c = 0; c < columns; ++c) tab.at(i, c) = row.coefficients(c);
    if (row.relation == Relation::LessEqual) tab.at(i, slack++) = 1;
    if (row.relation == Relation::GreaterEqual) tab.at(i, slack++) = -1;
    tab.rhs(i) = row.rhs;
    if (row.rhs < 0) {
      for (Eigen::Index c = 0; c <= tab.cols(); ++c) tab.at(i, c) = -tab.at(i, c);
    }
    tab.at(i, structural + i) = 1;
    tab.basis()[static_cast<std::size_t>(i)] = structural + i;
  }

  // Phase one: maximize -(sum of artificials).
  const Eigen::Index obj = tab.objective_row();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index c = 0; c < structural; ++c) tab.at(obj, c) += tab.at(i, c);
    tab.rhs(obj) += tab.rhs(i);
  }
  tab.optimize(structural + m);
  if (tab.rhs(obj) != 0) return {LpStatus::Infeasible, {}, {}};

  // Pivot remaining (zero-valued) artificials out; rows where that fails are
  // linearly dependent on the others.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < structural) continue;
    Eigen::Index col = -1;
    for (Eigen::Index c = 0; c < structural && col < 0; ++c) {
      if (tab.at(i, c) != 0) col = c;
    }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.kill(i);
    }
  }

  // Phase two objective row: reduced costs c_j - c_B B^-1 A_j.
  RationalVector cost = RationalVector::Zero(structural);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (auto [col, sign] : vars[static_cast<std::size_t>(j)].columns) {
      cost(col) += sign > 0 ? lp.objective(j) : Rational(-lp.objective(j));
    }
  }
  for (Eigen::Index c = 0; c <= tab.cols(); ++c) tab.at(obj, c) = c < structural ? cost(c) : Rational(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.dead(i)) continue;
    const Rational cb = cost(tab.basis()[static_cast<std::size_t>(i)]);
    if (cb == 0) continue;
    for (Eigen::Index c = 0; c <= tab.cols(); ++c) {
      if (tab.at(i, c) != 0) tab.at(obj, c) -= cb * tab.at(i, c);
    }
  }
  if (!tab.optimize(structural)) return {LpStatus::Unbounded, {}, {}};

  RationalVector standard = RationalVector::Zero(structural);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.dead(i)) continue;
    const auto b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < structural) standard(b) = tab.rhs(i);
  }
  LpOutcome out{LpStatus::Optimal, 0, RationalVector::Zero(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& map = vars[static_cast<std::size_t>(j)];
    Rational x = map.offset;
    for (auto [col, sign] : map.columns) x += sign > 0 ? standard(col) : Rational(-standard(col));
    out.witness(j) = x;
    out.value += lp.objective(j) * x;
  }
  return out;
}

bool satisfies(const LinearProgram& lp, const RationalVector& x) {
  check_structure(lp);
  if (x.size() != lp.dimension()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    const auto& up = lp.upper[static_cast<std::size_t>(j)];
    if (lo && x(j) < *lo) return false;
    if (up && x(j) > *up) return false;
  }
  for (const auto& row : lp.constraints) {
    Rational lhs = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (row.coefficients(j) != 0) lhs += row.coefficients(j) * x(j);
    }
    switch (row.relation) {
      case Relation::LessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

MembershipResult membership(const RationalVector& point, const std::vector<RationalVector>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("membership needs at least one vertex");
  const Eigen::Index dim = point.size();
  for (const auto& v : vertices) {
    if (v.size() != dim) throw std::invalid_argument("vertex dimension does not match point");
  }
  const auto k = static_cast<Eigen::Index>(vertices.size());

  // Primal: weights w >= 0, sum w = 1, sum w_j v_j = point.
  LinearProgram primal(k);
  for (Eigen::Index d = 0; d < dim; ++d) {
    RationalVector row(k);
    for (Eigen::Index j = 0; j < k; ++j) row(j) = vertices[static_cast<std::size_t>(j)](d);
    primal.add(std::move(row), Relation::Equal, point(d));
  }
  primal.add(RationalVector::Constant(k, Rational(1)), Relation::Equal, 1);
  auto feasible = solve_lp(primal);
  if (feasible.status == LpStatus::Optimal) {
    MembershipResult result;
    result.member = true;
    result.weights = feasible.witness;
    return result;
  }

  // Dual: maximize f.point - t subject to f.v_j <= t, |f_i| <= 1, t free.
  LinearProgram dual(dim + 1);
  for (Eigen::Index d = 0; d < dim; ++d) {
    dual.objective(d) = point(d);
    dual.lower[static_cast<std::size_t>(d)] = Rational(-1);
    dual.upper[static_cast<std::size_t>(d)] = Rational(1);
  }
  dual.objective(dim) = -1;
  dual.lower[static_cast<std::size_t>(dim)].reset();
  for (const auto& v : vertices) {
    RationalVector row(dim + 1);
    row.head(dim) = v;
    row(dim) = -1;
    dual.add(std::move(row), Relation::LessEqual, 0);
  }
  auto separation = solve_lp(dual);
  if (separation.status != LpStatus::Optimal || separation.value <= 0) {
    throw std::logic_error("membership: primal infeasible but no separating functional found");
  }
  MembershipResult result;
  result.functional = separation.witness.head(dim);
  result.bound = result.functional.dot(vertices.front());
  for (const auto& v : vertices) {
    Rational value = result.functional.dot(v);
    if (value > result.bound) result.bound = value;
  }
  return result;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> row_reduce(RationalMatrix& A) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = row; i < A.rows(); ++i) {
      if (A(i, col) != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    A.row(row).swap(A.row(sel));
    const Rational inv = Rational(1) / A(row, col);
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(row, j) *= inv;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col) == 0) continue;
      const Rational f = A(i, col);
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) -= f * A(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Eigen::Index exact_rank(RationalMatrix A) { return static_cast<Eigen::Index>(row_reduce(A).size()); }

std::optional<RationalVector> solve_exact(const RationalMatrix& A, const RationalVector& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve_exact: dimension mismatch");
  RationalMatrix aug(A.rows(), A.cols() + 1);
  aug.leftCols(A.cols()) = A;
  aug.col(A.cols()) = b;
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;  // inconsistent
  if (static_cast<Eigen::Index>(pivots.size()) != A.cols()) return std::nullopt;
  RationalVector x(A.cols());
  for (Eigen::Index i = 0; i < A.cols(); ++i) x(pivots[static_cast<std::size_t>(i)]) = aug(i, A.cols());
  return x;
}

std::vector<RationalVector> enumerate_vertices(const RationalMatrix& A, const RationalVector& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("enumerate_vertices: dimension mismatch");
  // Drop dependent rows so every column subset of size rank is square.
  RationalMatrix aug(A.rows(), A.cols() + 1);
  aug.leftCols(A.cols()) = A;
  aug.col(A.cols()) = b;
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == A.cols()) return {};
  const auto rank = static_cast<Eigen::Index>(pivots.size());
  const RationalMatrix rows = aug.topLeftCorner(rank, A.cols());
  const RationalVector rhs = aug.col(A.cols()).head(rank);

  std::vector<RationalVector> out;
  std::vector<Eigen::Index> pick(static_cast<std::size_t>(rank));
  for (Eigen::Index i = 0; i < rank; ++i) pick[static_cast<std::size_t>(i)] = i;
  const Eigen::Index n = A.cols();
  auto seen = [&out](const RationalVector& v) {
    for (const auto& w : out) {
      if (w == v) return true;
    }
    return false;
  };
  while (true) {
    RationalMatrix sub(rank, rank);
    for (Eigen::Index j = 0; j < rank; ++j) sub.col(j) = rows.col(pick[static_cast<std::size_t>(j)]);
    if (auto sol = solve_exact(sub, rhs)) {
      bool nonneg = true;
      for (Eigen::Index j = 0; j < rank && nonneg; ++j) nonneg = (*sol)(j) >= 0;
      if (nonneg) {
        RationalVector x = RationalVector::Zero(n);
        for (Eigen::Index j = 0; j < rank; ++j) x(pick[static_cast<std::size_t>(j)]) = (*sol)(j);
        if (!seen(x)) out.push_back(std::move(x));
      }
    }
    // next combination
    Eigen::Index k = rank - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - rank + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (Eigen::Index j = k + 1; j < rank; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace dmh
