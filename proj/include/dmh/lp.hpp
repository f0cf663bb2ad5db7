#pragma once

// Exact linear programming over the rationals.
//
// The solver is a dense two-phase simplex with Bland's rule. It is meant for
// the small problems that come up when certifying correlations (at most a few
// dozen variables and constraints), where exact zero / non-zero answers matter
// more than speed.

#include "dmh/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace dmh {

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  RationalVector coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// maximize objective . x subject to the rows and per-variable bounds.
/// A variable without a lower bound is free below; without an upper bound it
/// is free above.
struct LinearProgram {
  RationalVector objective;
  std::vector<Constraint> constraints;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  LinearProgram() = default;
  /// Zero objective, no rows, every variable >= 0.
  explicit LinearProgram(Eigen::Index dimension);

  Eigen::Index dimension() const { return objective.size(); }

  void add(RationalVector coefficients, Relation relation, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;          // meaningful when Optimal
  RationalVector witness;  // a vertex of the feasible region when Optimal
};

/// Throws std::invalid_argument when a row or bound vector does not match the
/// objective dimension.
LpOutcome solve_lp(const LinearProgram& lp);

/// True when every row and bound holds exactly at x.
bool satisfies(const LinearProgram& lp, const RationalVector& x);

struct MembershipResult {
  bool member = false;
  /// Convex weights over the vertex list; set when member.
  RationalVector weights;
  /// Separating functional and the maximum it attains over the vertices; set
  /// when not a member. functional . point > bound.
  RationalVector functional;
  Rational bound;
};

/// Decides whether point lies in the convex hull of vertices. A negative
/// answer comes with the Farkas-dual certificate.
/// Throws std::invalid_argument on an empty vertex list or mixed dimensions.
MembershipResult membership(const RationalVector& point, const std::vector<RationalVector>& vertices);

/// Unique solution of A x = b by exact Gauss-Jordan elimination; nullopt when
/// the system is singular or inconsistent.
std::optional<RationalVector> solve_exact(const RationalMatrix& A, const RationalVector& b);

Eigen::Index exact_rank(RationalMatrix A);

/// Vertices of {x >= 0, A x = b}, found as the nonnegative basic solutions of
/// every column subset of size rank(A). Exponential in the column count; meant
/// for polytopes with a few dozen coordinates at most.
std::vector<RationalVector> enumerate_vertices(const RationalMatrix& A, const RationalVector& b);

}  // namespace dmh
