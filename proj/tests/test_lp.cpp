#include "doctest.h"

#include "dmh/lp.hpp"

#include <random>

using namespace dmh;

namespace {

RationalVector vec(std::initializer_list<long long> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = Rational(x);
  return v;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-1e-3") == Rational(-1, 1000));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_string(Rational(-2, 4)) == "-1/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(rational_from_decimal(0.1) == Rational(1, 10));
  CHECK(exact_from_double(0.1) != Rational(1, 10));
  CHECK(exact_from_double(0.375) == Rational(3, 8));
}

TEST_CASE("textbook LP") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
  LinearProgram lp(2);
  lp.objective = vec({3, 5});
  lp.add(vec({1, 0}), Relation::LessEqual, 4);
  lp.add(vec({0, 2}), Relation::LessEqual, 12);
  lp.add(vec({3, 2}), Relation::LessEqual, 18);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 36);
  CHECK(r.witness(0) == 2);
  CHECK(r.witness(1) == 6);
  CHECK(satisfies(lp, r.witness));
}

TEST_CASE("infeasible, unbounded, equality and free variables") {
  LinearProgram infeasible(2);
  infeasible.add(vec({1, 1}), Relation::LessEqual, 1);
  infeasible.add(vec({1, 1}), Relation::GreaterEqual, 2);
  CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded(2);
  unbounded.objective = vec({1, 0});
  unbounded.add(vec({0, 1}), Relation::LessEqual, 1);
  CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

  // max -x with x free and x >= -3 enforced by a row; optimum 3 at x = -3.
  LinearProgram free_var(1);
  free_var.lower[0] = std::nullopt;
  free_var.objective = vec({-1});
  free_var.add(vec({1}), Relation::GreaterEqual, -3);
  const auto r = solve_lp(free_var);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 3);

  LinearProgram eq(3);
  eq.objective = vec({1, 2, 3});
  eq.add(vec({1, 1, 1}), Relation::Equal, 1);
  eq.upper[2] = Rational(1, 3);
  const auto e = solve_lp(eq);
  REQUIRE(e.status == LpStatus::Optimal);
  CHECK(e.value == Rational(1, 3) * 3 + Rational(2, 3) * 2);

  LinearProgram bad(2);
  bad.add(vec({1}), Relation::LessEqual, 0);
  CHECK_THROWS_AS(solve_lp(bad), std::invalid_argument);
}

TEST_CASE("LP optimum agrees with brute-force vertex search") {
  // Random bounded LPs in 3 variables: 0 <= x <= 5 plus 3 random rows.
  // Oracle: every triple of tight constraints, solved exactly.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 6);
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp(3);
    lp.objective = vec({coef(rng), coef(rng), coef(rng)});
    for (int i = 0; i < 3; ++i) lp.upper[static_cast<std::size_t>(i)] = Rational(5);
    std::vector<std::pair<RationalVector, Rational>> rows;
    for (int k = 0; k < 3; ++k) {
      auto a = vec({coef(rng), coef(rng), coef(rng)});
      Rational b = coef(rng) + 6;
      lp.add(a, Relation::LessEqual, b);
      rows.emplace_back(a, b);
    }
    for (int i = 0; i < 3; ++i) {
      RationalVector e = RationalVector::Zero(3);
      e(i) = 1;
      rows.emplace_back(e, Rational(5));
      rows.emplace_back(RationalVector(-e), Rational(0));
    }
    std::optional<Rational> best;
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          RationalMatrix A(3, 3);
          RationalVector b(3);
          int r = 0;
          for (int t : {i, j, k}) {
            A.row(r) = rows[static_cast<std::size_t>(t)].first.transpose();
            b(r++) = rows[static_cast<std::size_t>(t)].second;
          }
          auto x = solve_exact(A, b);
          if (!x) continue;
          bool ok = true;
          for (const auto& [a, rhs] : rows) ok = ok && a.dot(*x) <= rhs;
          if (!ok) continue;
          const Rational v = lp.objective.dot(*x);
          if (!best || v > *best) best = v;
        }
    const auto out = solve_lp(lp);
    if (!best) {
      CHECK(out.status == LpStatus::Infeasible);
    } else {
      REQUIRE(out.status == LpStatus::Optimal);
      CHECK(out.value == *best);
    }
  }
}

TEST_CASE("convex hull membership with certificates") {
  std::vector<RationalVector> tri = {vec({0, 0}), vec({4, 0}), vec({0, 4})};
  const auto in = membership(vec({1, 1}), tri);
  REQUIRE(in.member);
  RationalVector recon = RationalVector::Zero(2);
  Rational total = 0;
  for (std::size_t k = 0; k < tri.size(); ++k) {
    CHECK(in.weights(static_cast<Eigen::Index>(k)) >= 0);
    recon += tri[k] * in.weights(static_cast<Eigen::Index>(k));
    total += in.weights(static_cast<Eigen::Index>(k));
  }
  CHECK(total == 1);
  CHECK(recon == vec({1, 1}));

  const RationalVector outside = vec({3, 3});
  const auto out = membership(outside, tri);
  REQUIRE_FALSE(out.member);
  CHECK(out.functional.dot(outside) > out.bound);
  for (const auto& v : tri) CHECK(out.functional.dot(v) <= out.bound);

  CHECK_THROWS_AS(membership(outside, {}), std::invalid_argument);
  CHECK_THROWS_AS(membership(outside, {vec({1, 2, 3})}), std::invalid_argument);
}

TEST_CASE("exact elimination helpers") {
  RationalMatrix A(2, 2);
  A << 2, 1, 1, 3;
  const auto x = solve_exact(A, vec({3, 5}));
  REQUIRE(x);
  CHECK((*x)(0) == Rational(4, 5));
  CHECK((*x)(1) == Rational(7, 5));
  RationalMatrix S(2, 2);
  S << 1, 2, 2, 4;
  CHECK_FALSE(solve_exact(S, vec({1, 2})));
  CHECK(exact_rank(S) == 1);

  // Vertices of the standard 2-simplex in R^3.
  RationalMatrix one(1, 3);
  one << 1, 1, 1;
  const auto verts = enumerate_vertices(one, vec({1}));
  CHECK(verts.size() == 3);
}
