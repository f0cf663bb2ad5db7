#include "doctest.h"

#include "dmh/classical.hpp"
#include "dmh/games.hpp"

#include <algorithm>
#include <set>

using namespace dmh;

namespace {

std::vector<std::vector<int>> zero_based(std::vector<std::vector<int>> rows) {
  for (auto& r : rows)
    for (auto& z : r) --z;
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("game matrices") {
  const auto g = dmh_game();
  g.validate();
  CHECK(g.messages() == 4);
  CHECK(g.guesses() == 4);
  CHECK(g.reward(0, 0) == -1);
  CHECK(g.is_bomb(0, 3));
  CHECK(g.reward(2, 0) == 1);
  CHECK(g.is_bomb(3, 0));
  int bombs = 0;
  for (int m = 0; m < 4; ++m)
    for (int z = 0; z < 4; ++z) bombs += g.is_bomb(m, z);
  CHECK(bombs == 7);

  const auto h = dmh_prime_game();
  h.validate();
  // Only the second message's third box changes: a bomb becomes a -1 reward.
  CHECK(g.is_bomb(1, 2));
  CHECK(h.reward(1, 2) == -1);
  for (int m : {0, 2, 3})
    for (int z = 0; z < 4; ++z) CHECK(g.entries[m][z] == h.entries[m][z]);

  GameMatrix bad = g;
  bad.prior[0] = Rational(1, 2);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.entries[1].pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("extended payoff arithmetic") {
  const auto inf = ExactPayoff::neg_infinity();
  const auto two = ExactPayoff::finite(2);
  CHECK(inf.scaled(0) == ExactPayoff::finite(0));
  CHECK(inf.scaled(Rational(1, 3)).is_neg_infinity());
  CHECK((two + inf).is_neg_infinity());
  CHECK(inf < two);
  CHECK_FALSE(two < inf);
  CHECK_THROWS_AS(inf.value(), std::logic_error);
  CHECK(to_string(inf) == "-inf");
  CHECK(to_string(ExactPayoff::finite(Rational(-1, 8))) == "-1/8");
}

TEST_CASE("payoff of strategy matrices") {
  const auto g = dmh_game();
  // Boxes 2, 2, 2, 3: no bomb, payoff 0.
  StrategyMatrix<Rational> s = StrategyMatrix<Rational>::Zero(4, 4);
  s(0, 1) = s(1, 1) = s(2, 1) = s(3, 2) = 1;
  CHECK(payoff(g, s) == ExactPayoff::finite(0));
  // The third message opening box 1 earns 1 with prior 1/4.
  s(2, 1) = 0;
  s(2, 0) = 1;
  CHECK(payoff(g, s) == ExactPayoff::finite(Rational(1, 4)));
  // A tiny weight on a bomb is fatal in exact arithmetic.
  s(0, 1) = 1 - Rational(1, 1000000);
  s(0, 3) = Rational(1, 1000000);
  CHECK(payoff(g, s).is_neg_infinity());

  StrategyMatrix<double> f = StrategyMatrix<double>::Zero(4, 4);
  f(0, 1) = f(1, 1) = f(2, 1) = f(3, 2) = 1;
  f(0, 3) = 1e-12;
  CHECK(payoff(g, f).is_finite());
  f(0, 3) = 1e-6;
  CHECK(payoff(g, f).is_neg_infinity());
  CHECK_THROWS_AS(payoff(g, StrategyMatrix<Rational>(StrategyMatrix<Rational>::Zero(3, 4))), std::invalid_argument);
  CHECK(is_row_stochastic(StrategyMatrix<Rational>(StrategyMatrix<Rational>::Identity(4, 4))));
}

TEST_CASE("combinatorial counts") {
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) CHECK(stirling2(n, k) == stirling2_recurrence(n, k));
  CHECK(stirling2(4, 2) == 7);
  CHECK(binomial(4, 2) == 6);
  CHECK(vertex_count(1, 4, 4) == 88);
  CHECK(vertex_count(2, 4, 4) == 256);
}

TEST_CASE("vertex count formula equals deduplicated enumeration") {
  for (int n : {1, 2})
    for (int m : {2, 3, 4})
      for (int z : {2, 3, 4}) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(z);
        const auto channels = enumerate_channels(n, m, z);
        CHECK(BigInt(channels.size()) == vertex_count(n, m, z));
        CHECK(std::set<std::vector<int>>(channels.begin(), channels.end()).size() == channels.size());
      }
  CHECK_THROWS_AS(enumerate_channels(3, 4, 4), ResourceLimitError);
}

TEST_CASE("one-bit classical bound for the mine-hunting game") {
  const auto rep = verify_classical_bound(dmh_game(), 1);
  CHECK(rep.total == 88);
  CHECK(rep.max_payoff == ExactPayoff::finite(0));
  std::vector<std::vector<int>> safe = rep.safe_channels;
  std::sort(safe.begin(), safe.end());
  CHECK(safe == zero_based({{1, 4, 1, 4}, {2, 2, 2, 3}, {2, 2, 2, 4}, {2, 4, 2, 4}, {3, 2, 2, 3}}));
  for (const auto& s : rep.safe_vertices) CHECK(payoff(dmh_game(), s) == ExactPayoff::finite(0));
  // Guessing boxes 1, 3, 1, 3 opens the bomb behind box 3 for message 2.
  CHECK(payoff(dmh_game(), channel_matrix({0, 2, 0, 2}, 4)).is_neg_infinity());
}

TEST_CASE("one-bit classical bound for the Cabello-type game") {
  const auto rep = verify_classical_bound(dmh_prime_game(), 1);
  CHECK(rep.total == 88);
  CHECK(rep.max_payoff == ExactPayoff::finite(0));
  std::vector<std::vector<int>> safe = rep.safe_channels;
  std::sort(safe.begin(), safe.end());
  CHECK(safe == zero_based({{1, 3, 1, 3},
                            {3, 3, 1, 3},
                            {1, 4, 1, 4},
                            {2, 2, 2, 3},
                            {2, 3, 2, 3},
                            {3, 2, 2, 3},
                            {3, 3, 2, 3},
                            {2, 2, 2, 4},
                            {2, 4, 2, 4}}));
}

TEST_CASE("two bits beat the bound") {
  // With two bits Bob learns the message and opens its best safe box:
  // rewards 0, 0, 1, 0 averaged over four messages.
  const auto rep = verify_classical_bound(dmh_game(), 2);
  CHECK(rep.total == 256);
  CHECK(rep.max_payoff == ExactPayoff::finite(Rational(1, 4)));
}
