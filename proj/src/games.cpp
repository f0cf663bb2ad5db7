#include "dmh/games.hpp"

namespace dmh {

std::string to_string(const ExactPayoff& p) { return p.is_neg_infinity() ? "-inf" : to_string(p.value()); }

void GameMatrix::validate() const {
  if (entries.empty()) throw std::invalid_argument("game has no rows");
  const auto cols = entries.front().size();
  if (cols == 0) throw std::invalid_argument("game has no columns");
  for (const auto& row : entries) {
    if (row.size() != cols) throw std::invalid_argument("game rows have different lengths");
  }
  if (prior.size() != entries.size()) throw std::invalid_argument("prior length does not match the number of messages");
  Rational sum = 0;
  for (const auto& p : prior) {
    if (p < 0) throw std::invalid_argument("prior has a negative entry");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("prior does not sum to 1");
}

namespace {

GameMatrix from_table(const int (&table)[4][4]) {
  constexpr int kBomb = -1000;
  GameMatrix g;
  for (const auto& row : table) {
    std::vector<ExactPayoff> r;
    for (int v : row) r.push_back(v == kBomb ? ExactPayoff::neg_infinity() : ExactPayoff::finite(v));
    g.entries.push_back(std::move(r));
  }
  g.prior.assign(4, Rational(1, 4));
  return g;
}

}  // namespace

GameMatrix dmh_game() {
  constexpr int B = -1000;
  const int table[4][4] = {{-1, 0, 0, B}, {B, 0, B, 0}, {1, 0, B, B}, {B, B, 0, 0}};
  return from_table(table);
}

GameMatrix dmh_prime_game() {
  constexpr int B = -1000;
  const int table[4][4] = {{-1, 0, 0, B}, {B, 0, -1, 0}, {1, 0, B, B}, {B, B, 0, 0}};
  return from_table(table);
}

}  // namespace dmh
