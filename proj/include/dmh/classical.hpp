#pragma once

// Deterministic n-bit classical strategies: Alice encodes the message into n
// bits, Bob decodes the bits into a guess. With shared randomness the strategy
// set is the convex hull of the distinct channels D(E(m)).

#include "dmh/games.hpp"
#include "dmh/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dmh {

struct ClassicalStrategy {
  std::vector<unsigned> encoding;  // message -> n-bit word
  std::vector<int> decoding;       // word -> guess

  /// guess[m] = decoding[encoding[m]]
  std::vector<int> channel() const;
};

/// 0/1 row-stochastic matrix with a single 1 per row at column guess[m].
StrategyMatrix<Rational> channel_matrix(const std::vector<int>& guess, int guesses);

/// Stirling number of the second kind {n brace k}, by the alternating sum
/// (1/k!) sum_j (-1)^j C(k,j) (k-j)^n.
BigInt stirling2(int n, int k);
/// Same number by S(n,k) = k S(n-1,k) + S(n-1,k-1); used as a cross-check.
BigInt stirling2_recurrence(int n, int k);
BigInt binomial(int n, int k);

/// sum_{k=1}^{2^n} k! C(|Z|,k) S(|M|,k): number of distinct channels.
BigInt vertex_count(int bits, int messages, int guesses);

/// Thrown when the number of (E, D) compositions exceeds the enumeration guard.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kCompositionGuard = std::uint64_t{1} << 16;

/// Distinct channels (guess per message) of all (E, D) pairs, sorted
/// lexicographically. Throws ResourceLimitError above kCompositionGuard.
std::vector<std::vector<int>> enumerate_channels(int bits, int messages, int guesses);
std::vector<StrategyMatrix<Rational>> enumerate_vertices(int bits, int messages, int guesses);

struct VertexReport {
  std::size_t total = 0;
  std::vector<std::vector<int>> safe_channels;  // finite-payoff vertices, 0-based guesses
  std::vector<StrategyMatrix<Rational>> safe_vertices;
  ExactPayoff max_payoff = ExactPayoff::neg_infinity();  // over all vertices
};

VertexReport verify_classical_bound(const GameMatrix& game, int bits);

}  // namespace dmh
