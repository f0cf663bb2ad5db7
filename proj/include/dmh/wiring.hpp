#pragma once

// Box-assisted one-bit protocols. Alice feeds x = X(m) into her half of the
// box, gets a, and sends the bit c = C(m, a). Bob feeds y = Y(c), gets b and
// guesses z = Z(c, b). Each deterministic choice of (X, C, Y, Z) turns a box
// into a 4x4 strategy matrix that is linear in the box entries.

#include "dmh/correlations.hpp"
#include "dmh/games.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dmh {

struct Wiring {
  std::array<int, 4> x{};                   // message -> Alice input
  std::array<std::array<int, 2>, 4> c{};    // (message, a) -> bit
  std::array<int, 2> y{};                   // bit -> Bob input
  std::array<std::array<int, 2>, 2> z{};    // (bit, b) -> guess, 0-based

  static constexpr std::uint32_t count = std::uint32_t{1} << 22;

  /// Bits 0-3: X(m) at bit m. Bits 4-11: C(m,a) at bit 4 + 2m + a.
  /// Bits 12-13: Y(c) at bit 12 + c. Bits 14-21: Z(c,b) as 2 bits at 14 + 2(2c + b).
  std::uint32_t id() const;
  static Wiring from_id(std::uint32_t id);

  bool operator==(const Wiring&) const = default;
};

/// Which box entries feed strategy cell (m, z): bit i set means p_i is summed.
using CellMasks = std::array<std::array<std::uint16_t, 4>, 4>;

CellMasks compose_masks(const Wiring& w);

/// s(m,z) = sum over (a,b) of p(a,b|X(m),Y(C(m,a))) [Z(C(m,a),b) = z].
template <typename Scalar>
StrategyMatrix<Scalar> compose(const Wiring& w, const Box<Scalar>& p) {
  const CellMasks masks = compose_masks(w);
  StrategyMatrix<Scalar> s = StrategyMatrix<Scalar>::Zero(4, 4);
  for (int m = 0; m < 4; ++m) {
    for (int z = 0; z < 4; ++z) {
      for (int i = 0; i < 16; ++i) {
        if ((masks[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)] >> i) & 1) s(m, z) += p(i);
      }
    }
  }
  return s;
}

/// Alice uses x = 0 for the first and third messages, sends c = 0 exactly for
/// (m, a) in {(1,1), (2,1), (3,0), (3,1)} (1-based m), Bob uses y = c and
/// guesses 2c + b + 1.
Wiring theorem2_wiring();
/// Same wiring; it is reused unchanged for the Cabello-type game.
Wiring theorem6_wiring();

enum class CertificateKind { Hardy, Cabello };

struct WiringAnalysis {
  std::uint32_t id = 0;
  std::uint16_t forced_zeros = 0;  // box entries that must vanish to avoid every bomb
  RationalVector coefficients;     // payoff = coefficients . p once the zeros hold
  ExactPayoff max_payoff;          // -inf when no NS box avoids the bombs
  std::optional<Relabelling> relabelling;
};

/// Forced zeros, payoff coefficients and the exact LP maximum over the
/// no-signaling polytope with the forced zeros. Throws std::invalid_argument
/// unless the game is 4x4.
WiringAnalysis analyze_wiring(const Wiring& w, const GameMatrix& game);

struct SweepRecord {
  std::uint32_t id = 0;
  std::uint16_t forced_zeros = 0;
  Rational max_payoff;
  std::optional<Relabelling> relabelling;
  bool certified = false;
  /// No relabelling puts the required zero pattern inside forced_zeros.
  bool unmatched = false;
};

struct SweepSummary {
  CertificateKind kind = CertificateKind::Hardy;
  std::uint32_t range_begin = 0;
  std::uint32_t range_end = 0;
  std::uint64_t analyzed = 0;
  std::uint64_t bomb_unavoidable = 0;  // NS with the forced zeros is empty
  std::uint64_t non_positive = 0;      // max payoff <= 0
  std::uint64_t positive = 0;          // max payoff > 0
  std::uint64_t certified = 0;
  std::vector<std::uint32_t> counterexamples;  // positive and not certified, sorted
  std::vector<SweepRecord> records;            // one per positive wiring, sorted by id
  std::uint64_t lp_solves = 0;                 // cache misses, summed over workers
};

struct SweepOptions {
  std::uint32_t begin = 0;
  std::uint32_t end = Wiring::count;
  unsigned workers = 1;
  CertificateKind kind = CertificateKind::Hardy;
  /// Called from worker threads (serialized) with the number of wirings done.
  std::function<void(std::uint64_t)> progress;
};

/// For every wiring in [begin, end) with positive max payoff, looks for the
/// first relabelling r (in id order) whose required zeros lie in the forced
/// zeros and for which the LP max with the remaining condition negated is <= 0:
/// Hardy negates p(0,0|0,0) > 0 of the relabelled box, Cabello negates
/// p(0,0|0,0) > p(0,0|1,1). Results do not depend on the worker count.
SweepSummary verify_theorem3(const GameMatrix& game, const SweepOptions& options);

/// Combines shard summaries of the same kind. Throws std::invalid_argument on
/// mixed kinds or overlapping ranges.
SweepSummary merge_summaries(std::vector<SweepSummary> shards);

}  // namespace dmh
