#pragma once

// Payoff matrices over the extended reals and the average payoff of a
// strategy matrix. Messages and guesses are 0-based here; I/O is 1-based.

#include "dmh/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmh {

/// A finite value or minus infinity. 0 * (-inf) is taken to be 0.
template <typename Scalar>
class ExtendedPayoff {
 public:
  ExtendedPayoff() : value_(0) {}
  static ExtendedPayoff finite(Scalar v) { return ExtendedPayoff(false, std::move(v)); }
  static ExtendedPayoff neg_infinity() { return ExtendedPayoff(true, Scalar(0)); }

  bool is_neg_infinity() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }
  /// Throws std::logic_error on -inf.
  const Scalar& value() const {
    if (neg_inf_) throw std::logic_error("payoff is -inf");
    return value_;
  }

  /// Weight times payoff with the 0 * (-inf) = 0 convention; weight must be >= 0.
  ExtendedPayoff scaled(const Scalar& weight) const {
    if (neg_inf_) return weight == Scalar(0) ? finite(Scalar(0)) : neg_infinity();
    return finite(value_ * weight);
  }

  friend ExtendedPayoff operator+(const ExtendedPayoff& l, const ExtendedPayoff& r) {
    if (l.neg_inf_ || r.neg_inf_) return neg_infinity();
    return finite(l.value_ + r.value_);
  }
  friend bool operator==(const ExtendedPayoff& l, const ExtendedPayoff& r) {
    return l.neg_inf_ == r.neg_inf_ && (l.neg_inf_ || l.value_ == r.value_);
  }
  /// -inf is below every finite value.
  friend bool operator<(const ExtendedPayoff& l, const ExtendedPayoff& r) {
    if (l.neg_inf_) return !r.neg_inf_;
    if (r.neg_inf_) return false;
    return l.value_ < r.value_;
  }

 private:
  ExtendedPayoff(bool neg_inf, Scalar v) : neg_inf_(neg_inf), value_(std::move(v)) {}
  bool neg_inf_ = false;
  Scalar value_;
};

using ExactPayoff = ExtendedPayoff<Rational>;

std::string to_string(const ExactPayoff& p);

template <typename Scalar>
using StrategyMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// g(m, z) over messages m (rows) and guesses z (columns), with the message prior.
struct GameMatrix {
  std::vector<std::vector<ExactPayoff>> entries;
  std::vector<Rational> prior;

  int messages() const { return static_cast<int>(entries.size()); }
  int guesses() const { return entries.empty() ? 0 : static_cast<int>(entries.front().size()); }
  bool is_bomb(int m, int z) const { return entries[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)].is_neg_infinity(); }
  const Rational& reward(int m, int z) const { return entries[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)].value(); }

  /// Throws std::invalid_argument for ragged rows, a prior of the wrong size,
  /// negative prior entries or a prior that does not sum to 1.
  void validate() const;
};

GameMatrix dmh_game();
GameMatrix dmh_prime_game();

/// Sum over (m,z) of prior(m) * g(m,z) * s(m,z). Any s(m,z) above tol on a
/// -inf cell gives -inf; cells at or below tol contribute nothing there.
/// Throws std::invalid_argument on a dimension mismatch.
template <typename Scalar>
ExtendedPayoff<Scalar> payoff(const GameMatrix& game, const StrategyMatrix<Scalar>& s,
                              double tol = default_tolerance<Scalar>()) {
  if (s.rows() != game.messages() || s.cols() != game.guesses()) {
    throw std::invalid_argument("payoff: strategy is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                                ", game is " + std::to_string(game.messages()) + "x" + std::to_string(game.guesses()));
  }
  Scalar total(0);
  for (int m = 0; m < game.messages(); ++m) {
    for (int z = 0; z < game.guesses(); ++z) {
      const Scalar& w = s(m, z);
      if (game.is_bomb(m, z)) {
        bool positive;
        if constexpr (std::is_same_v<Scalar, Rational>) {
          positive = w != 0;
        } else {
          positive = w > tol;
        }
        if (positive) return ExtendedPayoff<Scalar>::neg_infinity();
        continue;
      }
      total += scalar_from<Scalar>(game.prior[static_cast<std::size_t>(m)] * game.reward(m, z)) * w;
    }
  }
  return ExtendedPayoff<Scalar>::finite(total);
}

/// True when every row is non-negative and sums to 1 (within tol for floats).
template <typename Scalar>
bool is_row_stochastic(const StrategyMatrix<Scalar>& s, double tol = default_tolerance<Scalar>()) {
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    Scalar sum(0);
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
      if constexpr (std::is_same_v<Scalar, Rational>) {
        if (s(r, c) < 0) return false;
      } else {
        if (s(r, c) < -tol) return false;
      }
      sum += s(r, c);
    }
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (sum != 1) return false;
    } else {
      if (std::abs(sum - 1) > tol) return false;
    }
  }
  return true;
}

}  // namespace dmh
