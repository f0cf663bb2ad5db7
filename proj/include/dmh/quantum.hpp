#pragma once

// Two-qubit pure states, qubit POVMs, Born-rule boxes and strategy matrices,
// Hardy-probability optimization and the seesaw search for DMH strategies.
//
// Amplitude k of a state is the coefficient of |a b> with k = 2a + b.

#include "dmh/correlations.hpp"
#include "dmh/games.hpp"
#include "dmh/wiring.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dmh {

using Qubit = Eigen::Vector2cd;
using QubitOperator = Eigen::Matrix2cd;

struct TwoQubitPureState {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd(1, 0, 0, 0);

  /// cos(theta)|00> + sin(theta)|11>; throws std::domain_error outside [0, pi/4].
  static TwoQubitPureState schmidt(double theta);
  /// (|00> + |11>)/sqrt(2)
  static TwoQubitPureState phi_plus();

  /// Throws std::domain_error unless the norm is 1 within tol.
  void validate(double tol = 1e-10) const;

  /// Psi(a, b) = amplitude of |a b>.
  Eigen::Matrix2cd coefficient_matrix() const;
};

/// Schmidt form psi = cos(theta) |u0>|v0> + sin(theta) |u1>|v1> with
/// theta in [0, pi/4]; columns of alice / bob are u_k / v_k.
struct SchmidtForm {
  double theta = 0;
  Eigen::Matrix2cd alice;
  Eigen::Matrix2cd bob;
};
SchmidtForm schmidt_form(const TwoQubitPureState& state);

struct QubitMeasurement {
  std::vector<QubitOperator> effects;

  /// Throws std::domain_error unless each effect is Hermitian and PSD within
  /// tol and the effects sum to the identity within tol.
  void validate(double tol = 1e-10) const;
  std::size_t outcomes() const { return effects.size(); }
};

/// Projective measurement with outcome 0 along |v> and outcome 1 along its complement.
QubitMeasurement projective(const Qubit& v);
/// Real-plane projective measurement, outcome 0 along (cos angle, sin angle).
QubitMeasurement projective_angle(double angle);

struct QuantumStrategy {
  TwoQubitPureState state;
  std::array<QubitMeasurement, 4> alice;  // binary, one per message
  std::array<QubitMeasurement, 2> bob;    // four outcomes, one per received bit

  void validate(double tol = 1e-10) const;
};

/// Operator K on Alice's side with <psi|(E x N)|psi> = Tr[E K] for every E.
QubitOperator alice_side(const TwoQubitPureState& state, const QubitOperator& bob_effect);
/// Operator L on Bob's side with <psi|(E x N)|psi> = Tr[N L] for every N.
QubitOperator bob_side(const TwoQubitPureState& state, const QubitOperator& alice_effect);

/// p(a,b|x,y) = <psi|(A^x_a x B^y_b)|psi>. Throws std::domain_error on an
/// invalid state or measurement.
FloatBox born_box(const TwoQubitPureState& state, const std::array<QubitMeasurement, 2>& alice,
                  const std::array<QubitMeasurement, 2>& bob);

/// s(m,z) = sum_c <psi|(E^m_c x N^c_z)|psi>.
StrategyMatrix<double> quantum_strategy_matrix(const QuantumStrategy& qs);
/// (1/2) sum_c Tr[E^m_c conj(N^c_z)]: the same matrix when the state is |phi+>.
StrategyMatrix<double> conjugate_trace_strategy_matrix(const std::array<QubitMeasurement, 4>& alice,
                                                       const std::array<QubitMeasurement, 2>& bob);

/// Box-assisted protocol run on a quantum box: E^m_c sums Alice's effects a
/// with C(m,a) = c, N^c_z sums Bob's effects b with Z(c,b) = z.
QuantumStrategy wire_measurements(const Wiring& w, const TwoQubitPureState& state,
                                  const std::array<QubitMeasurement, 2>& alice,
                                  const std::array<QubitMeasurement, 2>& bob);

struct HardyResult {
  double theta = 0;
  double h0 = 0;
  double parameter = 0;  // tangent of Bob's second measurement angle
  std::array<QubitMeasurement, 2> alice;
  std::array<QubitMeasurement, 2> bob;
  FloatBox box = FloatBox::Zero();
  double max_zero_residual = 0;  // max of |h3|, |h5|, |h10|
  bool converged = true;
};

/// Real-plane projective measurements on cos(theta)|00> + sin(theta)|11>
/// satisfying the three Hardy zeros for a free parameter u; the parameter is
/// chosen by a bracketing scan followed by golden-section refinement.
/// Throws std::domain_error for theta outside [0, pi/4].
HardyResult optimize_hardy(double theta);
/// Golden-section maximization of optimize_hardy over theta.
HardyResult maximize_hardy();

struct SeesawOptions {
  int restarts = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  int max_iterations = 500;
  double improvement_tolerance = 1e-10;
  double bomb_tolerance = 1e-9;  // strategies with any bomb entry above this are rejected
  double kernel_tolerance = 1e-8;
};

struct SeesawResult {
  bool found = false;  // some restart ended with a feasible strategy
  double best_payoff = 0;
  int best_restart = -1;
  QuantumStrategy strategy;
  StrategyMatrix<double> matrix;
  std::vector<double> restart_payoffs;  // -inf for rejected restarts
  int rejected = 0;
  std::uint64_t seed = 0;
};

/// Alternating maximization of the game payoff over Alice's and Bob's POVMs
/// with the state fixed. Even restarts start from random measurements and a
/// bomb-penalty continuation; odd restarts (and restart 0) start from a Hardy
/// strategy run through the box-assisted wiring. Every restart ends with
/// steps that keep all bomb entries at zero. Deterministic for a given seed
/// and independent of the worker count.
SeesawResult seesaw(const GameMatrix& game, const TwoQubitPureState& state, const SeesawOptions& options);
SeesawResult seesaw_dmh(const TwoQubitPureState& state, int restarts, std::uint64_t seed);

struct Theorem4Report {
  /// <psi|E^m_c x N^c_z|psi> for every bomb cell (m, z) of the game and c in {0,1}.
  struct Residual {
    int message = 0;  // 1-based
    int guess = 0;    // 1-based
    int bit = 0;
    double value = 0;
  };
  std::vector<Residual> residuals;
  double max_residual = 0;
  /// Tr[E^3_0 (N^0_1* - N^1_1*)] - Tr[E^1_0 (N^0_1* - N^1_1*)]; positive
  /// margin is what a positive DMH payoff would need.
  double margin = 0;
  bool constraints_hold = false;
  bool inequality_holds = false;
};

Theorem4Report check_theorem4_constraints(const QuantumStrategy& qs, double tol = 1e-9);

/// Strategy on |phi+> with exactly vanishing bomb entries: Bob's effects are
/// diagonal in a random basis per bit, Alice's lie in the interval her bomb
/// constraints allow. nullopt when the Bob draw admits no Alice strategy.
std::optional<QuantumStrategy> random_bomb_free_strategy(std::mt19937_64& rng);

/// Projective strategy from the impossibility argument: with psi real,
/// E^3 = {psi, psi_perp}, E^4 = {psi_perp, psi}, E^2 = {psi, psi_perp},
/// N^0 = (0, psi, psi_perp, 0), N^1 = (0, psi_perp, psi, 0); E^1 is free.
QuantumStrategy forced_theorem4_strategy(double angle, const QubitMeasurement& alice_first);

}  // namespace dmh
