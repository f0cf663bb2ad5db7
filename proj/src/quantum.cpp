#include "dmh/quantum.hpp"

#include "dmh/povm_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace dmh {

using cd = std::complex<double>;

TwoQubitPureState TwoQubitPureState::schmidt(double theta) {
  if (!(theta >= 0 && theta <= std::numbers::pi / 4 + 1e-15)) throw std::domain_error("Schmidt angle must lie in [0, pi/4]");
  TwoQubitPureState s;
  s.amplitudes = Eigen::Vector4cd(std::cos(theta), 0, 0, std::sin(theta));
  return s;
}

TwoQubitPureState TwoQubitPureState::phi_plus() {
  TwoQubitPureState s;
  s.amplitudes = Eigen::Vector4cd(1, 0, 0, 1) / std::sqrt(2.0);
  return s;
}

void TwoQubitPureState::validate(double tol) const {
  if (!amplitudes.allFinite()) throw std::domain_error("state has non-finite amplitudes");
  if (std::abs(amplitudes.norm() - 1) > tol) throw std::domain_error("state is not normalized");
}

Eigen::Matrix2cd TwoQubitPureState::coefficient_matrix() const {
  Eigen::Matrix2cd psi;
  psi << amplitudes(0), amplitudes(1), amplitudes(2), amplitudes(3);
  return psi;
}

SchmidtForm schmidt_form(const TwoQubitPureState& state) {
  state.validate();
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(state.coefficient_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Psi = U diag(s) W^dagger, so psi = sum_k s_k |u_k> |conj(w_k)>.
  SchmidtForm f;
  const auto& s = svd.singularValues();
  f.theta = std::atan2(s(1), s(0));
  f.alice = svd.matrixU();
  f.bob = svd.matrixV().conjugate();
  return f;
}

void QubitMeasurement::validate(double tol) const {
  if (effects.empty()) throw std::domain_error("measurement has no outcomes");
  QubitOperator sum = QubitOperator::Zero();
  for (const auto& e : effects) {
    if (!e.allFinite()) throw std::domain_error("effect has non-finite entries");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) throw std::domain_error("effect is not Hermitian");
    Eigen::SelfAdjointEigenSolver<QubitOperator> eig(e);
    if (eig.eigenvalues().minCoeff() < -tol)
      throw std::domain_error("effect is not positive semidefinite (min eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) + ")");
    sum += e;
  }
  if ((sum - QubitOperator::Identity()).cwiseAbs().maxCoeff() > tol) throw std::domain_error("effects do not sum to the identity");
}

QubitMeasurement projective(const Qubit& v) {
  const Qubit u = v.normalized();
  QubitMeasurement m;
  const QubitOperator p = u * u.adjoint();
  m.effects = {p, QubitOperator::Identity() - p};
  return m;
}

QubitMeasurement projective_angle(double angle) { return projective(Qubit(std::cos(angle), std::sin(angle))); }

void QuantumStrategy::validate(double tol) const {
  state.validate(tol);
  for (const auto& a : alice) {
    if (a.outcomes() != 2) throw std::domain_error("Alice's measurements must have two outcomes");
    a.validate(tol);
  }
  for (const auto& b : bob) {
    if (b.outcomes() != 4) throw std::domain_error("Bob's measurements must have four outcomes");
    b.validate(tol);
  }
}

QubitOperator alice_side(const TwoQubitPureState& state, const QubitOperator& bob_effect) {
  const Eigen::Matrix2cd psi = state.coefficient_matrix();
  return psi * bob_effect.transpose() * psi.adjoint();
}

QubitOperator bob_side(const TwoQubitPureState& state, const QubitOperator& alice_effect) {
  const Eigen::Matrix2cd psi = state.coefficient_matrix();
  return psi.transpose() * alice_effect.transpose() * psi.conjugate();
}

namespace {

double expectation(const TwoQubitPureState& state, const QubitOperator& a, const QubitOperator& b) {
  Eigen::Matrix4cd op;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) op.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return state.amplitudes.dot(op * state.amplitudes).real();
}

}  // namespace

FloatBox born_box(const TwoQubitPureState& state, const std::array<QubitMeasurement, 2>& alice,
                  const std::array<QubitMeasurement, 2>& bob) {
  state.validate();
  for (const auto& m : alice) {
    if (m.outcomes() != 2) throw std::domain_error("box measurements must have two outcomes");
    m.validate();
  }
  for (const auto& m : bob) {
    if (m.outcomes() != 2) throw std::domain_error("box measurements must have two outcomes");
    m.validate();
  }
  FloatBox p;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          p(box_index(a, b, x, y)) = expectation(state, alice[static_cast<std::size_t>(x)].effects[static_cast<std::size_t>(a)],
                                                 bob[static_cast<std::size_t>(y)].effects[static_cast<std::size_t>(b)]);
  return p;
}

StrategyMatrix<double> quantum_strategy_matrix(const QuantumStrategy& qs) {
  qs.validate();
  StrategyMatrix<double> s = StrategyMatrix<double>::Zero(4, 4);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t z = 0; z < 4; ++z)
      for (std::size_t c = 0; c < 2; ++c)
        s(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(z)) += expectation(qs.state, qs.alice[m].effects[c], qs.bob[c].effects[z]);
  return s;
}

StrategyMatrix<double> conjugate_trace_strategy_matrix(const std::array<QubitMeasurement, 4>& alice,
                                                       const std::array<QubitMeasurement, 2>& bob) {
  StrategyMatrix<double> s = StrategyMatrix<double>::Zero(4, 4);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t z = 0; z < 4; ++z)
      for (std::size_t c = 0; c < 2; ++c)
        s(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(z)) +=
            0.5 * (alice[m].effects.at(c) * bob[c].effects.at(z).conjugate()).trace().real();
  return s;
}

QuantumStrategy wire_measurements(const Wiring& w, const TwoQubitPureState& state,
                                  const std::array<QubitMeasurement, 2>& alice,
                                  const std::array<QubitMeasurement, 2>& bob) {
  QuantumStrategy qs;
  qs.state = state;
  for (std::size_t m = 0; m < 4; ++m) {
    qs.alice[m].effects.assign(2, QubitOperator::Zero());
    for (std::size_t a = 0; a < 2; ++a)
      qs.alice[m].effects[static_cast<std::size_t>(w.c[m][a])] += alice[static_cast<std::size_t>(w.x[m])].effects.at(a);
  }
  for (std::size_t c = 0; c < 2; ++c) {
    qs.bob[c].effects.assign(4, QubitOperator::Zero());
    for (std::size_t b = 0; b < 2; ++b)
      qs.bob[c].effects[static_cast<std::size_t>(w.z[c][b])] += bob[static_cast<std::size_t>(w.y[c])].effects.at(b);
  }
  return qs;
}

// ---------------------------------------------------------------------------
// Hardy optimizer

namespace {

struct HardyAngles {
  double alice0, alice1, bob0, bob1;
};

// Angles satisfying p(0,1|0,1) = p(1,0|1,0) = p(0,0|1,1) = 0 on
// cos(theta)|00> + sin(theta)|11> with t = tan(theta) > 0 and tan(bob1) = u.
HardyAngles hardy_angles(double t, double u) {
  return {std::atan(u / t), std::atan(-1.0 / (t * u)), std::atan(-1.0 / (t * t * u)), std::atan(u)};
}

HardyResult evaluate_hardy(double theta, double u) {
  HardyResult r;
  r.theta = theta;
  r.parameter = u;
  const auto ang = hardy_angles(std::tan(theta), u);
  r.alice = {projective_angle(ang.alice0), projective_angle(ang.alice1)};
  r.bob = {projective_angle(ang.bob0), projective_angle(ang.bob1)};
  r.box = born_box(TwoQubitPureState::schmidt(theta), r.alice, r.bob);
  r.h0 = r.box(0);
  r.max_zero_residual = std::max({std::abs(r.box(3)), std::abs(r.box(5)), std::abs(r.box(10))});
  return r;
}

template <typename F>
double golden_section_max(F f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace

HardyResult optimize_hardy(double theta) {
  if (!(theta >= 0 && theta <= std::numbers::pi / 4 + 1e-15)) throw std::domain_error("Schmidt angle must lie in [0, pi/4]");
  if (std::tan(theta) < 1e-12) {
    // Product state: every outcome-0 direction along |1> meets all three zeros.
    HardyResult r;
    r.theta = theta;
    r.alice = {projective_angle(std::numbers::pi / 2), projective_angle(std::numbers::pi / 2)};
    r.bob = r.alice;
    r.box = born_box(TwoQubitPureState::schmidt(theta), r.alice, r.bob);
    r.h0 = r.box(0);
    r.max_zero_residual = std::max({std::abs(r.box(3)), std::abs(r.box(5)), std::abs(r.box(10))});
    return r;
  }
  auto h0_at = [theta](double log_u) { return evaluate_hardy(theta, std::exp(log_u)).h0; };
  constexpr double span = 8.0;
  constexpr int steps = 320;
  double best_s = -span, best = -1;
  for (int i = 0; i <= steps; ++i) {
    const double s = -span + 2 * span * i / steps;
    const double v = h0_at(s);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  const double h = 2 * span / steps;
  const double s = golden_section_max(h0_at, best_s - h, best_s + h, 1e-10);
  HardyResult r = evaluate_hardy(theta, std::exp(s));
  r.converged = r.max_zero_residual <= 1e-9;
  return r;
}

HardyResult maximize_hardy() {
  const double hi = std::numbers::pi / 4;
  auto h0_at = [](double th) { return optimize_hardy(th).h0; };
  constexpr int steps = 90;
  double best_th = 0, best = -1;
  for (int i = 1; i < steps; ++i) {
    const double th = hi * i / steps;
    const double v = h0_at(th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  const double h = hi / steps;
  return optimize_hardy(golden_section_max(h0_at, best_th - h, best_th + h, 1e-9));
}

// ---------------------------------------------------------------------------
// Seesaw

namespace {

QubitOperator hermitian_part(const QubitOperator& a) { return 0.5 * (a + a.adjoint()); }

// Orthonormal basis (2 x k) of the eigenvectors of a PSD operator with
// eigenvalue at most tol.
Eigen::MatrixXcd near_kernel(const QubitOperator& b, double tol) {
  Eigen::SelfAdjointEigenSolver<QubitOperator> eig(hermitian_part(b));
  std::vector<int> keep;
  for (int i = 0; i < 2; ++i)
    if (eig.eigenvalues()(i) <= tol) keep.push_back(i);
  Eigen::MatrixXcd k(2, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(keep[j]);
  return k;
}

QubitOperator nonnegative_projector(const QubitOperator& d) {
  Eigen::SelfAdjointEigenSolver<QubitOperator> eig(hermitian_part(d));
  QubitOperator p = QubitOperator::Zero();
  for (int i = 0; i < 2; ++i) {
    if (eig.eigenvalues()(i) >= 0) p += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
  }
  return p;
}

QubitMeasurement binary(const QubitOperator& e0) {
  QubitMeasurement m;
  const QubitOperator h = hermitian_part(e0);
  m.effects = {h, QubitOperator::Identity() - h};
  return m;
}

Qubit random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Qubit v(cd(n(rng), n(rng)), cd(n(rng), n(rng)));
  return v.normalized();
}

class SeesawRun {
 public:
  SeesawRun(const GameMatrix& game, const TwoQubitPureState& state, const SeesawOptions& opt)
      : game_(game), state_(state), opt_(opt) {}

  struct Outcome {
    bool feasible = false;
    double payoff = -std::numeric_limits<double>::infinity();
    QuantumStrategy strategy;
  };

  Outcome run(QuantumStrategy qs, bool penalty_phase) {
    Outcome best;
    if (penalty_phase) {
      double lambda = 1.0;
      for (int it = 0; it < 80; ++it) {
        bob_soft(qs, lambda);
        alice_soft(qs, lambda);
        if (it % 5 == 4) lambda = std::min(lambda * 4, 1e8);
      }
    }
    consider(qs, best);
    double previous = evaluate(qs).second;
    for (int it = 0; it < opt_.max_iterations; ++it) {
      if (!bob_hard(qs) || !alice_hard(qs)) break;
      consider(qs, best);
      const double current = evaluate(qs).second;
      if (current - previous < opt_.improvement_tolerance) break;
      previous = current;
    }
    return best;
  }

 private:
  // (max bomb entry, payoff ignoring bombs)
  std::pair<double, double> evaluate(const QuantumStrategy& qs) const {
    const auto s = quantum_strategy_matrix(qs);
    double bomb = 0, value = 0;
    for (int m = 0; m < 4; ++m) {
      for (int z = 0; z < 4; ++z) {
        if (game_.is_bomb(m, z)) {
          bomb = std::max(bomb, s(m, z));
        } else {
          value += to_double(game_.prior[static_cast<std::size_t>(m)] * game_.reward(m, z)) * s(m, z);
        }
      }
    }
    return {bomb, value};
  }

  void consider(const QuantumStrategy& qs, Outcome& best) const {
    const auto [bomb, value] = evaluate(qs);
    if (bomb > opt_.bomb_tolerance) return;
    if (!best.feasible || value > best.payoff) {
      best.feasible = true;
      best.payoff = value;
      best.strategy = qs;
    }
  }

  double weight(int m, int z) const {
    return to_double(game_.prior[static_cast<std::size_t>(m)] * game_.reward(m, z));
  }

  void bob_soft(QuantumStrategy& qs, double lambda) const {
    for (std::size_t c = 0; c < 2; ++c) {
      PovmProblem p;
      for (int z = 0; z < 4; ++z) {
        QubitOperator v = QubitOperator::Zero();
        for (int m = 0; m < 4; ++m) {
          const double g = game_.is_bomb(m, z) ? -lambda : weight(m, z);
          v += g * bob_side(state_, qs.alice[static_cast<std::size_t>(m)].effects[c]);
        }
        p.supports.push_back(Eigen::MatrixXcd::Identity(2, 2));
        p.objectives.push_back(hermitian_part(v));
      }
      if (auto sol = solve_povm(p)) qs.bob[c].effects = sol->effects;
    }
  }

  void alice_soft(QuantumStrategy& qs, double lambda) const {
    for (int m = 0; m < 4; ++m) {
      QubitOperator w[2];
      for (std::size_t c = 0; c < 2; ++c) {
        w[c].setZero();
        for (int z = 0; z < 4; ++z) {
          const double g = game_.is_bomb(m, z) ? -lambda : weight(m, z);
          w[c] += g * alice_side(state_, qs.bob[c].effects[static_cast<std::size_t>(z)]);
        }
      }
      qs.alice[static_cast<std::size_t>(m)] = binary(nonnegative_projector(w[0] - w[1]));
    }
  }

  bool bob_hard(QuantumStrategy& qs) const {
    for (std::size_t c = 0; c < 2; ++c) {
      PovmProblem p;
      for (int z = 0; z < 4; ++z) {
        QubitOperator v = QubitOperator::Zero(), bomb = QubitOperator::Zero();
        for (int m = 0; m < 4; ++m) {
          const QubitOperator l = bob_side(state_, qs.alice[static_cast<std::size_t>(m)].effects[c]);
          if (game_.is_bomb(m, z)) {
            bomb += l;
          } else {
            v += weight(m, z) * l;
          }
        }
        p.supports.push_back(near_kernel(bomb, opt_.kernel_tolerance));
        p.objectives.push_back(hermitian_part(v));
      }
      auto sol = solve_povm(p);
      if (!sol) return false;
      qs.bob[c].effects = sol->effects;
    }
    return true;
  }

  bool alice_hard(QuantumStrategy& qs) const {
    const QubitOperator id = QubitOperator::Identity();
    for (int m = 0; m < 4; ++m) {
      QubitOperator w[2], q[2];
      for (std::size_t c = 0; c < 2; ++c) {
        w[c].setZero();
        QubitOperator bomb = QubitOperator::Zero();
        for (int z = 0; z < 4; ++z) {
          const QubitOperator k = alice_side(state_, qs.bob[c].effects[static_cast<std::size_t>(z)]);
          if (game_.is_bomb(m, z)) {
            bomb += k;
          } else {
            w[c] += weight(m, z) * k;
          }
        }
        const Eigen::MatrixXcd ker = near_kernel(bomb, opt_.kernel_tolerance);
        q[c] = ker * ker.adjoint();
      }
      // Outcome 0 must live in ker q0-side, outcome 1 in the other: I - Q1 <= E0 <= Q0.
      const QubitOperator lower = id - q[1];
      if ((lower - q[0] * lower).norm() > 1e-7) return false;
      // Within the free subspace, keep the directions where outcome 0 pays more.
      const Eigen::MatrixXcd range = near_kernel(id - hermitian_part(q[0] - lower), 0.5);
      QubitOperator e0 = lower;
      if (range.cols() > 0) {
        const Eigen::MatrixXcd reduced = range.adjoint() * hermitian_part(w[0] - w[1]) * range;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(reduced);
        for (Eigen::Index i = 0; i < reduced.rows(); ++i) {
          if (eig.eigenvalues()(i) < 0) continue;
          const Qubit v = range * eig.eigenvectors().col(i);
          e0 += v * v.adjoint();
        }
      }
      qs.alice[static_cast<std::size_t>(m)] = binary(e0);
    }
    return true;
  }

  const GameMatrix& game_;
  TwoQubitPureState state_;
  SeesawOptions opt_;
};

QuantumStrategy random_alice_start(const TwoQubitPureState& state, std::mt19937_64& rng) {
  QuantumStrategy qs;
  qs.state = state;
  for (auto& a : qs.alice) a = projective(random_qubit(rng));
  for (auto& b : qs.bob) b.effects.assign(4, 0.25 * QubitOperator::Identity());
  return qs;
}

// Hardy measurements for parameter u, expressed in the state's own basis and
// run through the box-assisted wiring.
QuantumStrategy hardy_start(const TwoQubitPureState& state, const SchmidtForm& form, double u) {
  const auto ang = hardy_angles(std::tan(form.theta), u);
  auto along = [](const Eigen::Matrix2cd& basis, double angle) {
    return projective(basis * Qubit(std::cos(angle), std::sin(angle)));
  };
  const std::array<QubitMeasurement, 2> alice = {along(form.alice, ang.alice0), along(form.alice, ang.alice1)};
  const std::array<QubitMeasurement, 2> bob = {along(form.bob, ang.bob0), along(form.bob, ang.bob1)};
  return wire_measurements(theorem2_wiring(), state, alice, bob);
}

}  // namespace

SeesawResult seesaw(const GameMatrix& game, const TwoQubitPureState& state, const SeesawOptions& options) {
  game.validate();
  if (game.messages() != 4 || game.guesses() != 4) throw std::invalid_argument("seesaw needs a 4x4 game");
  if (options.restarts < 1) throw std::invalid_argument("seesaw needs at least one restart");
  state.validate();
  const SchmidtForm form = schmidt_form(state);
  const bool entangled = std::tan(form.theta) > 1e-9;
  const double best_u = entangled ? optimize_hardy(form.theta).parameter : 1.0;

  const auto n = static_cast<std::size_t>(options.restarts);
  std::vector<SeesawRun::Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto body = [&] {
    try {
      SeesawRun run(game, state, options);
      for (std::size_t r = next++; r < n; r = next++) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        const bool wired = entangled && (r == 0 || r % 2 == 1);
        if (wired) {
          std::normal_distribution<double> spread(0, 1.5);
          const double u = r == 0 ? best_u : best_u * std::exp(spread(rng));
          outcomes[r] = run.run(hardy_start(state, form, u), false);
        } else {
          outcomes[r] = run.run(random_alice_start(state, rng), true);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < workers; ++i) threads.emplace_back(body);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SeesawResult result;
  result.seed = options.seed;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& o = outcomes[r];
    result.restart_payoffs.push_back(o.payoff);
    if (!o.feasible) {
      ++result.rejected;
      continue;
    }
    if (!result.found || o.payoff > result.best_payoff) {
      result.found = true;
      result.best_payoff = o.payoff;
      result.best_restart = static_cast<int>(r);
      result.strategy = o.strategy;
    }
  }
  if (result.found) result.matrix = quantum_strategy_matrix(result.strategy);
  return result;
}

SeesawResult seesaw_dmh(const TwoQubitPureState& state, int restarts, std::uint64_t seed) {
  SeesawOptions opt;
  opt.restarts = restarts;
  opt.seed = seed;
  return seesaw(dmh_game(), state, opt);
}

// ---------------------------------------------------------------------------
// Impossibility constraints on |phi+>

Theorem4Report check_theorem4_constraints(const QuantumStrategy& qs, double tol) {
  qs.validate();
  const GameMatrix game = dmh_game();
  Theorem4Report rep;
  for (int m = 0; m < 4; ++m) {
    for (int z = 0; z < 4; ++z) {
      if (!game.is_bomb(m, z)) continue;
      for (int c = 0; c < 2; ++c) {
        const double v = expectation(qs.state, qs.alice[static_cast<std::size_t>(m)].effects[static_cast<std::size_t>(c)],
                                     qs.bob[static_cast<std::size_t>(c)].effects[static_cast<std::size_t>(z)]);
        rep.residuals.push_back({m + 1, z + 1, c, v});
        rep.max_residual = std::max(rep.max_residual, std::abs(v));
      }
    }
  }
  const QubitOperator diff = qs.bob[0].effects[0].conjugate() - qs.bob[1].effects[0].conjugate();
  rep.margin = (qs.alice[2].effects[0] * diff).trace().real() - (qs.alice[0].effects[0] * diff).trace().real();
  rep.constraints_hold = rep.max_residual <= tol;
  rep.inequality_holds = rep.margin > tol;
  return rep;
}

std::optional<QuantumStrategy> random_bomb_free_strategy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<int> pick(0, 2);
  const GameMatrix game = dmh_game();
  QuantumStrategy qs;
  qs.state = TwoQubitPureState::phi_plus();

  // Bob: effects diagonal in one basis per bit. The bit-1 basis is the bit-0
  // basis, its swap, or unrelated.
  Eigen::Matrix2cd basis[2];
  const Qubit v = random_qubit(rng);
  basis[0].col(0) = v;
  basis[0].col(1) = Qubit(-std::conj(v(1)), std::conj(v(0)));
  switch (pick(rng)) {
    case 0:
      basis[1] = basis[0];
      break;
    case 1:
      basis[1].col(0) = basis[0].col(1);
      basis[1].col(1) = basis[0].col(0);
      break;
    default: {
      const Qubit w = random_qubit(rng);
      basis[1].col(0) = w;
      basis[1].col(1) = Qubit(-std::conj(w(1)), std::conj(w(0)));
    }
  }
  for (int c = 0; c < 2; ++c) {
    std::array<std::array<double, 4>, 2> weights{};
    for (auto& col : weights) {
      double total = 0;
      while (total == 0) {
        for (auto& x : col) {
          x = unit(rng) < 0.5 ? 0.0 : unit(rng);
          total += x;
        }
      }
      for (auto& x : col) x /= total;
    }
    auto& meas = qs.bob[static_cast<std::size_t>(c)];
    meas.effects.assign(4, QubitOperator::Zero());
    for (std::size_t z = 0; z < 4; ++z) {
      for (int k = 0; k < 2; ++k) {
        const Qubit b = basis[c].col(k);
        meas.effects[z] += weights[static_cast<std::size_t>(k)][z] * (b * b.adjoint());
      }
    }
  }

  // Alice: I - Q1 <= E0 <= Q0 where Q_c projects onto the kernel of her bomb operator.
  const QubitOperator id = QubitOperator::Identity();
  for (int m = 0; m < 4; ++m) {
    QubitOperator q[2];
    for (std::size_t c = 0; c < 2; ++c) {
      QubitOperator bomb = QubitOperator::Zero();
      for (int z = 0; z < 4; ++z)
        if (game.is_bomb(m, z)) bomb += alice_side(qs.state, qs.bob[c].effects[static_cast<std::size_t>(z)]);
      const Eigen::MatrixXcd ker = near_kernel(bomb, 1e-12);
      q[c] = ker * ker.adjoint();
    }
    const QubitOperator lower = id - q[1];
    if ((lower - q[0] * lower).norm() > 1e-9) return std::nullopt;
    const QubitOperator free_part = q[0] - lower;
    QubitOperator e0 = lower;
    if (free_part.trace().real() > 1.5) {
      const Qubit u = random_qubit(rng);
      const QubitOperator pu = u * u.adjoint();
      e0 += unit(rng) * pu + unit(rng) * (id - pu);
    } else {
      e0 += unit(rng) * free_part;
    }
    qs.alice[static_cast<std::size_t>(m)] = binary(e0);
  }
  return qs;
}

QuantumStrategy forced_theorem4_strategy(double angle, const QubitMeasurement& alice_first) {
  const Qubit psi(std::cos(angle), std::sin(angle));
  const Qubit perp(-std::sin(angle), std::cos(angle));
  const QubitOperator p = psi * psi.adjoint();
  const QubitOperator q = perp * perp.adjoint();
  const QubitOperator zero = QubitOperator::Zero();
  QuantumStrategy qs;
  qs.state = TwoQubitPureState::phi_plus();
  qs.alice[0] = alice_first;
  qs.alice[1].effects = {p, q};
  qs.alice[2].effects = {p, q};
  qs.alice[3].effects = {q, p};
  qs.bob[0].effects = {zero, p, q, zero};
  qs.bob[1].effects = {zero, q, p, zero};
  return qs;
}

}  // namespace dmh
