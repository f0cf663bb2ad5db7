#include "dmh/povm_solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace dmh {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cd = std::complex<double>;

// Real basis of k x k Hermitian matrices.
std::vector<MatrixXcd> hermitian_basis(Eigen::Index k) {
  std::vector<MatrixXcd> out;
  if (k == 1) {
    out.push_back(MatrixXcd::Ones(1, 1));
  } else if (k == 2) {
    MatrixXcd h = MatrixXcd::Zero(2, 2);
    h(0, 0) = 1;
    out.push_back(h);
    h.setZero();
    h(1, 1) = 1;
    out.push_back(h);
    h.setZero();
    h(0, 1) = h(1, 0) = 1;
    out.push_back(h);
    h.setZero();
    h(0, 1) = cd(0, -1);
    h(1, 0) = cd(0, 1);
    out.push_back(h);
  }
  return out;
}

// Components of a 2x2 Hermitian matrix that an equality Sum N_z = I pins down.
Eigen::Vector4d features(const Matrix2cd& a) {
  return {a(0, 0).real(), a(1, 1).real(), a(0, 1).real(), a(0, 1).imag()};
}

struct Block {
  MatrixXcd support;
  std::vector<MatrixXcd> basis;
  Eigen::Index offset = 0;
};

class BarrierSolver {
 public:
  explicit BarrierSolver(const PovmProblem& p) {
    if (p.supports.size() != p.objectives.size()) throw std::invalid_argument("solve_povm: supports/objectives size mismatch");
    Eigen::Index n = 0;
    for (const auto& u : p.supports) {
      if (u.rows() != 2 || u.cols() > 2) throw std::invalid_argument("solve_povm: support must be 2 x k with k <= 2");
      Block b;
      b.support = u;
      b.basis = hermitian_basis(u.cols());
      b.offset = n;
      n += static_cast<Eigen::Index>(b.basis.size());
      blocks_.push_back(std::move(b));
    }
    n_ = n;
    c_ = VectorXd::Zero(n);
    MatrixXd a(4, n);
    for (std::size_t z = 0; z < blocks_.size(); ++z) {
      const auto& b = blocks_[z];
      for (std::size_t j = 0; j < b.basis.size(); ++j) {
        const Matrix2cd lifted = b.support * b.basis[j] * b.support.adjoint();
        const auto col = b.offset + static_cast<Eigen::Index>(j);
        c_(col) = (lifted * p.objectives[z]).trace().real();
        a.col(col) = features(lifted);
      }
    }
    const double scale = c_.cwiseAbs().maxCoeff();
    if (scale > 0) c_ /= scale;
    // Independent equality rows.
    const Eigen::Vector4d rhs = features(Matrix2cd::Identity());
    if (n == 0) {
      consistent_ = false;
      return;
    }
    Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > 1e-12 * std::max(1.0, s(0))) ++rank;
    const MatrixXd ur = svd.matrixU().leftCols(rank);
    consistent_ = (rhs - ur * (ur.transpose() * rhs)).norm() <= 1e-10;
    a_ = ur.transpose() * a;
    b_ = ur.transpose() * rhs;
  }

  std::optional<VectorXd> solve() {
    if (!consistent_) return std::nullopt;
    VectorXd x = VectorXd::Zero(n_);
    const double share = 1.0 / static_cast<double>(blocks_.size());
    for (const auto& b : blocks_) {
      if (b.basis.size() == 1) x(b.offset) = share;
      if (b.basis.size() == 4) x(b.offset) = x(b.offset + 1) = share;
    }
    VectorXd nu = VectorXd::Zero(a_.rows());
    for (double mu = 1.0; mu > 1e-13; mu /= 8.0) {
      const VectorXd x_prev = x, nu_prev = nu;
      if (centre(x, nu, mu)) continue;
      // Near the boundary the barrier Hessian gets badly conditioned; a
      // feasible iterate from an earlier small mu is already within
      // n * mu of the optimum.
      if (mu > 1e-6) return std::nullopt;
      x = x_prev;
      nu = nu_prev;
      break;
    }
    if ((a_ * x - b_).norm() > 1e-8) return std::nullopt;
    return x;
  }

  MatrixXcd block_matrix(const VectorXd& x, const Block& b) const {
    const auto k = b.support.cols();
    MatrixXcd m = MatrixXcd::Zero(k, k);
    for (std::size_t j = 0; j < b.basis.size(); ++j) m += x(b.offset + static_cast<Eigen::Index>(j)) * b.basis[j];
    return m;
  }

  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  bool positive(const VectorXd& x) const {
    for (const auto& b : blocks_) {
      if (b.basis.empty()) continue;
      Eigen::LLT<MatrixXcd> llt(block_matrix(x, b));
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  }

  void derivatives(const VectorXd& x, double mu, VectorXd& g, MatrixXd& h) const {
    g = -c_;
    h = MatrixXd::Zero(n_, n_);
    for (const auto& b : blocks_) {
      if (b.basis.empty()) continue;
      const MatrixXcd inv = block_matrix(x, b).inverse();
      std::vector<MatrixXcd> ih;
      for (const auto& hj : b.basis) ih.push_back(inv * hj);
      for (std::size_t j = 0; j < ih.size(); ++j) {
        const auto r = b.offset + static_cast<Eigen::Index>(j);
        g(r) -= mu * ih[j].trace().real();
        for (std::size_t l = 0; l < ih.size(); ++l) {
          h(r, b.offset + static_cast<Eigen::Index>(l)) = mu * (ih[j] * ih[l]).trace().real();
        }
      }
    }
  }

  // Newton iterations on the barrier problem for one value of mu.
  bool centre(VectorXd& x, VectorXd& nu, double mu) const {
    const Eigen::Index m = a_.rows();
    for (int it = 0; it < 100; ++it) {
      VectorXd g;
      MatrixXd h;
      derivatives(x, mu, g, h);
      VectorXd rd = g + a_.transpose() * nu;
      VectorXd rp = a_ * x - b_;
      const double r0 = std::sqrt(rd.squaredNorm() + rp.squaredNorm());
      if (r0 < 1e-13) return true;
      MatrixXd kkt = MatrixXd::Zero(n_ + m, n_ + m);
      kkt.topLeftCorner(n_, n_) = h;
      kkt.topRightCorner(n_, m) = a_.transpose();
      kkt.bottomLeftCorner(m, n_) = a_;
      VectorXd rhs(n_ + m);
      rhs << -rd, -rp;
      const VectorXd step = kkt.fullPivLu().solve(rhs);
      if (!step.allFinite()) return false;
      const VectorXd dx = step.head(n_);
      const VectorXd dnu = step.tail(m);
      double t = 1.0;
      while (t > 1e-12 && !positive(x + t * dx)) t *= 0.5;
      if (t <= 1e-12) return false;
      while (t > 1e-12) {
        const VectorXd xn = x + t * dx;
        const VectorXd nn = nu + t * dnu;
        VectorXd gn;
        MatrixXd hn;
        derivatives(xn, mu, gn, hn);
        const double r1 = std::sqrt((gn + a_.transpose() * nn).squaredNorm() + (a_ * xn - b_).squaredNorm());
        if (r1 <= (1 - 0.01 * t) * r0) break;
        t *= 0.5;
      }
      // Stalled at the rounding floor of an ill-conditioned KKT system:
      // close enough to the central path to keep going.
      if (t <= 1e-12) return r0 < 1e-6;
      x += t * dx;
      nu += t * dnu;
    }
    return (a_ * x - b_).norm() < 1e-9;
  }

  std::vector<Block> blocks_;
  Eigen::Index n_ = 0;
  VectorXd c_;
  MatrixXd a_;
  VectorXd b_;
  bool consistent_ = false;
};

}  // namespace

std::optional<PovmSolution> solve_povm(const PovmProblem& problem) {
  BarrierSolver solver(problem);
  auto x = solver.solve();
  if (!x) return std::nullopt;
  PovmSolution out;
  for (std::size_t z = 0; z < solver.blocks().size(); ++z) {
    const auto& b = solver.blocks()[z];
    Matrix2cd n = Matrix2cd::Zero();
    if (!b.basis.empty()) n = b.support * solver.block_matrix(*x, b) * b.support.adjoint();
    n = (0.5 * (n + n.adjoint())).eval();
    out.value += (n * problem.objectives[z]).trace().real();
    out.effects.push_back(n);
  }
  return out;
}

}  // namespace dmh
