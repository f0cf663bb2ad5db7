#pragma once

// Best qubit POVM for a linear objective, with each effect confined to a
// prescribed subspace:
//
//   maximize  sum_z Re Tr[N_z V_z]
//   s.t.      N_z = U_z M_z U_z^dagger,  M_z >= 0,  sum_z N_z = I
//
// U_z is a 2 x k_z isometry (k_z in {0, 1, 2}); k_z = 0 forces N_z = 0.
// Solved with a log-barrier infeasible-start Newton method.

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace dmh {

struct PovmProblem {
  std::vector<Eigen::MatrixXcd> supports;      // 2 x k_z, orthonormal columns
  std::vector<Eigen::Matrix2cd> objectives;    // V_z, Hermitian
};

struct PovmSolution {
  std::vector<Eigen::Matrix2cd> effects;
  double value = 0;
};

/// nullopt when no POVM with the given supports exists.
std::optional<PovmSolution> solve_povm(const PovmProblem& problem);

}  // namespace dmh
