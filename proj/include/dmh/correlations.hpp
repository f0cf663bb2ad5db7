#pragma once

// Two-party, two-input, two-output correlations ("boxes").
//
// Entry i of a box holds p(a,b|x,y) with i = 8a + 4b + 2x + y. Boxes built
// combinatorially use Rational and every test on them is exact; boxes coming
// out of Born-rule computations use double and compare against a tolerance.

#include "dmh/lp.hpp"
#include "dmh/rational.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmh {

template <typename Scalar>
using Box = Eigen::Matrix<Scalar, 16, 1>;
using ExactBox = Box<Rational>;
using FloatBox = Box<double>;

constexpr int box_index(int a, int b, int x, int y) { return 8 * a + 4 * b + 2 * x + y; }

namespace detail {

template <typename Scalar>
bool near_zero(const Scalar& v, double tol) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return v == 0;
  } else {
    return std::abs(v) <= tol;
  }
}

template <typename Scalar>
bool strictly_positive(const Scalar& v, double tol) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return v > 0;
  } else {
    return v > tol;
  }
}

}  // namespace detail

/// Description of the first violated NS condition, or nullopt for a valid box.
template <typename Scalar>
std::optional<std::string> ns_violation(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  for (int i = 0; i < 16; ++i) {
    if (!detail::near_zero<Scalar>(p(i), tol) && p(i) < Scalar(0)) return "negative entry at index " + std::to_string(i);
  }
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Scalar total = p(box_index(0, 0, x, y)) + p(box_index(0, 1, x, y)) + p(box_index(1, 0, x, y)) + p(box_index(1, 1, x, y));
      if (!detail::near_zero<Scalar>(Scalar(total - Scalar(1)), tol)) {
        return "normalization fails for x=" + std::to_string(x) + ", y=" + std::to_string(y);
      }
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < 2; ++a) {
      Scalar y0 = p(box_index(a, 0, x, 0)) + p(box_index(a, 1, x, 0));
      Scalar y1 = p(box_index(a, 0, x, 1)) + p(box_index(a, 1, x, 1));
      if (!detail::near_zero<Scalar>(Scalar(y0 - y1), tol)) {
        return "Alice marginal p(a=" + std::to_string(a) + "|x=" + std::to_string(x) + ") depends on y";
      }
    }
  }
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < 2; ++b) {
      Scalar x0 = p(box_index(0, b, 0, y)) + p(box_index(1, b, 0, y));
      Scalar x1 = p(box_index(0, b, 1, y)) + p(box_index(1, b, 1, y));
      if (!detail::near_zero<Scalar>(Scalar(x0 - x1), tol)) {
        return "Bob marginal p(b=" + std::to_string(b) + "|y=" + std::to_string(y) + ") depends on x";
      }
    }
  }
  return std::nullopt;
}

template <typename Scalar>
bool validate_ns(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  return !ns_violation(p, tol).has_value();
}

namespace detail {
template <typename Scalar>
void require_ns(const Box<Scalar>& p, double tol) {
  if (auto why = ns_violation(p, tol)) throw std::domain_error("box is not no-signaling: " + *why);
}
}  // namespace detail

/// h0 when p(0,0|0,0) > 0 and p(0,1|0,1) = p(1,0|1,0) = p(0,0|1,1) = 0.
/// Throws std::domain_error for a signaling box.
template <typename Scalar>
std::optional<Scalar> hardy_check(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  detail::require_ns(p, tol);
  const bool zeros = detail::near_zero<Scalar>(p(5), tol) && detail::near_zero<Scalar>(p(10), tol) &&
                     detail::near_zero<Scalar>(p(3), tol);
  if (zeros && detail::strictly_positive<Scalar>(p(0), tol)) return p(0);
  return std::nullopt;
}

/// (c0, c3) when p(0,0|0,0) > p(0,0|1,1) and p(0,1|0,1) = p(1,0|1,0) = 0.
template <typename Scalar>
std::optional<std::pair<Scalar, Scalar>> cabello_check(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  detail::require_ns(p, tol);
  const bool zeros = detail::near_zero<Scalar>(p(5), tol) && detail::near_zero<Scalar>(p(10), tol);
  if (zeros && detail::strictly_positive<Scalar>(Scalar(p(0) - p(3)), tol)) return std::make_pair(p(0), p(3));
  return std::nullopt;
}

/// Local reversible relabelling: input flips for each party and output flips
/// conditioned on the party's own input. The transformed box is
///   q(a,b|x,y) = p(a ^ flip_a(x), b ^ flip_b(y) | x ^ flip_x, y ^ flip_y)
/// where bit x of flip_a says whether Alice's output is flipped for input x.
struct Relabelling {
  bool flip_x = false;
  bool flip_y = false;
  unsigned flip_a = 0;  // 2 bits
  unsigned flip_b = 0;  // 2 bits

  static constexpr int group_size = 64;
  static Relabelling identity() { return {}; }
  /// id = flip_x | flip_y << 1 | flip_a << 2 | flip_b << 4; id 0 is the identity.
  static Relabelling from_id(int id);
  static std::vector<Relabelling> all();

  int id() const;
  Relabelling inverse() const;
  /// q(i) = p(source(i)) for every box index i.
  std::array<int, 16> source_indices() const;

  bool operator==(const Relabelling&) const = default;
};

template <typename Scalar>
Box<Scalar> apply_relabelling(const Box<Scalar>& p, const Relabelling& r) {
  const auto src = r.source_indices();
  Box<Scalar> q;
  for (int i = 0; i < 16; ++i) q(i) = p(src[static_cast<std::size_t>(i)]);
  return q;
}

template <typename Scalar>
Box<Scalar> uniform_box() {
  return Box<Scalar>::Constant(scalar_from<Scalar>(Rational(1, 4)));
}

/// p = 1/2 iff a xor b = x*y.
ExactBox pr_box();

/// Deterministic product box with a = alice(x), b = bob(y); alice and bob are
/// 2-bit truth tables (bit x / bit y).
ExactBox deterministic_box(unsigned alice, unsigned bob);

/// The 16 deterministic product boxes, Alice's table major.
std::vector<ExactBox> enumerate_local_vertices();

/// Vertices of the full no-signaling polytope found by exhaustive basic-solution
/// enumeration of {p >= 0, normalization, no-signaling}.
std::vector<ExactBox> enumerate_ns_vertices();

/// Equality rows (normalization and no-signaling) shared by every LP over the
/// no-signaling polytope: rows . p = rhs.
struct NsEqualities {
  RationalMatrix rows;
  RationalVector rhs;
};
const NsEqualities& ns_equalities();

/// LP over the no-signaling polytope with p >= 0 and the given objective.
LinearProgram ns_polytope_lp(const RationalVector& objective);

template <typename Scalar>
struct NonlocalityCertificate {
  enum class Kind { HardyWitness, CabelloWitness, BellFunctional, Local };
  Kind kind = Kind::Local;
  Relabelling relabelling;
  std::optional<Scalar> h0;
  std::optional<std::pair<Scalar, Scalar>> cabello;
  RationalVector functional;  // BellFunctional
  Rational bound;             // max of functional over local vertices
  RationalVector weights;     // Local, over enumerate_local_vertices()
};

using ExactCertificate = NonlocalityCertificate<Rational>;
using FloatCertificate = NonlocalityCertificate<double>;

/// Local with convex weights over the 16 deterministic boxes, or a Bell
/// functional that separates the box from the local polytope.
ExactCertificate local_membership(const ExactBox& p);
/// Float boxes are first snapped onto an exactly no-signaling rational box and
/// pulled towards the uniform box by the smallest amount that clears rounding
/// negativity; a nonlocal verdict for the snapped box implies one for p.
FloatCertificate local_membership(const FloatBox& p, double tol = 1e-9);

/// First relabelling (in id order) under which hardy_check succeeds.
template <typename Scalar>
std::optional<NonlocalityCertificate<Scalar>> find_hardy(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  for (const auto& r : Relabelling::all()) {
    if (auto h = hardy_check(apply_relabelling(p, r), tol)) {
      NonlocalityCertificate<Scalar> cert;
      cert.kind = NonlocalityCertificate<Scalar>::Kind::HardyWitness;
      cert.relabelling = r;
      cert.h0 = *h;
      return cert;
    }
  }
  return std::nullopt;
}

template <typename Scalar>
std::optional<NonlocalityCertificate<Scalar>> find_cabello(const Box<Scalar>& p, double tol = default_tolerance<Scalar>()) {
  for (const auto& r : Relabelling::all()) {
    if (auto c = cabello_check(apply_relabelling(p, r), tol)) {
      NonlocalityCertificate<Scalar> cert;
      cert.kind = NonlocalityCertificate<Scalar>::Kind::CabelloWitness;
      cert.relabelling = r;
      cert.cabello = *c;
      return cert;
    }
  }
  return std::nullopt;
}

/// Re-checks a certificate by direct substitution into the box.
bool verify_certificate(const ExactBox& p, const ExactCertificate& cert);
bool verify_certificate(const FloatBox& p, const FloatCertificate& cert, double tol = 1e-9);

/// CHSH functional in probability form: sum over (x,y) of P(a xor b = x*y).
/// Local boxes reach at most 3, the PR box reaches 4.
RationalVector chsh_functional();

}  // namespace dmh
