#include "dmh/correlations.hpp"

#include <algorithm>

namespace dmh {

Relabelling Relabelling::from_id(int id) {
  if (id < 0 || id >= group_size) throw std::out_of_range("relabelling id out of range");
  Relabelling r;
  r.flip_x = (id & 1) != 0;
  r.flip_y = (id & 2) != 0;
  r.flip_a = static_cast<unsigned>((id >> 2) & 3);
  r.flip_b = static_cast<unsigned>((id >> 4) & 3);
  return r;
}

std::vector<Relabelling> Relabelling::all() {
  std::vector<Relabelling> out;
  out.reserve(group_size);
  for (int id = 0; id < group_size; ++id) out.push_back(from_id(id));
  return out;
}

int Relabelling::id() const {
  return static_cast<int>(flip_x) | static_cast<int>(flip_y) << 1 | static_cast<int>(flip_a & 3) << 2 |
         static_cast<int>(flip_b & 3) << 4;
}

namespace {
// Output flip table seen from the transformed input: new flip at input x' is
// old flip at x' ^ s.
unsigned conjugate_flips(unsigned flips, bool swap) {
  if (!swap) return flips & 3;
  return ((flips >> 1) & 1) | ((flips & 1) << 1);
}
}  // namespace

Relabelling Relabelling::inverse() const {
  // q(a,b|x,y) = p(a^fa(x), b^fb(y) | x^sx, y^sy). Solving for p:
  // p(a,b|x,y) = q(a^fa(x^sx), b^fb(y^sy) | x^sx, y^sy).
  Relabelling r;
  r.flip_x = flip_x;
  r.flip_y = flip_y;
  r.flip_a = conjugate_flips(flip_a, flip_x);
  r.flip_b = conjugate_flips(flip_b, flip_y);
  return r;
}

std::array<int, 16> Relabelling::source_indices() const {
  std::array<int, 16> src{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const int sa = a ^ static_cast<int>((flip_a >> x) & 1);
          const int sb = b ^ static_cast<int>((flip_b >> y) & 1);
          src[static_cast<std::size_t>(box_index(a, b, x, y))] =
              box_index(sa, sb, x ^ static_cast<int>(flip_x), y ^ static_cast<int>(flip_y));
        }
      }
    }
  }
  return src;
}

ExactBox pr_box() {
  ExactBox p = ExactBox::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if ((a ^ b) == (x & y)) p(box_index(a, b, x, y)) = Rational(1, 2);
  return p;
}

ExactBox deterministic_box(unsigned alice, unsigned bob) {
  ExactBox p = ExactBox::Zero();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int a = static_cast<int>((alice >> x) & 1);
      const int b = static_cast<int>((bob >> y) & 1);
      p(box_index(a, b, x, y)) = 1;
    }
  }
  return p;
}

std::vector<ExactBox> enumerate_local_vertices() {
  std::vector<ExactBox> out;
  out.reserve(16);
  for (unsigned alice = 0; alice < 4; ++alice)
    for (unsigned bob = 0; bob < 4; ++bob) out.push_back(deterministic_box(alice, bob));
  return out;
}

const NsEqualities& ns_equalities() {
  static const NsEqualities eq = [] {
    NsEqualities e;
    e.rows = RationalMatrix::Zero(12, 16);
    e.rhs = RationalVector::Zero(12);
    int r = 0;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y, ++r) {
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) e.rows(r, box_index(a, b, x, y)) = 1;
        e.rhs(r) = 1;
      }
    }
    for (int x = 0; x < 2; ++x) {
      for (int a = 0; a < 2; ++a, ++r) {
        for (int b = 0; b < 2; ++b) {
          e.rows(r, box_index(a, b, x, 0)) += 1;
          e.rows(r, box_index(a, b, x, 1)) -= 1;
        }
      }
    }
    for (int y = 0; y < 2; ++y) {
      for (int b = 0; b < 2; ++b, ++r) {
        for (int a = 0; a < 2; ++a) {
          e.rows(r, box_index(a, b, 0, y)) += 1;
          e.rows(r, box_index(a, b, 1, y)) -= 1;
        }
      }
    }
    return e;
  }();
  return eq;
}

LinearProgram ns_polytope_lp(const RationalVector& objective) {
  LinearProgram lp(16);
  lp.objective = objective;
  const auto& eq = ns_equalities();
  for (Eigen::Index r = 0; r < eq.rows.rows(); ++r) lp.add(eq.rows.row(r).transpose(), Relation::Equal, eq.rhs(r));
  return lp;
}

std::vector<ExactBox> enumerate_ns_vertices() {
  const auto& eq = ns_equalities();
  std::vector<ExactBox> out;
  for (const auto& v : enumerate_vertices(eq.rows, eq.rhs)) out.emplace_back(v);
  return out;
}

namespace {

std::vector<RationalVector> local_vertex_vectors() {
  std::vector<RationalVector> out;
  for (const auto& v : enumerate_local_vertices()) out.emplace_back(v);
  return out;
}

template <typename Scalar>
void fill_from_membership(NonlocalityCertificate<Scalar>& cert, const MembershipResult& m) {
  if (m.member) {
    cert.kind = NonlocalityCertificate<Scalar>::Kind::Local;
    cert.weights = m.weights;
  } else {
    cert.kind = NonlocalityCertificate<Scalar>::Kind::BellFunctional;
    cert.functional = m.functional;
    cert.bound = m.bound;
  }
}

Rational local_max(const RationalVector& functional) {
  Rational best = 0;
  bool first = true;
  for (const auto& v : enumerate_local_vertices()) {
    Rational val = functional.dot(RationalVector(v));
    if (first || val > best) best = val;
    first = false;
  }
  return best;
}

// Exactly no-signaling rational box carrying the float box's marginals and
// p(0,0|x,y), with each marginal averaged over the other party's input.
ExactBox snap_to_ns(const FloatBox& p) {
  auto e = [&p](int a, int b, int x, int y) { return exact_from_double(p(box_index(a, b, x, y))); };
  Rational alice[2], bob[2];
  for (int x = 0; x < 2; ++x) alice[x] = (e(0, 0, x, 0) + e(0, 1, x, 0) + e(0, 0, x, 1) + e(0, 1, x, 1)) / 2;
  for (int y = 0; y < 2; ++y) bob[y] = (e(0, 0, 0, y) + e(1, 0, 0, y) + e(0, 0, 1, y) + e(1, 0, 1, y)) / 2;
  ExactBox q;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const Rational j = e(0, 0, x, y);
      q(box_index(0, 0, x, y)) = j;
      q(box_index(0, 1, x, y)) = alice[x] - j;
      q(box_index(1, 0, x, y)) = bob[y] - j;
      q(box_index(1, 1, x, y)) = 1 - alice[x] - bob[y] + j;
    }
  }
  return q;
}

}  // namespace

ExactCertificate local_membership(const ExactBox& p) {
  detail::require_ns(p, 0.0);
  ExactCertificate cert;
  fill_from_membership(cert, membership(RationalVector(p), local_vertex_vectors()));
  return cert;
}

FloatCertificate local_membership(const FloatBox& p, double tol) {
  for (int i = 0; i < 16; ++i) {
    if (!std::isfinite(p(i))) throw std::domain_error("box entry is not finite");
  }
  detail::require_ns(p, tol);
  ExactBox q = snap_to_ns(p);
  // Smallest mixing weight towards the uniform box that makes every entry >= 0.
  Rational eps = 0;
  for (int i = 0; i < 16; ++i) {
    if (q(i) < 0) eps = std::max(eps, Rational(-q(i) / (Rational(1, 4) - q(i))));
  }
  if (eps > 0) q = (q * (1 - eps) + uniform_box<Rational>() * eps).eval();
  FloatCertificate cert;
  fill_from_membership(cert, membership(RationalVector(q), local_vertex_vectors()));
  return cert;
}

bool verify_certificate(const ExactBox& p, const ExactCertificate& cert) {
  using Kind = ExactCertificate::Kind;
  switch (cert.kind) {
    case Kind::HardyWitness: {
      auto h = hardy_check(apply_relabelling(p, cert.relabelling));
      return h && cert.h0 && *h == *cert.h0;
    }
    case Kind::CabelloWitness: {
      auto c = cabello_check(apply_relabelling(p, cert.relabelling));
      return c && cert.cabello && *c == *cert.cabello;
    }
    case Kind::BellFunctional:
      return cert.functional.size() == 16 && local_max(cert.functional) <= cert.bound &&
             cert.functional.dot(RationalVector(p)) > cert.bound;
    case Kind::Local: {
      if (cert.weights.size() != 16) return false;
      RationalVector sum = RationalVector::Zero(16);
      Rational total = 0;
      const auto verts = enumerate_local_vertices();
      for (int k = 0; k < 16; ++k) {
        if (cert.weights(k) < 0) return false;
        total += cert.weights(k);
        sum += RationalVector(verts[static_cast<std::size_t>(k)]) * cert.weights(k);
      }
      return total == 1 && sum == RationalVector(p);
    }
  }
  return false;
}

bool verify_certificate(const FloatBox& p, const FloatCertificate& cert, double tol) {
  using Kind = FloatCertificate::Kind;
  switch (cert.kind) {
    case Kind::HardyWitness: {
      auto h = hardy_check(apply_relabelling(p, cert.relabelling), tol);
      return h && cert.h0 && std::abs(*h - *cert.h0) <= tol;
    }
    case Kind::CabelloWitness: {
      auto c = cabello_check(apply_relabelling(p, cert.relabelling), tol);
      return c && cert.cabello && std::abs(c->first - cert.cabello->first) <= tol &&
             std::abs(c->second - cert.cabello->second) <= tol;
    }
    case Kind::BellFunctional: {
      if (cert.functional.size() != 16 || local_max(cert.functional) > cert.bound) return false;
      double value = 0;
      for (int i = 0; i < 16; ++i) value += to_double(cert.functional(i)) * p(i);
      return value - to_double(cert.bound) > tol;
    }
    case Kind::Local: {
      if (cert.weights.size() != 16) return false;
      const auto verts = enumerate_local_vertices();
      FloatBox sum = FloatBox::Zero();
      double total = 0;
      for (int k = 0; k < 16; ++k) {
        const double w = to_double(cert.weights(k));
        if (w < 0) return false;
        total += w;
        for (int i = 0; i < 16; ++i) sum(i) += w * to_double(verts[static_cast<std::size_t>(k)](i));
      }
      return std::abs(total - 1) <= tol && (sum - p).cwiseAbs().maxCoeff() <= tol;
    }
  }
  return false;
}

RationalVector chsh_functional() {
  RationalVector f = RationalVector::Zero(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if ((a ^ b) == (x & y)) f(box_index(a, b, x, y)) = 1;
  return f;
}

}  // namespace dmh
