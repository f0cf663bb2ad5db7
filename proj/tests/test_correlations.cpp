#include "doctest.h"

#include "dmh/correlations.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace dmh;

TEST_CASE("PR box and uniform box") {
  const ExactBox pr = pr_box();
  CHECK(validate_ns(pr));
  // p(0,0|0,0) = 1/2 and the three Hardy zeros hold by direct evaluation.
  const auto h = hardy_check(pr);
  REQUIRE(h);
  CHECK(*h == Rational(1, 2));
  CHECK(chsh_functional().dot(pr) == 4);

  const auto u = uniform_box<Rational>();
  CHECK(validate_ns(u));
  CHECK_FALSE(hardy_check(u));
  CHECK_FALSE(find_hardy(u));
  CHECK(chsh_functional().dot(u) == 2);
}

TEST_CASE("signaling boxes are reported with the violated condition") {
  ExactBox p = ExactBox::Zero();
  // a = y: Alice's marginal depends on Bob's input.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) p(box_index(y, 0, x, y)) = 1;
  const auto why = ns_violation(p);
  REQUIRE(why);
  CHECK(why->find("Alice marginal") != std::string::npos);
  CHECK_THROWS_AS(hardy_check(p), std::domain_error);
  CHECK_THROWS_AS(cabello_check(p), std::domain_error);

  ExactBox neg = uniform_box<Rational>();
  neg(0) = Rational(-1, 4);
  neg(4) = Rational(3, 4);
  CHECK(ns_violation(neg)->find("negative") != std::string::npos);

  FloatBox f = uniform_box<double>();
  f(0) += 1e-12;
  CHECK(validate_ns(f));
  f(0) += 1e-6;
  CHECK_FALSE(validate_ns(f));
}

TEST_CASE("no-signaling polytope has the 24 known vertices") {
  const auto verts = enumerate_ns_vertices();
  CHECK(verts.size() == 24);
  std::set<std::vector<std::string>> got, want;
  for (const auto& v : verts) {
    CHECK(validate_ns(v));
    std::vector<std::string> key;
    for (int i = 0; i < 16; ++i) key.push_back(to_string(v(i)));
    got.insert(key);
  }
  for (const auto& v : oracle::ns_vertices_doubled()) {
    std::vector<std::string> key;
    for (int i = 0; i < 16; ++i) key.push_back(to_string(Rational(v[static_cast<std::size_t>(i)], 2)));
    want.insert(key);
  }
  CHECK(got == want);
}

TEST_CASE("LP over the no-signaling polytope matches the vertex scan") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    RationalVector f(16);
    for (int i = 0; i < 16; ++i) f(i) = coef(rng);
    const auto r = solve_lp(ns_polytope_lp(f));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == *oracle::face_max(f, 0));
  }
  CHECK(solve_lp(ns_polytope_lp(chsh_functional())).value == 4);
}

TEST_CASE("relabelling group") {
  const auto all = Relabelling::all();
  CHECK(all.size() == 64);
  std::set<std::array<int, 16>> perms;
  for (const auto& r : all) {
    CHECK(Relabelling::from_id(r.id()) == r);
    CHECK(r.source_indices() == oracle::relabel_sources(r.id()));
    perms.insert(r.source_indices());
  }
  CHECK(perms.size() == 64);

  std::mt19937_64 rng(3);
  for (const auto& r : all) {
    const auto p = oracle::random_face_box(0, rng);
    REQUIRE(p);
    const auto q = apply_relabelling(*p, r);
    CHECK(validate_ns(q));
    CHECK(apply_relabelling(q, r.inverse()) == *p);
  }
}

TEST_CASE("relabelled Hardy and Cabello boxes are found") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactBox h = oracle::random_hardy_box(rng);
    const auto r = Relabelling::from_id(static_cast<int>(rng() % 64));
    const ExactBox q = apply_relabelling(h, r.inverse());
    const auto cert = find_hardy(q);
    REQUIRE(cert);
    CHECK(hardy_check(apply_relabelling(q, cert->relabelling)));
    CHECK(verify_certificate(q, *cert));

    const ExactBox c = oracle::random_cabello_box(rng);
    const auto ccert = find_cabello(apply_relabelling(c, r.inverse()));
    REQUIRE(ccert);
    CHECK(verify_certificate(apply_relabelling(c, r.inverse()), *ccert));
  }
}

TEST_CASE("local polytope membership") {
  for (const auto& v : enumerate_local_vertices()) {
    const auto cert = local_membership(v);
    CHECK(cert.kind == ExactCertificate::Kind::Local);
    CHECK(verify_certificate(v, cert));
  }
  CHECK(enumerate_local_vertices().size() == 16);

  const ExactBox pr = pr_box();
  const auto cert = local_membership(pr);
  REQUIRE(cert.kind == ExactCertificate::Kind::BellFunctional);
  CHECK(cert.bound == oracle::local_bound(cert.functional));
  CHECK(cert.functional.dot(pr) > cert.bound);
  CHECK(verify_certificate(pr, cert));

  // A certificate with a wrong bound must not verify.
  auto forged = cert;
  forged.bound = cert.functional.dot(pr);
  CHECK_FALSE(verify_certificate(pr, forged));

  // Mixtures of local boxes with the uniform box stay local.
  const ExactBox mix = (deterministic_box(1, 2) + uniform_box<Rational>()) / Rational(2);
  CHECK(local_membership(mix).kind == ExactCertificate::Kind::Local);

  // PR noise threshold: v PR + (1-v) uniform is local iff v <= 1/2.
  const ExactBox half = pr * Rational(1, 2) + uniform_box<Rational>() * Rational(1, 2);
  CHECK(local_membership(half).kind == ExactCertificate::Kind::Local);
  const ExactBox above = pr * Rational(51, 100) + uniform_box<Rational>() * Rational(49, 100);
  CHECK(local_membership(above).kind == ExactCertificate::Kind::BellFunctional);
}

TEST_CASE("every Hardy box is nonlocal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ExactBox h = oracle::random_hardy_box(rng);
    const auto cert = local_membership(h);
    REQUIRE(cert.kind == ExactCertificate::Kind::BellFunctional);
    CHECK(cert.functional.dot(h) > oracle::local_bound(cert.functional));
  }
}

TEST_CASE("float boxes") {
  const FloatBox pr = pr_box().unaryExpr([](const Rational& r) { return to_double(r); });
  const auto cert = local_membership(pr);
  CHECK(cert.kind == FloatCertificate::Kind::BellFunctional);
  CHECK(verify_certificate(pr, cert));
  const FloatBox u = uniform_box<double>();
  const auto lc = local_membership(u);
  CHECK(lc.kind == FloatCertificate::Kind::Local);
  CHECK(verify_certificate(u, lc));

  FloatBox noisy = pr;
  noisy(0) += 1e-11;
  noisy(4) -= 1e-11;
  CHECK_THROWS_AS(local_membership(noisy, 1e-13), std::domain_error);
  CHECK(local_membership(noisy).kind == FloatCertificate::Kind::BellFunctional);
}
