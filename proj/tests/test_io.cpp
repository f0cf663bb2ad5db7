#include "doctest.h"

#include "dmh/io.hpp"

#include <sstream>

using namespace dmh;

TEST_CASE("box JSON") {
  const auto pr = pr_box();
  const auto back = box_from_json(box_to_json(pr));
  REQUIRE(std::holds_alternative<ExactBox>(back));
  CHECK(std::get<ExactBox>(back) == pr);

  const FloatBox u = uniform_box<double>();
  const auto fb = box_from_json(box_to_json(u));
  REQUIRE(std::holds_alternative<FloatBox>(fb));
  CHECK(std::get<FloatBox>(fb) == u);

  const auto dec = box_from_json(json::parse(R"({"exact": true, "entries": [0.1,0.4,0.25,0.25, 0.4,0.1,0.25,0.25, 0.25,0.25,0.1,0.4, 0.25,0.25,0.4,0.1]})"));
  CHECK(std::get<ExactBox>(dec)(0) == Rational(1, 10));

  CHECK_THROWS_AS(box_from_json(json::parse(R"({"entries": [1, 2]})")), ParseError);
  CHECK_THROWS_AS(box_from_json(json::parse(R"({"values": []})")), ParseError);
  CHECK_THROWS_AS(box_from_json(json::parse(R"({"exact": "yes", "entries": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]})")), ParseError);
  CHECK_THROWS_AS(box_from_json(json::parse(R"({"exact": true, "entries": ["1/0",0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]})")), ParseError);
  std::istringstream broken("{\"entries\": [");
  CHECK_THROWS_AS(read_json(broken), ParseError);
}

TEST_CASE("game JSON") {
  const auto g = dmh_prime_game();
  const auto j = game_to_json(g);
  CHECK(j.at("payoff").at(0).at(3) == "-inf");
  const auto back = game_from_json(j);
  CHECK(back.entries == g.entries);
  CHECK(back.prior == g.prior);
  CHECK_THROWS_AS(game_from_json(json::parse(R"({"payoff": [[0, 1]], "prior": ["1/2"]})")), ParseError);
}

TEST_CASE("sweep summary JSON") {
  SweepSummary s;
  s.kind = CertificateKind::Cabello;
  s.range_begin = 10;
  s.range_end = 20;
  s.analyzed = 10;
  s.positive = 2;
  s.certified = 1;
  s.counterexamples = {15};
  const auto back = sweep_summary_from_json(sweep_summary_to_json(s));
  CHECK(back.kind == s.kind);
  CHECK(back.range_begin == 10);
  CHECK(back.range_end == 20);
  CHECK(back.counterexamples == s.counterexamples);
  CHECK_THROWS_AS(sweep_summary_from_json(json::parse(R"({"kind": "other"})")), ParseError);
}

TEST_CASE("strategy dump uses [re, im] pairs") {
  QuantumStrategy qs;
  qs.state = TwoQubitPureState::phi_plus();
  for (auto& a : qs.alice) a = projective_angle(0.2);
  for (auto& b : qs.bob) b.effects = {Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd::Zero(), Eigen::Matrix2cd::Zero(), Eigen::Matrix2cd::Zero()};
  const auto j = strategy_to_json(qs);
  CHECK(j.at("state").size() == 4);
  CHECK(j.at("alice").at(0).at(0).at(0).at(0).size() == 2);
  CHECK(j.at("bob").at(1).size() == 4);
}
