#include "dmh/io.hpp"

#include <cmath>
#include <limits>

namespace dmh {

namespace {

Rational exact_entry(const json& e) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return Rational(e.get<long long>());
  if (e.is_number_unsigned()) return Rational(e.get<unsigned long long>());
  if (e.is_number_float()) return rational_from_decimal(e.get<double>());
  throw ParseError("box entry must be a number or an \"n/d\" string");
}

double float_entry(const json& e) {
  if (e.is_number()) return e.get<double>();
  if (e.is_string()) return to_double(parse_rational(e.get<std::string>()));
  throw ParseError("box entry must be a number or an \"n/d\" string");
}

template <typename F>
auto wrap_parse(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

AnyBox box_from_json(const json& j) {
  return wrap_parse([&]() -> AnyBox {
    if (!j.is_object() || !j.contains("entries")) throw ParseError("box must be an object with \"entries\"");
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != 16) throw ParseError("box needs exactly 16 entries");
    bool exact = false;
    if (j.contains("exact")) {
      if (!j.at("exact").is_boolean()) throw ParseError("\"exact\" must be a boolean");
      exact = j.at("exact").get<bool>();
    }
    if (exact) {
      ExactBox p;
      for (int i = 0; i < 16; ++i) p(i) = exact_entry(entries.at(static_cast<std::size_t>(i)));
      return p;
    }
    FloatBox p;
    for (int i = 0; i < 16; ++i) {
      p(i) = float_entry(entries.at(static_cast<std::size_t>(i)));
      if (!std::isfinite(p(i))) throw ParseError("box entry is not finite");
    }
    return p;
  });
}

json box_to_json(const ExactBox& p) {
  json entries = json::array();
  for (int i = 0; i < 16; ++i) entries.push_back(to_string(p(i)));
  return {{"entries", entries}, {"exact", true}};
}

json box_to_json(const FloatBox& p) {
  json entries = json::array();
  for (int i = 0; i < 16; ++i) entries.push_back(p(i));
  return {{"entries", entries}, {"exact", false}};
}

GameMatrix game_from_json(const json& j) {
  return wrap_parse([&] {
    if (!j.is_object() || !j.contains("payoff") || !j.contains("prior")) {
      throw ParseError("game must be an object with \"payoff\" and \"prior\"");
    }
    GameMatrix g;
    for (const auto& row : j.at("payoff")) {
      if (!row.is_array()) throw ParseError("payoff rows must be arrays");
      std::vector<ExactPayoff> r;
      for (const auto& e : row) {
        if (e.is_string() && e.get<std::string>() == "-inf") {
          r.push_back(ExactPayoff::neg_infinity());
        } else {
          r.push_back(ExactPayoff::finite(exact_entry(e)));
        }
      }
      g.entries.push_back(std::move(r));
    }
    for (const auto& e : j.at("prior")) g.prior.push_back(exact_entry(e));
    g.validate();
    return g;
  });
}

json game_to_json(const GameMatrix& g) {
  json payoff = json::array();
  for (const auto& row : g.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    payoff.push_back(r);
  }
  json prior = json::array();
  for (const auto& p : g.prior) prior.push_back(to_string(p));
  return {{"payoff", payoff}, {"prior", prior}};
}

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  return wrap_parse([&] { return exact_entry(j); });
}

json relabelling_to_json(const Relabelling& r) {
  return {{"id", r.id()},
          {"flip_x", r.flip_x},
          {"flip_y", r.flip_y},
          {"flip_a", {static_cast<int>(r.flip_a & 1), static_cast<int>((r.flip_a >> 1) & 1)}},
          {"flip_b", {static_cast<int>(r.flip_b & 1), static_cast<int>((r.flip_b >> 1) & 1)}}};
}

namespace {

template <typename Scalar>
json scalar_json(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_string(v);
  } else {
    return v;
  }
}

json vector_json(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

template <typename Scalar>
json certificate_json(const NonlocalityCertificate<Scalar>& c) {
  using Kind = typename NonlocalityCertificate<Scalar>::Kind;
  json j;
  switch (c.kind) {
    case Kind::HardyWitness:
      j["kind"] = "hardy";
      j["relabelling"] = relabelling_to_json(c.relabelling);
      j["h0"] = scalar_json(*c.h0);
      break;
    case Kind::CabelloWitness:
      j["kind"] = "cabello";
      j["relabelling"] = relabelling_to_json(c.relabelling);
      j["c0"] = scalar_json(c.cabello->first);
      j["c3"] = scalar_json(c.cabello->second);
      break;
    case Kind::BellFunctional:
      j["kind"] = "bell_functional";
      j["functional"] = vector_json(c.functional);
      j["local_bound"] = to_string(c.bound);
      break;
    case Kind::Local:
      j["kind"] = "local";
      j["weights"] = vector_json(c.weights);
      break;
  }
  return j;
}

}  // namespace

json certificate_to_json(const ExactCertificate& c) { return certificate_json(c); }
json certificate_to_json(const FloatCertificate& c) { return certificate_json(c); }

json vertex_report_to_json(const VertexReport& r) {
  json safe = json::array();
  for (const auto& ch : r.safe_channels) {
    json row = json::array();
    for (int z : ch) row.push_back(z + 1);
    safe.push_back(row);
  }
  return {{"vertices", r.total}, {"safe_count", r.safe_channels.size()}, {"safe_guesses", safe}, {"max_payoff", to_string(r.max_payoff)}};
}

json sweep_record_to_json(const SweepRecord& r) {
  const Wiring w = Wiring::from_id(r.id);
  json zeros = json::array();
  for (int i = 0; i < 16; ++i)
    if ((r.forced_zeros >> i) & 1) zeros.push_back(i);
  json wiring = {{"X", w.x},
                 {"C", w.c},
                 {"Y", w.y},
                 {"Z", {{w.z[0][0] + 1, w.z[0][1] + 1}, {w.z[1][0] + 1, w.z[1][1] + 1}}}};
  return {{"id", r.id},
          {"wiring", wiring},
          {"forced_zeros", zeros},
          {"max_payoff", to_string(r.max_payoff)},
          {"relabelling", r.relabelling ? relabelling_to_json(*r.relabelling) : json(nullptr)},
          {"certified", r.certified},
          {"unmatched", r.unmatched}};
}

json sweep_summary_to_json(const SweepSummary& s) {
  return {{"kind", s.kind == CertificateKind::Hardy ? "hardy" : "cabello"},
          {"range", {s.range_begin, s.range_end}},
          {"analyzed", s.analyzed},
          {"bomb_unavoidable", s.bomb_unavoidable},
          {"non_positive", s.non_positive},
          {"positive", s.positive},
          {"certified", s.certified},
          {"counterexamples", s.counterexamples},
          {"lp_solves", s.lp_solves}};
}

SweepSummary sweep_summary_from_json(const json& j) {
  return wrap_parse([&] {
    SweepSummary s;
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "hardy" && kind != "cabello") throw ParseError("unknown sweep kind " + kind);
    s.kind = kind == "hardy" ? CertificateKind::Hardy : CertificateKind::Cabello;
    s.range_begin = j.at("range").at(0).get<std::uint32_t>();
    s.range_end = j.at("range").at(1).get<std::uint32_t>();
    s.analyzed = j.at("analyzed").get<std::uint64_t>();
    s.bomb_unavoidable = j.at("bomb_unavoidable").get<std::uint64_t>();
    s.non_positive = j.at("non_positive").get<std::uint64_t>();
    s.positive = j.at("positive").get<std::uint64_t>();
    s.certified = j.at("certified").get<std::uint64_t>();
    s.counterexamples = j.at("counterexamples").get<std::vector<std::uint32_t>>();
    s.lp_solves = j.value("lp_solves", std::uint64_t{0});
    return s;
  });
}

json operator_to_json(const QubitOperator& op) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int k = 0; k < 2; ++k) row.push_back({op(i, k).real(), op(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

json measurement_to_json(const QubitMeasurement& m) {
  json out = json::array();
  for (const auto& e : m.effects) out.push_back(operator_to_json(e));
  return out;
}

json strategy_to_json(const QuantumStrategy& qs) {
  json amps = json::array();
  for (int i = 0; i < 4; ++i) amps.push_back({qs.state.amplitudes(i).real(), qs.state.amplitudes(i).imag()});
  json alice = json::array(), bob = json::array();
  for (const auto& m : qs.alice) alice.push_back(measurement_to_json(m));
  for (const auto& m : qs.bob) bob.push_back(measurement_to_json(m));
  return {{"state", amps}, {"alice", alice}, {"bob", bob}};
}

json strategy_matrix_to_json(const StrategyMatrix<double>& s) {
  json rows = json::array();
  for (Eigen::Index m = 0; m < s.rows(); ++m) {
    json row = json::array();
    for (Eigen::Index z = 0; z < s.cols(); ++z) row.push_back(s(m, z));
    rows.push_back(row);
  }
  return rows;
}

json hardy_result_to_json(const HardyResult& r) {
  json alice = json::array(), bob = json::array();
  for (const auto& m : r.alice) alice.push_back(measurement_to_json(m));
  for (const auto& m : r.bob) bob.push_back(measurement_to_json(m));
  return {{"theta", r.theta},
          {"h0", r.h0},
          {"parameter", r.parameter},
          {"max_zero_residual", r.max_zero_residual},
          {"converged", r.converged},
          {"box", box_to_json(r.box)},
          {"alice", alice},
          {"bob", bob}};
}

json seesaw_result_to_json(const SeesawResult& r) {
  json j = {{"seed", r.seed},
            {"restarts", r.restart_payoffs.size()},
            {"rejected", r.rejected},
            {"found", r.found}};
  if (r.found) {
    j["best_payoff"] = r.best_payoff;
    j["best_restart"] = r.best_restart;
    j["strategy_matrix"] = strategy_matrix_to_json(r.matrix);
    j["strategy"] = strategy_to_json(r.strategy);
  }
  return j;
}

json theorem4_report_to_json(const Theorem4Report& r) {
  json res = json::array();
  for (const auto& x : r.residuals) res.push_back({{"message", x.message}, {"guess", x.guess}, {"bit", x.bit}, {"value", x.value}});
  return {{"residuals", res},
          {"max_residual", r.max_residual},
          {"margin", r.margin},
          {"constraints_hold", r.constraints_hold},
          {"inequality_holds", r.inequality_holds}};
}

json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace dmh
