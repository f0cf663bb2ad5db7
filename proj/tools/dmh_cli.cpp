// Command-line front end: classical bounds, the wiring sweep, quantum
// experiments and box certification. Every command prints a JSON report.

#include "dmh/classical.hpp"
#include "dmh/correlations.hpp"
#include "dmh/games.hpp"
#include "dmh/io.hpp"
#include "dmh/quantum.hpp"
#include "dmh/wiring.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using dmh::json;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kInvalidInput = 1, kCounterexample = 2 };

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string game = "dmh";
  std::string game_file;
  int bits = 1;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  std::optional<double> theta;
  int restarts = 200;
  int grid_restarts = 20;
  int trials = 10000;
  std::string range;
  std::string out;
  std::string box_out;
  std::string records;
  std::string box_file;
  std::vector<std::string> shard_files;
  double tolerance = 1e-9;
};

dmh::GameMatrix load_game(const Config& c) {
  if (!c.game_file.empty()) {
    std::ifstream in(c.game_file);
    if (!in) throw InvalidInput("cannot open " + c.game_file);
    try {
      return dmh::game_from_json(dmh::read_json(in));
    } catch (const dmh::ParseError& e) {
      throw InvalidInput(std::string("game file: ") + e.what());
    }
  }
  if (c.game == "dmh") return dmh::dmh_game();
  if (c.game == "dmh-prime") return dmh::dmh_prime_game();
  throw InvalidInput("unknown game '" + c.game + "' (expected dmh or dmh-prime)");
}

json config_json(const Config& c, const std::string& command) {
  json j = {{"game", c.game_file.empty() ? c.game : c.game_file}, {"tolerance", c.tolerance}, {"workers", c.workers}};
  if (command == "verify-classical") j["bits"] = c.bits;
  if (command == "sweep-wirings") j["range"] = c.range.empty() ? "full" : c.range;
  if (command == "quantum") {
    j["seed"] = c.seed;
    j["restarts"] = c.restarts;
    j["grid_restarts"] = c.grid_restarts;
    j["trials"] = c.trials;
    if (c.theta) j["theta"] = *c.theta;
  }
  if (command == "certify-box") j["box_file"] = c.box_file;
  return j;
}

void write_output(const Config& c, const json& report) {
  if (c.out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw std::runtime_error("cannot write " + c.out);
  out << report.dump(2) << "\n";
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
  if (text.empty()) return {0, dmh::Wiring::count};
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InvalidInput("range must look like LO..HI");
  try {
    const auto lo = std::stoull(text.substr(0, dots), nullptr, 0);
    const auto hi = std::stoull(text.substr(dots + 2), nullptr, 0);
    if (lo > hi || hi > dmh::Wiring::count) throw InvalidInput("range must satisfy LO <= HI <= 4194304");
    return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
  } catch (const std::logic_error&) {
    throw InvalidInput("range bounds must be integers");
  }
}

// ---------------------------------------------------------------------------

int verify_classical(const Config& c, json& results) {
  if (c.bits < 1) throw InvalidInput("--bits must be >= 1");
  const auto game = load_game(c);
  dmh::VertexReport rep;
  try {
    rep = dmh::verify_classical_bound(game, c.bits);
  } catch (const dmh::ResourceLimitError& e) {
    throw InvalidInput(e.what());
  }
  results = dmh::vertex_report_to_json(rep);
  results["formula_count"] = dmh::vertex_count(c.bits, game.messages(), game.guesses()).str();
  const bool bounded = !(rep.max_payoff.is_finite() && rep.max_payoff.value() > 0);
  results["payoff_bounded_by_zero"] = bounded;
  // Only the one-bit bound is claimed; more bits are allowed to win.
  return (c.bits == 1 && !bounded) ? kCounterexample : kOk;
}

int sweep_wirings(const Config& c, json& results) {
  const auto game = load_game(c);
  if (c.workers < 1) throw InvalidInput("--workers must be >= 1");
  const auto [lo, hi] = parse_range(c.range);
  dmh::SweepOptions opt;
  opt.begin = lo;
  opt.end = hi;
  opt.workers = c.workers;
  opt.kind = (c.game == "dmh-prime" && c.game_file.empty()) ? dmh::CertificateKind::Cabello : dmh::CertificateKind::Hardy;
  const auto summary = dmh::verify_theorem3(game, opt);
  results = dmh::sweep_summary_to_json(summary);
  json positive = json::array();
  std::size_t unmatched = 0;
  for (const auto& r : summary.records) {
    unmatched += r.unmatched ? 1 : 0;
    positive.push_back(dmh::sweep_record_to_json(r));
  }
  results["unmatched"] = unmatched;
  results["positive_wirings"] = positive;
  if (!c.records.empty()) {
    // One line per positive wiring, summary last.
    std::ofstream out(c.records);
    if (!out) throw std::runtime_error("cannot write " + c.records);
    for (const auto& r : summary.records) out << dmh::sweep_record_to_json(r).dump() << "\n";
    out << json{{"summary", dmh::sweep_summary_to_json(summary)}}.dump() << "\n";
  }
  return summary.counterexamples.empty() ? kOk : kCounterexample;
}

int merge_sweeps(const Config& c, json& results) {
  if (c.shard_files.empty()) throw InvalidInput("no shard files given");
  std::vector<dmh::SweepSummary> shards;
  for (const auto& path : c.shard_files) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      // A full report parses whole; a records file is read from its last line.
      json j = json::parse(text, nullptr, false);
      if (j.is_discarded()) {
        const auto end = text.find_last_not_of("\n");
        const auto begin = text.rfind('\n', end);
        j = json::parse(text.substr(begin == std::string::npos ? 0 : begin + 1));
      }
      if (j.contains("summary")) j = j.at("summary");
      if (j.contains("results")) j = j.at("results");
      shards.push_back(dmh::sweep_summary_from_json(j));
    } catch (const std::exception& e) {
      throw InvalidInput(path + ": " + e.what());
    }
  }
  dmh::SweepSummary merged;
  try {
    merged = dmh::merge_summaries(std::move(shards));
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  results = dmh::sweep_summary_to_json(merged);
  return merged.counterexamples.empty() ? kOk : kCounterexample;
}

int quantum(const Config& c, json& results) {
  if (c.restarts < 1 || c.grid_restarts < 1) throw InvalidInput("restart counts must be >= 1");
  if (c.trials < 0) throw InvalidInput("--trials must be >= 0");
  if (!(c.tolerance > 0)) throw InvalidInput("--tolerance must be positive");
  int status = kOk;

  const auto best = dmh::maximize_hardy();
  results["hardy_maximum"] = {{"theta", best.theta}, {"h0", best.h0}, {"max_zero_residual", best.max_zero_residual}};
  if (!c.box_out.empty()) {
    std::ofstream out(c.box_out);
    if (!out) throw std::runtime_error("cannot write " + c.box_out);
    out << dmh::box_to_json(best.box).dump(2) << "\n";
  }

  std::vector<double> thetas;
  if (c.theta) {
    if (!(*c.theta >= 0 && *c.theta <= std::numbers::pi / 4 + 1e-15)) throw InvalidInput("--theta must lie in [0, pi/4]");
    thetas.push_back(*c.theta);
  } else {
    for (int i = 0; i <= 16; ++i) thetas.push_back(std::numbers::pi / 4 * i / 16);
  }
  dmh::SeesawOptions opt;
  opt.seed = c.seed;
  opt.workers = c.workers;
  opt.bomb_tolerance = c.tolerance;
  opt.restarts = c.grid_restarts;
  json table = json::array();
  const auto game = dmh::dmh_game();
  for (double th : thetas) {
    const auto h = dmh::optimize_hardy(th);
    const auto s = dmh::seesaw(game, dmh::TwoQubitPureState::schmidt(th), opt);
    json row = {{"theta", th}, {"h0", h.h0}, {"h0_over_4", h.h0 / 4}, {"seesaw_rejected", s.rejected}};
    if (s.found) {
      row["seesaw_payoff"] = s.best_payoff;
      row["seesaw_minus_h0_over_4"] = s.best_payoff - h.h0 / 4;
    }
    table.push_back(row);
  }
  results["theta_table"] = table;

  opt.restarts = c.restarts;
  const auto phi = dmh::seesaw(game, dmh::TwoQubitPureState::phi_plus(), opt);
  json phi_json = {{"restarts", c.restarts}, {"rejected", phi.rejected}, {"found", phi.found}};
  if (phi.found) phi_json["best_payoff"] = phi.best_payoff;
  phi_json["bounded_by_1e-6"] = !phi.found || phi.best_payoff <= 1e-6;
  phi_json["note"] = "numerical search, not a proof";
  if (phi.found && phi.best_payoff > 1e-6) status = kCounterexample;
  results["phi_plus_seesaw"] = phi_json;

  std::mt19937_64 rng(c.seed);
  int feasible = 0;
  long attempts = 0;
  double max_margin = -std::numeric_limits<double>::infinity(), max_residual = 0;
  while (feasible < c.trials) {
    ++attempts;
    auto qs = dmh::random_bomb_free_strategy(rng);
    if (!qs) continue;
    const auto rep = dmh::check_theorem4_constraints(*qs, c.tolerance);
    if (!rep.constraints_hold) continue;
    ++feasible;
    max_margin = std::max(max_margin, rep.margin);
    max_residual = std::max(max_residual, rep.max_residual);
  }
  json t4 = {{"feasible_strategies", feasible}, {"attempts", attempts}, {"max_residual", max_residual}};
  if (feasible > 0) t4["max_margin"] = max_margin;
  t4["margin_bounded_by_1e-6"] = feasible == 0 || max_margin <= 1e-6;
  if (feasible > 0 && max_margin > 1e-6) status = kCounterexample;
  results["bomb_free_margin_search"] = t4;
  return status;
}

int certify_box(const Config& c, json& results) {
  std::ifstream in(c.box_file);
  if (!in) throw InvalidInput("cannot open " + c.box_file);
  dmh::AnyBox box;
  try {
    box = dmh::box_from_json(dmh::read_json(in));
  } catch (const dmh::ParseError& e) {
    throw InvalidInput(std::string("box file: ") + e.what());
  }
  auto certify = [&](const auto& p, double tol) {
    if (auto why = dmh::ns_violation(p, tol)) throw InvalidInput("box is not a valid no-signaling box: " + *why);
    results["exact"] = std::is_same_v<std::decay_t<decltype(p)>, dmh::ExactBox>;
    results["no_signaling"] = true;
    const auto h = dmh::find_hardy(p, tol);
    results["hardy"] = h ? dmh::certificate_to_json(*h) : json(nullptr);
    const auto cab = dmh::find_cabello(p, tol);
    results["cabello"] = cab ? dmh::certificate_to_json(*cab) : json(nullptr);
    decltype(dmh::local_membership(p)) cert;
    if constexpr (std::is_same_v<std::decay_t<decltype(p)>, dmh::ExactBox>) {
      cert = dmh::local_membership(p);
      results["certificate_verified"] = dmh::verify_certificate(p, cert);
    } else {
      cert = dmh::local_membership(p, tol);
      results["certificate_verified"] = dmh::verify_certificate(p, cert, tol);
    }
    results["local_polytope"] = dmh::certificate_to_json(cert);
    results["nonlocal"] = cert.kind != decltype(cert)::Kind::Local;
  };
  if (std::holds_alternative<dmh::ExactBox>(box)) {
    certify(std::get<dmh::ExactBox>(box), 0.0);
  } else {
    certify(std::get<dmh::FloatBox>(box), c.tolerance);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine-hunting game verification tools"};
  app.require_subcommand(1);
  Config cfg;

  auto add_game = [&cfg](CLI::App* sub) {
    sub->add_option("--game", cfg.game, "dmh or dmh-prime")->capture_default_str();
    sub->add_option("--game-file", cfg.game_file, "game JSON file (overrides --game)");
  };
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--tolerance", cfg.tolerance, "zero-test tolerance for floating-point data")->capture_default_str();
  };

  auto* classical = app.add_subcommand("verify-classical", "vertex enumeration and classical payoff bound");
  add_game(classical);
  add_common(classical);
  classical->add_option("--bits", cfg.bits, "bits of communication")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep-wirings", "exhaustive check of box-assisted one-bit wirings");
  add_game(sweep);
  add_common(sweep);
  sweep->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  sweep->add_option("--range", cfg.range, "wiring id range LO..HI (half-open)");
  sweep->add_option("--records", cfg.records, "JSON-lines file with one record per positive wiring and the summary last");

  auto* merge = app.add_subcommand("merge-sweeps", "combine shard summaries written with --records or --out");
  add_common(merge);
  merge->add_option("files", cfg.shard_files, "shard files")->required();

  auto* q = app.add_subcommand("quantum", "Hardy optimization, seesaw and the |phi+> falsification run");
  add_common(q);
  q->add_option("--theta", cfg.theta, "single Schmidt angle instead of the 17-point grid");
  q->add_option("--restarts", cfg.restarts, "seesaw restarts on |phi+>")->capture_default_str();
  q->add_option("--grid-restarts", cfg.grid_restarts, "seesaw restarts per grid angle")->capture_default_str();
  q->add_option("--trials", cfg.trials, "random bomb-free strategies for the margin search")->capture_default_str();
  q->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  q->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  q->add_option("--box-out", cfg.box_out, "write the Hardy-optimal box as JSON");

  auto* certify = app.add_subcommand("certify-box", "Hardy, Cabello and local-polytope certificates for a box");
  add_common(certify);
  certify->add_option("box", cfg.box_file, "box JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  json results;
  int status = kOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (chosen == classical) status = verify_classical(cfg, results);
    if (chosen == sweep) status = sweep_wirings(cfg, results);
    if (chosen == merge) status = merge_sweeps(cfg, results);
    if (chosen == q) status = quantum(cfg, results);
    if (chosen == certify) status = certify_box(cfg, results);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report = {{"command", command},
                 {"config", config_json(cfg, command)},
                 {"results", results},
                 {"status", status},
                 {"timing", {{"seconds", seconds}}},
                 {"version", kVersion}};
  try {
    write_output(cfg, report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return status;
}
