#include "dmh/wiring.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace dmh {

std::uint32_t Wiring::id() const {
  std::uint32_t id = 0;
  for (int m = 0; m < 4; ++m) id |= static_cast<std::uint32_t>(x[static_cast<std::size_t>(m)] & 1) << m;
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 2; ++a)
      id |= static_cast<std::uint32_t>(c[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)] & 1) << (4 + 2 * m + a);
  for (int cc = 0; cc < 2; ++cc) id |= static_cast<std::uint32_t>(y[static_cast<std::size_t>(cc)] & 1) << (12 + cc);
  for (int cc = 0; cc < 2; ++cc)
    for (int b = 0; b < 2; ++b)
      id |= static_cast<std::uint32_t>(z[static_cast<std::size_t>(cc)][static_cast<std::size_t>(b)] & 3) << (14 + 2 * (2 * cc + b));
  return id;
}

Wiring Wiring::from_id(std::uint32_t id) {
  if (id >= count) throw std::out_of_range("wiring id out of range");
  Wiring w;
  for (int m = 0; m < 4; ++m) w.x[static_cast<std::size_t>(m)] = static_cast<int>((id >> m) & 1);
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 2; ++a)
      w.c[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)] = static_cast<int>((id >> (4 + 2 * m + a)) & 1);
  for (int cc = 0; cc < 2; ++cc) w.y[static_cast<std::size_t>(cc)] = static_cast<int>((id >> (12 + cc)) & 1);
  for (int cc = 0; cc < 2; ++cc)
    for (int b = 0; b < 2; ++b)
      w.z[static_cast<std::size_t>(cc)][static_cast<std::size_t>(b)] = static_cast<int>((id >> (14 + 2 * (2 * cc + b))) & 3);
  return w;
}

CellMasks compose_masks(const Wiring& w) {
  CellMasks masks{};
  for (std::size_t m = 0; m < 4; ++m) {
    const int x = w.x[m];
    for (int a = 0; a < 2; ++a) {
      const int bit = w.c[m][static_cast<std::size_t>(a)];
      const int y = w.y[static_cast<std::size_t>(bit)];
      for (int b = 0; b < 2; ++b) {
        const int z = w.z[static_cast<std::size_t>(bit)][static_cast<std::size_t>(b)];
        masks[m][static_cast<std::size_t>(z)] |= static_cast<std::uint16_t>(1u << box_index(a, b, x, y));
      }
    }
  }
  return masks;
}

Wiring theorem2_wiring() {
  Wiring w;
  w.x = {0, 1, 0, 1};
  // 0-based messages: c = 0 for (0,1), (1,1), (2,0), (2,1)
  w.c = {{{1, 0}, {1, 0}, {0, 0}, {1, 1}}};
  w.y = {0, 1};
  w.z = {{{0, 1}, {2, 3}}};
  return w;
}

Wiring theorem6_wiring() { return theorem2_wiring(); }

namespace {

void require_4x4(const GameMatrix& game) {
  game.validate();
  if (game.messages() != 4 || game.guesses() != 4) throw std::invalid_argument("wiring analysis needs a 4x4 game");
}

std::uint16_t forced_zero_mask(const CellMasks& masks, const GameMatrix& game) {
  std::uint16_t zeros = 0;
  for (int m = 0; m < 4; ++m)
    for (int z = 0; z < 4; ++z)
      if (game.is_bomb(m, z)) zeros |= masks[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)];
  return zeros;
}

LinearProgram restricted_lp(const RationalVector& objective, std::uint16_t zeros) {
  LinearProgram lp = ns_polytope_lp(objective);
  for (int i = 0; i < 16; ++i) {
    if ((zeros >> i) & 1) lp.upper[static_cast<std::size_t>(i)] = Rational(0);
  }
  return lp;
}

// Integer payoff weights: prior(m) * g(m,z) * scale.
struct ScaledGame {
  std::array<std::array<std::int64_t, 4>, 4> weight{};
  Rational scale;
};

ScaledGame scale_game(const GameMatrix& game) {
  BigInt lcm = 1;
  for (int m = 0; m < 4; ++m) {
    for (int z = 0; z < 4; ++z) {
      if (game.is_bomb(m, z)) continue;
      const Rational v = game.prior[static_cast<std::size_t>(m)] * game.reward(m, z);
      lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(v)));
    }
  }
  ScaledGame sg;
  sg.scale = Rational(lcm);
  for (int m = 0; m < 4; ++m) {
    for (int z = 0; z < 4; ++z) {
      if (game.is_bomb(m, z)) continue;
      const Rational v = game.prior[static_cast<std::size_t>(m)] * game.reward(m, z) * sg.scale;
      if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("payoff scaling failed");
      sg.weight[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
    }
  }
  return sg;
}

struct LpKey {
  std::uint16_t zeros = 0;
  std::uint16_t extra = 0;  // Cabello side row: 0x100 | src0 | src3 << 4
  std::array<std::int64_t, 16> coeffs{};
  bool operator==(const LpKey&) const = default;
};

struct LpKeyHash {
  std::size_t operator()(const LpKey& k) const {
    std::uint64_t h = 1469598103934665603ull ^ (static_cast<std::uint64_t>(k.zeros) << 16 | k.extra);
    for (auto c : k.coeffs) h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// Per-worker LP memo. Keys hold the objective restricted to non-forced entries.
class LpCache {
 public:
  // nullopt when the region is empty; otherwise the maximum of the scaled objective.
  std::optional<Rational> maximize(std::uint16_t zeros, const std::array<std::int64_t, 16>& coeffs, std::uint16_t extra = 0) {
    if (!feasible(zeros)) return std::nullopt;
    LpKey key{zeros, extra, coeffs};
    for (int i = 0; i < 16; ++i)
      if ((zeros >> i) & 1) key.coeffs[static_cast<std::size_t>(i)] = 0;
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    RationalVector obj(16);
    for (int i = 0; i < 16; ++i) obj(i) = key.coeffs[static_cast<std::size_t>(i)];
    LinearProgram lp = restricted_lp(obj, zeros);
    if (extra != 0) {
      RationalVector row = RationalVector::Zero(16);
      row(extra & 15) += 1;
      row((extra >> 4) & 15) -= 1;
      lp.add(row, Relation::LessEqual, 0);
    }
    ++solves;
    auto out = solve_lp(lp);
    std::optional<Rational> value;
    if (out.status == LpStatus::Optimal) value = out.value;
    values_.emplace(key, value);
    return value;
  }

  bool feasible(std::uint16_t zeros) {
    auto& slot = feasible_[zeros];
    if (slot == 0) {
      ++solves;
      slot = solve_lp(restricted_lp(RationalVector::Zero(16), zeros)).status == LpStatus::Optimal ? 1 : 2;
    }
    return slot == 1;
  }

  std::uint64_t solves = 0;

 private:
  std::vector<std::uint8_t> feasible_ = std::vector<std::uint8_t>(1u << 16, 0);
  std::unordered_map<LpKey, std::optional<Rational>, LpKeyHash> values_;
};

std::array<std::array<int, 16>, 64> relabelling_sources() {
  std::array<std::array<int, 16>, 64> out{};
  for (int id = 0; id < 64; ++id) out[static_cast<std::size_t>(id)] = Relabelling::from_id(id).source_indices();
  return out;
}

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1u << i); }

class SweepWorker {
 public:
  SweepWorker(const GameMatrix& game, CertificateKind kind)
      : game_(game), kind_(kind), scaled_(scale_game(game)), sources_(relabelling_sources()) {}

  void run(std::uint32_t begin, std::uint32_t end, SweepSummary& out) {
    for (std::uint32_t id = begin; id < end; ++id) visit(id, out);
  }

  std::uint64_t solves() const { return cache_.solves; }

 private:
  void visit(std::uint32_t id, SweepSummary& out) {
    ++out.analyzed;
    const CellMasks masks = compose_masks(Wiring::from_id(id));
    const std::uint16_t zeros = forced_zero_mask(masks, game_);
    if (!cache_.feasible(zeros)) {
      ++out.bomb_unavoidable;
      return;
    }
    std::array<std::int64_t, 16> coeffs{};
    bool any_positive = false;
    for (int m = 0; m < 4; ++m) {
      for (int z = 0; z < 4; ++z) {
        if (game_.is_bomb(m, z)) continue;
        const auto w = scaled_.weight[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)];
        if (w == 0) continue;
        const std::uint16_t cell = masks[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)];
        for (int i = 0; i < 16; ++i)
          if ((cell >> i) & 1) coeffs[static_cast<std::size_t>(i)] += w;
      }
    }
    for (int i = 0; i < 16; ++i)
      if (!((zeros >> i) & 1) && coeffs[static_cast<std::size_t>(i)] > 0) any_positive = true;
    // With p >= 0 and no positive coefficient the maximum cannot exceed 0.
    if (!any_positive) {
      ++out.non_positive;
      return;
    }
    const auto best = cache_.maximize(zeros, coeffs);
    if (!best || *best <= 0) {
      ++out.non_positive;
      return;
    }
    ++out.positive;
    SweepRecord rec;
    rec.id = id;
    rec.forced_zeros = zeros;
    rec.max_payoff = *best / scaled_.scale;
    bool matched = false;
    for (std::size_t r = 0; r < 64 && !rec.certified; ++r) {
      const auto& src = sources_[r];
      if (kind_ == CertificateKind::Hardy) {
        const std::uint16_t need = bit(src[3]) | bit(src[5]) | bit(src[10]);
        if ((zeros & need) != need) continue;
        matched = true;
        const auto rest = cache_.maximize(static_cast<std::uint16_t>(zeros | bit(src[0])), coeffs);
        if (!rest || *rest <= 0) rec.certified = true;
      } else {
        const std::uint16_t need = bit(src[5]) | bit(src[10]);
        if ((zeros & need) != need) continue;
        matched = true;
        const auto extra = static_cast<std::uint16_t>(0x100 | src[0] | src[3] << 4);
        const auto rest = cache_.maximize(zeros, coeffs, extra);
        if (!rest || *rest <= 0) rec.certified = true;
      }
      if (rec.certified) rec.relabelling = Relabelling::from_id(static_cast<int>(r));
    }
    rec.unmatched = !matched;
    if (rec.certified) {
      ++out.certified;
    } else {
      out.counterexamples.push_back(id);
    }
    out.records.push_back(std::move(rec));
  }

  const GameMatrix& game_;
  CertificateKind kind_;
  ScaledGame scaled_;
  std::array<std::array<int, 16>, 64> sources_;
  LpCache cache_;
};

void accumulate(SweepSummary& into, SweepSummary&& part) {
  into.analyzed += part.analyzed;
  into.bomb_unavoidable += part.bomb_unavoidable;
  into.non_positive += part.non_positive;
  into.positive += part.positive;
  into.certified += part.certified;
  into.lp_solves += part.lp_solves;
  into.counterexamples.insert(into.counterexamples.end(), part.counterexamples.begin(), part.counterexamples.end());
  for (auto& r : part.records) into.records.push_back(std::move(r));
}

void sort_summary(SweepSummary& s) {
  std::sort(s.counterexamples.begin(), s.counterexamples.end());
  std::sort(s.records.begin(), s.records.end(), [](const SweepRecord& l, const SweepRecord& r) { return l.id < r.id; });
}

}  // namespace

WiringAnalysis analyze_wiring(const Wiring& w, const GameMatrix& game) {
  require_4x4(game);
  const CellMasks masks = compose_masks(w);
  WiringAnalysis out;
  out.id = w.id();
  out.forced_zeros = forced_zero_mask(masks, game);
  out.coefficients = RationalVector::Zero(16);
  for (int m = 0; m < 4; ++m) {
    for (int z = 0; z < 4; ++z) {
      if (game.is_bomb(m, z)) continue;
      const Rational v = game.prior[static_cast<std::size_t>(m)] * game.reward(m, z);
      for (int i = 0; i < 16; ++i)
        if ((masks[static_cast<std::size_t>(m)][static_cast<std::size_t>(z)] >> i) & 1) out.coefficients(i) += v;
    }
  }
  const auto res = solve_lp(restricted_lp(out.coefficients, out.forced_zeros));
  out.max_payoff = res.status == LpStatus::Optimal ? ExactPayoff::finite(res.value) : ExactPayoff::neg_infinity();
  if (out.max_payoff.is_finite() && out.max_payoff.value() > 0) {
    for (const auto& r : Relabelling::all()) {
      const auto src = r.source_indices();
      const std::uint16_t need = bit(src[3]) | bit(src[5]) | bit(src[10]);
      if ((out.forced_zeros & need) != need) continue;
      const auto rest = solve_lp(restricted_lp(out.coefficients, static_cast<std::uint16_t>(out.forced_zeros | bit(src[0]))));
      if (rest.status != LpStatus::Optimal || rest.value <= 0) {
        out.relabelling = r;
        break;
      }
    }
  }
  return out;
}

SweepSummary verify_theorem3(const GameMatrix& game, const SweepOptions& options) {
  require_4x4(game);
  if (options.begin > options.end || options.end > Wiring::count) throw std::invalid_argument("sweep range out of bounds");
  SweepSummary total;
  total.kind = options.kind;
  total.range_begin = options.begin;
  total.range_end = options.end;

  constexpr std::uint32_t chunk = 1u << 14;
  const unsigned workers = std::max(1u, options.workers);
  std::atomic<std::uint32_t> next{options.begin};
  std::atomic<std::uint64_t> done{0};
  std::mutex mu;
  std::vector<SweepSummary> parts(workers);
  std::exception_ptr failure;

  auto body = [&](unsigned index) {
    try {
      SweepWorker worker(game, options.kind);
      SweepSummary& part = parts[index];
      while (true) {
        const std::uint32_t lo = next.fetch_add(chunk);
        if (lo >= options.end || lo < options.begin) break;
        const std::uint32_t hi = std::min(options.end, lo + chunk);
        worker.run(lo, hi, part);
        const auto finished = done.fetch_add(hi - lo) + (hi - lo);
        if (options.progress) {
          std::lock_guard<std::mutex> lock(mu);
          options.progress(finished);
        }
      }
      part.lp_solves = worker.solves();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < workers; ++i) threads.emplace_back(body, i);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& p : parts) accumulate(total, std::move(p));
  sort_summary(total);
  return total;
}

SweepSummary merge_summaries(std::vector<SweepSummary> shards) {
  if (shards.empty()) throw std::invalid_argument("nothing to merge");
  std::sort(shards.begin(), shards.end(), [](const SweepSummary& l, const SweepSummary& r) { return l.range_begin < r.range_begin; });
  SweepSummary total;
  total.kind = shards.front().kind;
  total.range_begin = shards.front().range_begin;
  total.range_end = shards.front().range_end;
  for (std::size_t i = 0; i < shards.size(); ++i) {
    if (shards[i].kind != total.kind) throw std::invalid_argument("cannot merge Hardy and Cabello sweeps");
    if (i > 0 && shards[i].range_begin < shards[i - 1].range_end) throw std::invalid_argument("shard ranges overlap");
    total.range_begin = std::min(total.range_begin, shards[i].range_begin);
    total.range_end = std::max(total.range_end, shards[i].range_end);
    accumulate(total, std::move(shards[i]));
  }
  sort_summary(total);
  return total;
}

}  // namespace dmh
