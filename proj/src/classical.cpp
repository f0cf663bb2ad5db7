#include "dmh/classical.hpp"

#include <algorithm>

namespace dmh {

std::vector<int> ClassicalStrategy::channel() const {
  std::vector<int> out;
  out.reserve(encoding.size());
  for (unsigned w : encoding) out.push_back(decoding.at(w));
  return out;
}

StrategyMatrix<Rational> channel_matrix(const std::vector<int>& guess, int guesses) {
  StrategyMatrix<Rational> s = StrategyMatrix<Rational>::Zero(static_cast<Eigen::Index>(guess.size()), guesses);
  for (std::size_t m = 0; m < guess.size(); ++m) s(static_cast<Eigen::Index>(m), guess[m]) = 1;
  return s;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {
BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) return 0;
  BigInt sum = 0;
  for (int j = 0; j <= k; ++j) {
    BigInt term = binomial(k, j) * boost::multiprecision::pow(BigInt(k - j), static_cast<unsigned>(n));
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum / factorial(k);
}

BigInt stirling2_recurrence(int n, int k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(n) + 1, std::vector<BigInt>(static_cast<std::size_t>(k) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= k; ++j) {
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          BigInt(j) * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
          s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigInt vertex_count(int bits, int messages, int guesses) {
  if (bits < 1 || messages < 1 || guesses < 1) throw std::invalid_argument("vertex_count: arguments must be >= 1");
  if (bits > 20) throw std::invalid_argument("vertex_count: too many bits");
  const int words = 1 << bits;
  BigInt total = 0;
  for (int k = 1; k <= words; ++k) total += factorial(k) * binomial(guesses, k) * stirling2(messages, k);
  return total;
}

std::vector<std::vector<int>> enumerate_channels(int bits, int messages, int guesses) {
  if (bits < 1 || messages < 1 || guesses < 1) throw std::invalid_argument("enumerate_channels: arguments must be >= 1");
  if (bits > 16) throw ResourceLimitError("enumerate_channels: too many bits");
  const std::uint64_t words = std::uint64_t{1} << bits;
  // encodings = words^messages, decodings = guesses^words
  std::uint64_t encodings = 1, decodings = 1;
  for (int m = 0; m < messages; ++m) {
    encodings *= words;
    if (encodings > kCompositionGuard) throw ResourceLimitError("enumerate_channels: size guard exceeded");
  }
  for (std::uint64_t w = 0; w < words; ++w) {
    decodings *= static_cast<std::uint64_t>(guesses);
    if (decodings > kCompositionGuard) throw ResourceLimitError("enumerate_channels: size guard exceeded");
  }
  if (encodings * decodings > kCompositionGuard) throw ResourceLimitError("enumerate_channels: size guard exceeded");

  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(encodings * decodings));
  ClassicalStrategy st;
  st.encoding.resize(static_cast<std::size_t>(messages));
  st.decoding.resize(static_cast<std::size_t>(words));
  for (std::uint64_t e = 0; e < encodings; ++e) {
    std::uint64_t rest = e;
    for (auto& w : st.encoding) {
      w = static_cast<unsigned>(rest % words);
      rest /= words;
    }
    for (std::uint64_t d = 0; d < decodings; ++d) {
      rest = d;
      for (auto& z : st.decoding) {
        z = static_cast<int>(rest % static_cast<std::uint64_t>(guesses));
        rest /= static_cast<std::uint64_t>(guesses);
      }
      out.push_back(st.channel());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<StrategyMatrix<Rational>> enumerate_vertices(int bits, int messages, int guesses) {
  std::vector<StrategyMatrix<Rational>> out;
  for (const auto& ch : enumerate_channels(bits, messages, guesses)) out.push_back(channel_matrix(ch, guesses));
  return out;
}

VertexReport verify_classical_bound(const GameMatrix& game, int bits) {
  game.validate();
  VertexReport report;
  const auto channels = enumerate_channels(bits, game.messages(), game.guesses());
  report.total = channels.size();
  for (const auto& ch : channels) {
    auto s = channel_matrix(ch, game.guesses());
    auto value = payoff(game, s);
    if (report.max_payoff < value) report.max_payoff = value;
    if (value.is_finite()) {
      report.safe_channels.push_back(ch);
      report.safe_vertices.push_back(std::move(s));
    }
  }
  return report;
}

}  // namespace dmh
