#include "kronrod/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kronrod/error.hpp"

namespace kronrod {
namespace {

// State holds the two previous inputs, newest in the high bit.
struct Transition {
  unsigned next;
  std::uint8_t c0;
  std::uint8_t c1;
};

constexpr Transition step(unsigned state, unsigned bit) {
  const unsigned reg = (bit << 2) | state;
  const auto parity = [](unsigned v) { return std::uint8_t(__builtin_popcount(v) & 1u); };
  return {(reg >> 1) & 3u, parity(reg & ConvCode::generator0),
          parity(reg & ConvCode::generator1)};
}

constexpr std::array<std::array<Transition, 2>, ConvCode::states> make_trellis() {
  std::array<std::array<Transition, 2>, ConvCode::states> t{};
  for (unsigned s = 0; s < ConvCode::states; ++s) {
    t[s][0] = step(s, 0);
    t[s][1] = step(s, 1);
  }
  return t;
}

constexpr auto kTrellis = make_trellis();

struct Survivor {
  std::uint8_t prev_state;
  std::uint8_t bit;
};

Bits decode_metrics(std::span<const double> obs, std::size_t depth) {
  if (obs.size() % 2 != 0) {
    throw Error(Errc::framing, "coded stream length must be even");
  }
  const std::size_t steps = obs.size() / 2;
  if (steps < ConvCode::flush_bits) {
    throw Error(Errc::framing, "coded stream shorter than the flush tail");
  }
  const std::size_t message_bits = steps - ConvCode::flush_bits;
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();

  std::vector<std::array<Survivor, ConvCode::states>> survivors(steps);
  std::array<double, ConvCode::states> metric{};
  metric.fill(kUnreached);
  metric[0] = 0.0;

  Bits decided(message_bits, 0);
  std::size_t released = 0;

  const auto trace = [&](std::size_t from_step, unsigned state, std::size_t stop_before) {
    // Walk back from the end of step `from_step`, writing message decisions
    // for steps in [stop_before, from_step].
    for (std::size_t t = from_step + 1; t-- > stop_before;) {
      const auto sv = survivors[t][state];
      if (t < message_bits) decided[t] = sv.bit;
      state = sv.prev_state;
    }
  };

  for (std::size_t t = 0; t < steps; ++t) {
    std::array<double, ConvCode::states> next;
    next.fill(kUnreached);
    const double o0 = obs[2 * t];
    const double o1 = obs[2 * t + 1];
    const bool flushing = t >= message_bits;
    for (unsigned s = 0; s < ConvCode::states; ++s) {
      if (metric[s] == kUnreached) continue;
      for (unsigned b = 0; b < (flushing ? 1u : 2u); ++b) {
        const auto& tr = kTrellis[s][b];
        const double m = metric[s] + (tr.c0 ? -o0 : o0) + (tr.c1 ? -o1 : o1);
        if (m > next[tr.next]) {
          next[tr.next] = m;
          survivors[t][tr.next] = {std::uint8_t(s), std::uint8_t(b)};
        }
      }
    }
    metric = next;

    if (depth > 0 && t >= depth && t - depth < message_bits) {
      const auto best = static_cast<unsigned>(
          std::max_element(metric.begin(), metric.end()) - metric.begin());
      // Only bit t - depth is released; later ones may still change.
      unsigned state = best;
      for (std::size_t k = t + 1; k-- > t - depth;) {
        const auto sv = survivors[k][state];
        if (k == t - depth) decided[k] = sv.bit;
        state = sv.prev_state;
      }
      released = t - depth + 1;
    }
  }
  trace(steps - 1, 0, released);
  return decided;
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

Bits conv_encode(std::span<const std::uint8_t> message) {
  Bits out;
  out.reserve(ConvCode::coded_length(message.size()));
  unsigned state = 0;
  const auto push = [&](unsigned bit) {
    const auto& tr = kTrellis[state][bit & 1u];
    out.push_back(tr.c0);
    out.push_back(tr.c1);
    state = tr.next;
  };
  for (auto b : message) push(b);
  for (unsigned k = 0; k < ConvCode::flush_bits; ++k) push(0);
  return out;
}

Bits viterbi_decode(std::span<const std::uint8_t> hard_bits, std::size_t traceback_depth) {
  std::vector<double> obs(hard_bits.size());
  std::transform(hard_bits.begin(), hard_bits.end(), obs.begin(),
                 [](std::uint8_t b) { return b ? -1.0 : 1.0; });
  return decode_metrics(obs, traceback_depth);
}

Bits viterbi_decode(std::span<const double> llrs, std::size_t traceback_depth) {
  return decode_metrics(llrs, traceback_depth);
}

double path_metric(std::span<const std::uint8_t> coded, std::span<const double> obs) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(coded.size(), obs.size()); ++i) {
    m += coded[i] ? -obs[i] : obs[i];
  }
  return m;
}

Bits psk_hard_demod(std::span<const cdouble> y, cdouble h, const ConstellationSet& set) {
  if (h == cdouble{}) throw Error(Errc::domain, "channel coefficient is zero");
  const unsigned k = set.bits_per_symbol();
  Bits out;
  out.reserve(y.size() * k);
  for (const auto& v : y) {
    const auto label = set.label(set.nearest(v / h));
    for (unsigned b = k; b-- > 0;) out.push_back(std::uint8_t((label >> b) & 1u));
  }
  return out;
}

std::vector<double> psk_soft_demod(std::span<const cdouble> y, cdouble h, double sigma2,
                                   const ConstellationSet& set) {
  if (!(sigma2 > 0.0)) throw Error(Errc::domain, "noise variance must be positive");
  const unsigned k = set.bits_per_symbol();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> llr;
  llr.reserve(y.size() * k);
  std::vector<double> loglik(set.size());
  for (const auto& v : y) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      loglik[i] = -std::norm(v - h * set.point(i)) / sigma2;
    }
    for (unsigned b = k; b-- > 0;) {
      double l0 = kNegInf;
      double l1 = kNegInf;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if ((set.label(i) >> b) & 1u) {
          l1 = log_sum_exp(l1, loglik[i]);
        } else {
          l0 = log_sum_exp(l0, loglik[i]);
        }
      }
      llr.push_back(l0 - l1);
    }
  }
  return llr;
}

CVector psk_modulate(std::span<const std::uint8_t> bits, const ConstellationSet& set) {
  const unsigned k = set.bits_per_symbol();
  if (k == 0 || bits.size() % k != 0) {
    throw Error(Errc::length_mismatch, "bit count is not a multiple of bits per symbol");
  }
  CVector out;
  out.reserve(bits.size() / k);
  for (std::size_t i = 0; i < bits.size(); i += k) {
    std::uint32_t label = 0;
    for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[i + b] & 1u);
    out.push_back(set.point(set.index_of_label(label)));
  }
  return out;
}

double awgn_capacity(double snr) { return std::log2(1.0 + snr); }

double awgn_dispersion(double snr) {
  const double log2e = std::numbers::log2e;
  return snr * (snr + 2.0) / ((snr + 1.0) * (snr + 1.0)) * log2e * log2e;
}

double normal_approximation(std::size_t n, double rate, double snr) {
  if (!(snr > 0.0)) throw Error(Errc::domain, "SNR must be positive");
  if (n < 1) throw Error(Errc::domain, "blocklength must be at least 1");
  if (!(rate > 0.0)) throw Error(Errc::domain, "rate must be positive");
  const double nn = double(n);
  const double arg = (nn * (awgn_capacity(snr) - rate) + 0.5 * std::log2(nn)) /
                     std::sqrt(nn * awgn_dispersion(snr));
  return std::clamp(q_function(arg), 0.0, 1.0);
}

double normal_approximation_rayleigh(std::size_t n, double rate, double mean_snr) {
  if (!(mean_snr > 0.0)) throw Error(Errc::domain, "SNR must be positive");
  // E over g ~ Exp(1) with g = -ln(1 - u), u uniform: composite Simpson on u.
  constexpr int kIntervals = 4000;
  const auto f = [&](double u) {
    if (u <= 0.0) return 1.0;  // g -> 0 means outage
    if (u >= 1.0) return 0.0;
    const double g = -std::log1p(-u);
    return normal_approximation(n, rate, mean_snr * g);
  };
  const double hstep = 1.0 / kIntervals;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < kIntervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * hstep);
  return std::clamp(acc * hstep / 3.0, 0.0, 1.0);
}

}  // namespace kronrod
