#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kronrod/constellation.hpp"
#include "kronrod/types.hpp"

namespace kronrod {

/// Rate-1/2 feed-forward convolutional code, K = 3, generators (5, 7) octal.
///
/// Register taps are written newest bit first: g0 = 101, g1 = 111. The
/// encoder starts in the zero state and appends K - 1 zero flush bits, so a
/// message of length m produces 2 (m + 2) coded bits.
struct ConvCode {
  static constexpr unsigned constraint_length = 3;
  static constexpr unsigned generator0 = 05;
  static constexpr unsigned generator1 = 07;
  static constexpr unsigned states = 1u << (constraint_length - 1);
  static constexpr unsigned flush_bits = constraint_length - 1;

  // Decoding delay of a sliding-window decoder, 5K channel bits per output.
  static constexpr std::size_t nominal_traceback = 5 * constraint_length;

  static constexpr std::size_t coded_length(std::size_t message_bits) {
    return 2 * (message_bits + flush_bits);
  }
  static constexpr double terminated_rate(std::size_t message_bits) {
    return double(message_bits) / double(coded_length(message_bits));
  }
};

Bits conv_encode(std::span<const std::uint8_t> message);

enum class ViterbiMode { hard, soft };

// traceback_depth == 0 decodes the whole terminated block at once; any other
// value releases bit t once step t + depth has been processed.
Bits viterbi_decode(std::span<const std::uint8_t> hard_bits, std::size_t traceback_depth = 0);

// llrs[i] = log P(c_i = 0 | y) / P(c_i = 1 | y).
Bits viterbi_decode(std::span<const double> llrs, std::size_t traceback_depth = 0);

// Correlation metric sum_i (1 - 2 c_i) obs_i that the decoder maximises.
double path_metric(std::span<const std::uint8_t> coded, std::span<const double> obs);

Bits psk_hard_demod(std::span<const cdouble> y, cdouble h, const ConstellationSet& set);

// Exact (log-sum-exp) LLRs for y = h x + n, n ~ CN(0, sigma2), MSB first.
std::vector<double> psk_soft_demod(std::span<const cdouble> y, cdouble h, double sigma2,
                                   const ConstellationSet& set);

// Gray-mapped PSK modulation of a bit string (length a multiple of log2 M).
CVector psk_modulate(std::span<const std::uint8_t> bits, const ConstellationSet& set);

struct NormalApproxPoint {
  std::size_t blocklength;
  double rate;
  double snr;
  double epsilon;
};

double awgn_capacity(double snr);
double awgn_dispersion(double snr);

// Q((n (C - R) + log2(n) / 2) / sqrt(n V)) for the complex AWGN channel.
double normal_approximation(std::size_t n, double rate, double snr);

// Block-fading average of normal_approximation over |h|^2 ~ Exp(1).
double normal_approximation_rayleigh(std::size_t n, double rate, double mean_snr);

}  // namespace kronrod
