#pragma once

#include <span>

#include "kronrod/kron_codec.hpp"
#include "kronrod/rng.hpp"
#include "kronrod/types.hpp"

namespace kronrod {

enum class ChannelModel { awgn, rayleigh_flat };

struct ChannelRealization {
  cdouble h{1.0, 0.0};
  // Total variance of each complex noise sample; 0 means noiseless.
  double sigma2 = 1.0;
  ChannelModel model = ChannelModel::awgn;
};

// Unit symbol energy, Eb = 1 / rate, N0 = sigma2.
double calibrate_noise(double ebn0_db, double bits_per_symbol);
double calibrate_noise(double ebn0_db, const KronConfig& cfg);

// Block fading: one coefficient per transmitted block. h ~ CN(0, 1) for
// Rayleigh, h = 1 for AWGN.
cdouble draw_channel(ChannelModel model, Rng& rng);

CVector transmit(std::span<const cdouble> x, const ChannelRealization& ch, Rng& rng);

// conj(h) * y (genie channel knowledge)
CVector matched_filter(std::span<const cdouble> y, cdouble h);

// Circularly symmetric complex Gaussian with total variance `variance`.
cdouble complex_gaussian(Rng& rng, double variance);

}  // namespace kronrod
