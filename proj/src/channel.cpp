#include "kronrod/channel.hpp"

#include <cmath>

#include "kronrod/error.hpp"

namespace kronrod {

double calibrate_noise(double ebn0_db, double bits_per_symbol) {
  if (!(bits_per_symbol > 0.0)) {
    throw Error(Errc::invalid_config, "bit rate must be positive to calibrate noise");
  }
  return 1.0 / (bits_per_symbol * std::pow(10.0, ebn0_db / 10.0));
}

double calibrate_noise(double ebn0_db, const KronConfig& cfg) {
  return calibrate_noise(ebn0_db, bit_rate(cfg));
}

cdouble complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {scale * re, scale * im};
}

cdouble draw_channel(ChannelModel model, Rng& rng) {
  if (model == ChannelModel::awgn) return {1.0, 0.0};
  return complex_gaussian(rng, 1.0);
}

CVector transmit(std::span<const cdouble> x, const ChannelRealization& ch, Rng& rng) {
  if (ch.sigma2 < 0.0) {
    throw Error(Errc::domain, "noise variance must be non-negative");
  }
  CVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = ch.h * x[i];
    if (ch.sigma2 > 0.0) y[i] += complex_gaussian(rng, ch.sigma2);
  }
  return y;
}

CVector matched_filter(std::span<const cdouble> y, cdouble h) {
  const cdouble hc = std::conj(h);
  CVector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = hc * y[i];
  return out;
}

}  // namespace kronrod
