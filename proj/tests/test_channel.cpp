#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kronrod/channel.hpp"
#include "kronrod/error.hpp"
#include "kronrod/tensor.hpp"

using namespace kronrod;

TEST_CASE("noise calibration") {
  CHECK(calibrate_noise(0.0, 1.0) == 1.0);
  CHECK(calibrate_noise(10.0, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(calibrate_noise(10.0 * std::log10(2.0), 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  for (double db : {-3.0, 0.0, 4.5, 12.0}) {
    CHECK(calibrate_noise(db, 2.0) == doctest::Approx(calibrate_noise(db, 1.0) / 2.0));
  }
  const KronConfig cfg({2, 2, 2, 2}, std::vector<ConstellationSet>(4, make_psk(4)));
  CHECK(calibrate_noise(0.0, cfg) == 1.0);
  try {
    calibrate_noise(0.0, 0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_config);
  }
}

TEST_CASE("noise moments and whiteness") {
  Rng rng(123);
  const std::size_t n = 1'000'000;
  const double sigma2 = 0.37;
  const CVector x(n, cdouble(0.6, -0.8));
  const cdouble h(0.3, 1.1);
  const CVector y = transmit(x, {h, sigma2, ChannelModel::rayleigh_flat}, rng);
  CVector w(n);
  cdouble mean = 0.0;
  double var = 0.0, re2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = y[i] - h * x[i];
    mean += w[i];
    var += std::norm(w[i]);
    re2 += w[i].real() * w[i].real();
  }
  mean /= double(n);
  var /= double(n);
  re2 /= double(n);
  CHECK(std::abs(mean) < 0.003);
  CHECK(std::abs(var / sigma2 - 1.0) < 0.01);
  CHECK(std::abs(re2 / (sigma2 / 2) - 1.0) < 0.01);
  for (std::size_t lag : {1u, 2u, 7u, 100u}) {
    cdouble r = 0.0;
    for (std::size_t i = lag; i < n; ++i) r += w[i] * std::conj(w[i - lag]);
    CHECK(std::abs(r / double(n - lag)) / sigma2 < 0.01);
  }
}

TEST_CASE("noiseless transmission") {
  Rng rng(1);
  const CVector x{1.0, cdouble(0, 1), -1.0};
  CHECK(transmit(x, {1.0, 0.0, ChannelModel::awgn}, rng) == x);
  CHECK_THROWS_AS(transmit(x, {1.0, -1.0, ChannelModel::awgn}, rng), Error);
}

TEST_CASE("Rayleigh coefficients") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) CHECK(draw_channel(ChannelModel::awgn, rng) == 1.0);

  double p = 0.0;
  for (int i = 0; i < 1'000'000; ++i) p += std::norm(draw_channel(ChannelModel::rayleigh_flat, rng));
  CHECK(std::abs(p / 1e6 - 1.0) < 0.01);

  // Kolmogorov-Smirnov against F(r) = 1 - exp(-r^2).
  const int n = 100'000;
  std::vector<double> r(n);
  for (auto& v : r) v = std::abs(draw_channel(ChannelModel::rayleigh_flat, rng));
  std::sort(r.begin(), r.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = 1.0 - std::exp(-r[i] * r[i]);
    d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
  }
  CHECK(d < 1.628 / std::sqrt(double(n)));
}

TEST_CASE("matched filter") {
  const CVector x{1.0, cdouble(0, 1), cdouble(0.6, 0.8)};
  CHECK(matched_filter(x, 1.0) == x);
  Rng rng(5);
  const cdouble rot = std::polar(1.0, 0.77);
  const CVector y = transmit(x, {rot, 0.0, ChannelModel::rayleigh_flat}, rng);
  const CVector yh = matched_filter(y, rot);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(yh[i] - x[i]) < 1e-15);
  const CVector y2 = matched_filter(transmit(x, {2.0, 0.0, ChannelModel::rayleigh_flat}, rng), 2.0);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y2[i] - 4.0 * x[i]) < 1e-15);
}

TEST_CASE("matched filter keeps the rank-one structure") {
  Rng rng(8);
  const std::vector<CVector> s{{1.0, cdouble(0, 1)}, {1.0, -1.0, cdouble(0, -1)}};
  const CVector x = kron_vec(std::vector<CVector>{s[1], s[0]});
  const cdouble h = draw_channel(ChannelModel::rayleigh_flat, rng);
  const CVector yh = matched_filter(transmit(x, {h, 0.0, ChannelModel::rayleigh_flat}, rng), h);
  const DenseTensor t = tensorize(yh, {2, 3});
  const DenseTensor r1 = outer_rank_one(s);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(t.data()[i] - std::norm(h) * r1.data()[i]) < 1e-12);
  }
}
