#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kronrod/baselines.hpp"
#include "kronrod/channel.hpp"
#include "kronrod/kron_codec.hpp"
#include "kronrod/rod_detector.hpp"

namespace kronrod {

enum class Pipeline { kron_rod, viterbi_hard, viterbi_soft, normal_approx };

struct StopRule {
  std::uint64_t min_bit_errors = 200;
  std::uint64_t max_bits = 10'000'000;
};

struct SimConfig {
  std::string name;
  std::string description;
  Pipeline pipeline = Pipeline::kron_rod;
  std::optional<KronConfig> kron;
  TpmdSettings tpmd;
  ChannelModel channel = ChannelModel::awgn;
  std::vector<double> ebn0_grid_db;
  StopRule stop;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;

  // Convolutional baselines: PSK order and block size in channel symbols.
  unsigned psk_order = 4;
  std::size_t block_symbols = 16;
  std::size_t traceback_depth = 0;

  // Normal approximation: rate in bits per channel use; blocklength is
  // block_symbols. With bound_ber_proxy the ber column carries epsilon / 2.
  double bound_rate = 1.0;
  bool bound_ber_proxy = false;

  // Replaces the calibrated noise variance at every point (0 = noiseless).
  std::optional<double> sigma2_override;
  // When false, wall_s is written as 0 so output bytes are reproducible.
  bool record_wall_time = true;
};

void validate(const SimConfig& cfg);

// Information bits per channel symbol used for Eb/N0 calibration.
double nominal_bit_rate(const SimConfig& cfg);

// Kronecker-RoD: block length L. Viterbi: 5K.
std::size_t decoding_delay(const SimConfig& cfg);

struct BerStat {
  double ebn0_db = 0.0;
  double sigma2 = 0.0;
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t blocks_sent = 0;
  std::uint64_t block_errors = 0;
  std::uint64_t erasures = 0;
  double ber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  // Per power-iteration run; index = iterations used.
  std::vector<std::uint64_t> iteration_histogram;
  std::uint64_t iteration_runs = 0;
  std::uint64_t iterations_total = 0;
  bool hit_max_bits = false;
  double wall_s = 0.0;

  double mean_iters() const noexcept;
  unsigned median_iters() const noexcept;
  unsigned max_iters() const noexcept;
};

struct WilsonInterval {
  double low;
  double high;
};

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = 1.959964);

// Runs blocks until the stop rule fires. Block b at grid index p uses the
// seed derive_seed(master_seed, {p, b}).
BerStat run_point(const SimConfig& cfg, double ebn0_db, std::size_t point_index = 0);

struct Sweep {
  std::vector<BerStat> points;
  std::vector<std::string> metadata;  // "key=value" lines
};

Sweep run_sweep(const SimConfig& cfg);

void write_csv(std::ostream& out, const Sweep& sweep);

struct CurvePoint {
  double ebn0_db;
  double ber;
};

std::vector<CurvePoint> curve_of(const Sweep& sweep);
std::vector<CurvePoint> read_curve_csv(std::istream& in);

// Eb/N0 at which the curve first crosses target_ber, interpolated linearly in
// log10(BER). Throws Errc::extrapolation when the target is not bracketed.
double ebn0_at_ber(const std::vector<CurvePoint>& curve, double target_ber);

// Eb/N0 advantage of curve a over curve b at target_ber (positive when a
// reaches the target at lower Eb/N0).
double gain_at_ber(const std::vector<CurvePoint>& a, const std::vector<CurvePoint>& b,
                   double target_ber);

}  // namespace kronrod
