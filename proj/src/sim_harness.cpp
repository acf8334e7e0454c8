#include "kronrod/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "kronrod/error.hpp"
#include "kronrod/log.hpp"

namespace kronrod {
namespace {

struct BlockOutcome {
  std::uint32_t bits = 0;
  std::uint32_t bit_errors = 0;
  bool erased = false;
  std::vector<std::uint32_t> iterations;  // one entry per TPMD branch
};

Bits random_bits(std::size_t n, Rng& rng) {
  Bits b(n);
  for (std::size_t i = 0; i < n; i += 64) {
    const std::uint64_t word = rng();
    for (std::size_t k = 0; k < 64 && i + k < n; ++k) b[i + k] = std::uint8_t((word >> k) & 1u);
  }
  return b;
}

std::uint32_t count_errors(const Bits& a, const Bits& b) {
  std::uint32_t e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
  return e;
}

class BlockSimulator {
 public:
  BlockSimulator(const SimConfig& cfg, double sigma2)
      : cfg_(cfg), sigma2_(sigma2), psk_(make_psk(cfg.psk_order)) {}

  BlockOutcome operator()(std::uint64_t seed) const {
    Rng rng(seed);
    return cfg_.pipeline == Pipeline::kron_rod ? kron_block(rng) : viterbi_block(rng);
  }

 private:
  BlockOutcome kron_block(Rng& rng) const {
    const KronConfig& kc = *cfg_.kron;
    BlockOutcome out;
    const Bits bits = random_bits(payload_bits_per_block(kc), rng);
    const CVector x = encode(modulate_branches(bits, kc));
    const ChannelRealization ch{draw_channel(cfg_.channel, rng), sigma2_, cfg_.channel};
    const CVector yhat = matched_filter(transmit(x, ch, rng), ch.h);
    const Detection det = detect(yhat, kc, cfg_.tpmd, rng);

    out.bits = static_cast<std::uint32_t>(bits.size());
    for (const auto& br : det.branches) {
      if (!br.erased) out.iterations.push_back(br.iters_used);
    }
    if (det.erased()) {
      out.erased = true;
      out.bit_errors = out.bits;
    } else {
      out.bit_errors = count_errors(bits, demap_branches(det.sliced_block(), kc));
    }
    return out;
  }

  BlockOutcome viterbi_block(Rng& rng) const {
    BlockOutcome out;
    const std::size_t coded_bits = cfg_.block_symbols * psk_.bits_per_symbol();
    const std::size_t msg_bits = coded_bits / 2 - ConvCode::flush_bits;
    const Bits msg = random_bits(msg_bits, rng);
    const CVector x = psk_modulate(conv_encode(msg), psk_);
    const ChannelRealization ch{draw_channel(cfg_.channel, rng), sigma2_, cfg_.channel};
    const CVector y = transmit(x, ch, rng);

    Bits decoded;
    if (cfg_.pipeline == Pipeline::viterbi_hard || sigma2_ == 0.0) {
      decoded = viterbi_decode(psk_hard_demod(y, ch.h, psk_), cfg_.traceback_depth);
    } else {
      decoded = viterbi_decode(psk_soft_demod(y, ch.h, sigma2_, psk_), cfg_.traceback_depth);
    }
    out.bits = static_cast<std::uint32_t>(msg_bits);
    out.bit_errors = count_errors(msg, decoded);
    return out;
  }

  const SimConfig& cfg_;
  double sigma2_;
  ConstellationSet psk_;
};

void simulate_batch(const BlockSimulator& sim, std::uint64_t master, std::size_t point,
                    std::uint64_t first_block, std::vector<BlockOutcome>& batch,
                    unsigned workers) {
  const auto run = [&](std::size_t i) {
    batch[i] = sim(derive_seed(master, {point, first_block + i}));
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < batch.size(); ++i) run(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < batch.size(); i = next++) run(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::kron_rod: return "kron_rod";
    case Pipeline::viterbi_hard: return "viterbi_hard";
    case Pipeline::viterbi_soft: return "viterbi_soft";
    case Pipeline::normal_approx: return "normal_approx";
  }
  return "unknown";
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.ebn0_grid_db.empty()) {
    throw Error(Errc::invalid_config, "Eb/N0 grid is empty");
  }
  if (cfg.stop.min_bit_errors < 1) {
    throw Error(Errc::invalid_config, "min_bit_errors must be at least 1");
  }
  if (cfg.workers < 1) throw Error(Errc::invalid_config, "workers must be at least 1");
  if (cfg.sigma2_override && *cfg.sigma2_override < 0.0) {
    throw Error(Errc::invalid_config, "sigma2_override must be non-negative");
  }
  switch (cfg.pipeline) {
    case Pipeline::kron_rod:
      if (!cfg.kron) {
        throw Error(Errc::invalid_config, "pipeline kron_rod needs a Kronecker configuration");
      }
      if (!cfg.kron->pilot_enabled()) {
        throw Error(Errc::invalid_config, "pipeline kron_rod needs pilot = true");
      }
      validate(cfg.tpmd);
      if (payload_bits_per_block(*cfg.kron) == 0) {
        throw Error(Errc::invalid_config, "configuration carries no payload bits");
      }
      break;
    case Pipeline::viterbi_hard:
    case Pipeline::viterbi_soft: {
      if (cfg.psk_order < 2 || !is_power_of_two(cfg.psk_order)) {
        throw Error(Errc::invalid_config, "psk_order must be a power of two >= 2");
      }
      const std::size_t coded = cfg.block_symbols * log2_exact(cfg.psk_order);
      if (coded % 2 != 0 || coded / 2 <= ConvCode::flush_bits) {
        throw Error(Errc::invalid_config,
                    "block_symbols * log2(psk_order) must be even and exceed the flush tail");
      }
      break;
    }
    case Pipeline::normal_approx:
      if (!(cfg.bound_rate > 0.0)) throw Error(Errc::invalid_config, "rate must be positive");
      if (cfg.block_symbols < 1) throw Error(Errc::invalid_config, "block_symbols must be >= 1");
      break;
  }
}

double nominal_bit_rate(const SimConfig& cfg) {
  switch (cfg.pipeline) {
    case Pipeline::kron_rod: return bit_rate(*cfg.kron);
    case Pipeline::viterbi_hard:
    case Pipeline::viterbi_soft: return 0.5 * log2_exact(cfg.psk_order);
    case Pipeline::normal_approx: return cfg.bound_rate;
  }
  return 0.0;
}

std::size_t decoding_delay(const SimConfig& cfg) {
  switch (cfg.pipeline) {
    case Pipeline::kron_rod: return cfg.kron ? cfg.kron->block_length() : 0;
    case Pipeline::viterbi_hard:
    case Pipeline::viterbi_soft: return ConvCode::nominal_traceback;
    case Pipeline::normal_approx: return cfg.block_symbols;
  }
  return 0;
}

double BerStat::mean_iters() const noexcept {
  return iteration_runs ? double(iterations_total) / double(iteration_runs) : 0.0;
}

unsigned BerStat::median_iters() const noexcept {
  if (iteration_runs == 0) return 0;
  const std::uint64_t half = (iteration_runs + 1) / 2;
  std::uint64_t seen = 0;
  for (std::size_t k = 0; k < iteration_histogram.size(); ++k) {
    seen += iteration_histogram[k];
    if (seen >= half) return static_cast<unsigned>(k);
  }
  return 0;
}

unsigned BerStat::max_iters() const noexcept {
  for (std::size_t k = iteration_histogram.size(); k-- > 0;) {
    if (iteration_histogram[k]) return static_cast<unsigned>(k);
  }
  return 0;
}

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = double(trials);
  const double p = double(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {errors == 0 ? 0.0 : std::max(0.0, centre - half),
          errors == trials ? 1.0 : std::min(1.0, centre + half)};
}

BerStat run_point(const SimConfig& cfg, double ebn0_db, std::size_t point_index) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  BerStat st;
  st.ebn0_db = ebn0_db;
  const double rate = nominal_bit_rate(cfg);
  st.sigma2 = cfg.sigma2_override ? *cfg.sigma2_override : calibrate_noise(ebn0_db, rate);

  if (cfg.pipeline == Pipeline::normal_approx) {
    const double snr = 1.0 / st.sigma2;
    const double eps = cfg.channel == ChannelModel::awgn
                           ? normal_approximation(cfg.block_symbols, cfg.bound_rate, snr)
                           : normal_approximation_rayleigh(cfg.block_symbols, cfg.bound_rate, snr);
    st.ber = cfg.bound_ber_proxy ? 0.5 * eps : eps;
    st.ci_low = st.ci_high = st.ber;
    return st;
  }

  const BlockSimulator sim(cfg, st.sigma2);
  const std::size_t batch_size = 256 * std::size_t(cfg.workers);
  std::vector<BlockOutcome> batch;
  bool done = false;
  while (!done) {
    batch.assign(batch_size, BlockOutcome{});
    simulate_batch(sim, cfg.master_seed, point_index, st.blocks_sent, batch, cfg.workers);
    for (const auto& b : batch) {
      if (st.bits_sent + b.bits > cfg.stop.max_bits) {
        st.hit_max_bits = true;
        done = true;
        break;
      }
      st.bits_sent += b.bits;
      st.bit_errors += b.bit_errors;
      st.blocks_sent += 1;
      st.block_errors += b.bit_errors > 0;
      st.erasures += b.erased;
      for (auto it : b.iterations) {
        if (st.iteration_histogram.size() <= it) st.iteration_histogram.resize(std::size_t(it) + 1, 0);
        ++st.iteration_histogram[it];
        ++st.iteration_runs;
        st.iterations_total += it;
      }
      if (st.bit_errors >= cfg.stop.min_bit_errors) {
        done = true;
        break;
      }
    }
  }
  if (st.bit_errors < cfg.stop.min_bit_errors) st.hit_max_bits = true;
  st.ber = st.bits_sent ? double(st.bit_errors) / double(st.bits_sent) : 0.0;
  const auto ci = wilson_interval(st.bit_errors, st.bits_sent);
  st.ci_low = ci.low;
  st.ci_high = ci.high;
  if (cfg.record_wall_time) {
    st.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  log_message(LogLevel::info,
              cfg.name + " Eb/N0=" + fmt("%.2f", ebn0_db) + " dB ber=" + fmt("%.3e", st.ber) +
                  " errors=" + std::to_string(st.bit_errors) +
                  " bits=" + std::to_string(st.bits_sent));
  return st;
}

Sweep run_sweep(const SimConfig& cfg) {
  validate(cfg);
  Sweep sw;
  sw.metadata.push_back("name=" + cfg.name);
  sw.metadata.push_back("pipeline=" + pipeline_name(cfg.pipeline));
  sw.metadata.push_back(std::string("channel=") +
                        (cfg.channel == ChannelModel::awgn ? "awgn" : "rayleigh"));
  sw.metadata.push_back("seed=" + std::to_string(cfg.master_seed));
  sw.metadata.push_back("nominal_bit_rate=" + fmt("%.6g", nominal_bit_rate(cfg)));
  sw.metadata.push_back("decoding_delay=" + std::to_string(decoding_delay(cfg)));
  if (cfg.pipeline == Pipeline::kron_rod) {
    const auto& k = *cfg.kron;
    sw.metadata.push_back("block_length=" + std::to_string(k.block_length()));
    sw.metadata.push_back("payload_bits=" + std::to_string(payload_bits_per_block(k)));
    sw.metadata.push_back("effective_bit_rate=" + fmt("%.6g", effective_bit_rate(k)));
    sw.metadata.push_back("code_rate=" + fmt("%.6g", code_rate(k)));
    const auto fl = flops_estimate(k, cfg.tpmd);
    sw.metadata.push_back("flops_estimate=" + fmt("%.0f", fl.flops) +
                          (fl.uniform_lengths ? "" : " (generalized, non-uniform lengths)"));
  } else if (cfg.pipeline != Pipeline::normal_approx) {
    const std::size_t msg = cfg.block_symbols * log2_exact(cfg.psk_order) / 2 - ConvCode::flush_bits;
    sw.metadata.push_back("message_bits=" + std::to_string(msg));
    sw.metadata.push_back("terminated_code_rate=" + fmt("%.6g", ConvCode::terminated_rate(msg)));
    sw.metadata.push_back("effective_bit_rate=" +
                          fmt("%.6g", double(msg) / double(cfg.block_symbols)));
  } else {
    sw.metadata.push_back(std::string("ber_column=") +
                          (cfg.bound_ber_proxy ? "epsilon/2 (heuristic BER proxy)"
                                               : "block error probability"));
  }
  for (std::size_t p = 0; p < cfg.ebn0_grid_db.size(); ++p) {
    sw.points.push_back(run_point(cfg, cfg.ebn0_grid_db[p], p));
  }
  return sw;
}

void write_csv(std::ostream& out, const Sweep& sweep) {
  for (const auto& m : sweep.metadata) out << "# " << m << '\n';
  out << "ebn0_db,ber,bit_errors,bits_sent,block_errors,blocks_sent,ci_low,ci_high,"
         "mean_iters,wall_s\n";
  for (const auto& p : sweep.points) {
    out << fmt("%.4f", p.ebn0_db) << ',' << fmt("%.6e", p.ber) << ',' << p.bit_errors << ','
        << p.bits_sent << ',' << p.block_errors << ',' << p.blocks_sent << ','
        << fmt("%.6e", p.ci_low) << ',' << fmt("%.6e", p.ci_high) << ','
        << fmt("%.4f", p.mean_iters()) << ',' << fmt("%.3f", p.wall_s) << '\n';
  }
}

std::vector<CurvePoint> curve_of(const Sweep& sweep) {
  std::vector<CurvePoint> c;
  c.reserve(sweep.points.size());
  for (const auto& p : sweep.points) c.push_back({p.ebn0_db, p.ber});
  return c;
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
  std::vector<CurvePoint> c;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("ebn0_db,ber", 0) != 0) {
        throw Error(Errc::invalid_argument, "CSV header must start with ebn0_db,ber");
      }
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) {
      throw Error(Errc::invalid_argument, "malformed CSV row: " + line);
    }
    c.push_back({std::stod(a), std::stod(b)});
  }
  return c;
}

double ebn0_at_ber(const std::vector<CurvePoint>& curve, double target_ber) {
  if (!(target_ber > 0.0)) throw Error(Errc::domain, "target BER must be positive");
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& a = curve[i];
    const auto& b = curve[i + 1];
    if (a.ber >= target_ber && b.ber <= target_ber && a.ber > 0.0 && b.ber > 0.0) {
      if (a.ber == b.ber) return a.ebn0_db;
      const double la = std::log10(a.ber);
      const double lb = std::log10(b.ber);
      const double frac = (std::log10(target_ber) - la) / (lb - la);
      return a.ebn0_db + frac * (b.ebn0_db - a.ebn0_db);
    }
  }
  throw Error(Errc::extrapolation, "curve does not bracket the target BER");
}

double gain_at_ber(const std::vector<CurvePoint>& a, const std::vector<CurvePoint>& b,
                   double target_ber) {
  return ebn0_at_ber(b, target_ber) - ebn0_at_ber(a, target_ber);
}

}  // namespace kronrod
