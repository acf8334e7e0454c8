// kronrod: command-line front end for the Kronecker-RoD simulation toolkit.
//
//   kronrod simulate --config cfg.json --out ber.csv [--workers N] [--seed S]
//   kronrod bound --n 16 --rate 1 --snr-grid 1 2 4 [--channel rayleigh]
//   kronrod constellation --scheme 1 --m 8 --dump sets.json
//   kronrod constellation --scheme 2 --factors 2 4 8 --dump sets.json
//   kronrod gain --a tpmd4.csv --b viterbi.csv --ber 1e-2

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kronrod/baselines.hpp"
#include "kronrod/config.hpp"
#include "kronrod/error.hpp"
#include "kronrod/sim_harness.hpp"

namespace {

using namespace kronrod;

int fail(std::string_view kind, std::string_view message, int code) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot write " + path);
  return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 unsigned workers, std::optional<std::uint64_t> seed) {
  SimConfig cfg = load_config(config_path);
  if (workers > 0) cfg.workers = workers;
  if (seed) cfg.master_seed = *seed;

  const auto start = std::chrono::steady_clock::now();
  const Sweep sweep = run_sweep(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto out = open_out(out_path);
  write_csv(out, sweep);

  std::uint64_t blocks = 0;
  for (const auto& p : sweep.points) blocks += p.blocks_sent;
  std::cout << "wrote " << sweep.points.size() << " points to " << out_path << '\n';
  if (cfg.pipeline == Pipeline::kron_rod) {
    const auto fl = flops_estimate(*cfg.kron, cfg.tpmd);
    std::printf("predicted detector cost: %.0f flops/block%s; measured %.3f s for %llu blocks\n",
                fl.flops, fl.uniform_lengths ? "" : " (generalized)", wall,
                static_cast<unsigned long long>(blocks));
  }
  return 0;
}

int cmd_bound(std::size_t n, double rate, const std::vector<double>& snrs,
              const std::string& channel, const std::string& out_path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "snr,epsilon\n";
  for (double snr : snrs) {
    const double eps = channel == "rayleigh" ? normal_approximation_rayleigh(n, rate, snr)
                                             : normal_approximation(n, rate, snr);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6g,%.6e\n", snr, eps);
    *out << buf;
  }
  return 0;
}

int cmd_constellation(int scheme, unsigned m, const std::vector<unsigned>& factors,
                      const std::string& dump_path) {
  SchemeSpec spec;
  if (scheme == 1) {
    spec.scheme = Scheme::one;
    spec.base_cardinality = m;
  } else {
    spec.scheme = Scheme::two;
    spec.base_cardinality = m;
    spec.factor_cardinalities = factors;
  }
  const auto doc = describe_scheme(spec).dump(2);
  if (dump_path.empty() || dump_path == "-") {
    std::cout << doc << '\n';
  } else {
    open_out(dump_path) << doc << '\n';
  }
  return 0;
}

int cmd_gain(const std::string& a_path, const std::string& b_path, double ber) {
  std::ifstream a(a_path), b(b_path);
  if (!a || !b) throw Error(Errc::invalid_argument, "cannot open input CSV");
  const double g = gain_at_ber(read_curve_csv(a), read_curve_csv(b), ber);
  std::printf("%.4f\n", g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker-structured PSK coding and rank-one detection simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  unsigned workers = 0;
  std::uint64_t seed_value = 0;
  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo BER sweep");
  sim->add_option("--config", config_path, "JSON configuration file")->required();
  sim->add_option("--out", out_path, "Output CSV path")->required();
  sim->add_option("--workers", workers, "Override the worker count");
  auto* seed_opt = sim->add_option("--seed", seed_value, "Override the master seed");

  std::size_t n = 16;
  double rate = 1.0;
  std::vector<double> snrs;
  std::string channel = "awgn", bound_out;
  auto* bound = app.add_subcommand("bound", "Evaluate the normal approximation");
  bound->add_option("--n", n, "Blocklength in channel uses")->required();
  bound->add_option("--rate", rate, "Rate in bits per channel use")->required();
  bound->add_option("--snr-grid", snrs, "Linear SNR values")->required();
  bound->add_option("--channel", channel, "awgn or rayleigh")
      ->check(CLI::IsMember({"awgn", "rayleigh"}));
  bound->add_option("--out", bound_out, "Output CSV path (default stdout)");

  int scheme = 1;
  unsigned m = 0;
  std::vector<unsigned> factors;
  std::string dump_path;
  auto* cons = app.add_subcommand("constellation", "Dump factor sets and their expansion");
  cons->add_option("--scheme", scheme, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  cons->add_option("--m", m, "Target PSK order (scheme 1) or factor bound (scheme 2)");
  cons->add_option("--factors", factors, "Scheme 2 factor orders");
  cons->add_option("--dump", dump_path, "Output JSON path ('-' for stdout)");

  std::string a_path, b_path;
  double target = 1e-2;
  auto* gain = app.add_subcommand("gain", "Eb/N0 gain of curve a over curve b");
  gain->add_option("--a", a_path, "CSV of curve a")->required();
  gain->add_option("--b", b_path, "CSV of curve b")->required();
  gain->add_option("--ber", target, "Target BER")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) {
      return cmd_simulate(config_path, out_path, workers,
                          *seed_opt ? std::optional(seed_value) : std::nullopt);
    }
    if (*bound) return cmd_bound(n, rate, snrs, channel, bound_out);
    if (*cons) {
      if (scheme == 1 && m == 0) throw Error(Errc::invalid_argument, "--m is required for scheme 1");
      if (scheme == 2 && factors.empty()) {
        throw Error(Errc::invalid_argument, "--factors is required for scheme 2");
      }
      return cmd_constellation(scheme, m, factors, dump_path);
    }
    if (*gain) return cmd_gain(a_path, b_path, target);
  } catch (const Error& e) {
    return fail(errc_name(e.code()), e.what(), e.code() == Errc::invalid_config ? 2 : 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
