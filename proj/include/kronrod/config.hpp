#pragma once

#include <filesystem>
#include <span>

#include <json.hpp>

#include "kronrod/constellation.hpp"
#include "kronrod/sim_harness.hpp"

namespace kronrod {

/// Builds a SimConfig from a flat JSON object. Keys:
///
///   name, description                  free text
///   pipeline       "kron_rod" | "viterbi_hard" | "viterbi_soft" | "normal_approx"
///   scheme         1 | 2
///   M              scheme 1 target order; scheme 2 upper bound on factors
///   factors        scheme 2 factor orders, e.g. [4, 4]
///   N, lengths     branch count and per-branch lengths (N optional)
///   assignments    per branch: index into the scheme's sets, or
///                  {"psk": order, "rotation": radians}
///   pilot          bool, default true
///   channel        "awgn" | "rayleigh"
///   ebn0_db        list of Eb/N0 points in dB
///   min_bit_errors, max_bits, seed, workers
///   tpmd.max_iters, tpmd.tol, tpmd.init ("random" | "ones")
///   psk_order, block_symbols, traceback_depth     convolutional baselines
///   rate, bound_ber_proxy                         normal approximation
///   sigma2_override, record_wall_time
///
/// Unknown keys and ill-typed values throw Errc::invalid_config.
SimConfig parse_config(const nlohmann::json& doc);
SimConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ConstellationSet& set);

// {scheme, M, factor_cardinalities, factors: [...], expansion: {...}}
nlohmann::json describe_scheme(const SchemeSpec& spec);

}  // namespace kronrod
