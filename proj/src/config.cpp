#include "kronrod/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "kronrod/error.hpp"

namespace kronrod {
namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name",           "description",     "pipeline",       "scheme",
      "M",              "factors",         "N",              "lengths",
      "assignments",    "pilot",           "channel",        "ebn0_db",
      "min_bit_errors", "max_bits",        "seed",           "workers",
      "tpmd.max_iters", "tpmd.tol",        "tpmd.init",      "psk_order",
      "block_symbols",  "traceback_depth", "rate",           "bound_ber_proxy",
      "sigma2_override", "record_wall_time"};
  return keys;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::invalid_config, msg); }

template <class T>
T get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("key '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? get<T>(doc, key) : fallback;
}

std::uint64_t get_count(const json& doc, const char* key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float() && v.get<double>() >= 0.0 &&
      v.get<double>() == std::floor(v.get<double>())) {
    return static_cast<std::uint64_t>(v.get<double>());
  }
  bad(std::string("key '") + key + "' must be a non-negative integer");
}

Pipeline parse_pipeline(const std::string& s) {
  if (s == "kron_rod") return Pipeline::kron_rod;
  if (s == "viterbi_hard") return Pipeline::viterbi_hard;
  if (s == "viterbi_soft") return Pipeline::viterbi_soft;
  if (s == "normal_approx") return Pipeline::normal_approx;
  bad("unknown pipeline '" + s + "'");
}

KronConfig parse_kron(const json& doc) {
  const int scheme_id = get<int>(doc, "scheme");
  SchemeSpec spec;
  if (scheme_id == 1) {
    spec.scheme = Scheme::one;
    spec.base_cardinality = get<unsigned>(doc, "M");
  } else if (scheme_id == 2) {
    spec.scheme = Scheme::two;
    spec.factor_cardinalities = get<std::vector<unsigned>>(doc, "factors");
    spec.base_cardinality = get_or<unsigned>(doc, "M", 0);
  } else {
    bad("scheme must be 1 or 2");
  }
  if (scheme_id == 1 && doc.contains("factors")) bad("'factors' applies to scheme 2 only");

  const auto lengths = get<std::vector<std::size_t>>(doc, "lengths");
  if (doc.contains("N") && get<std::size_t>(doc, "N") != lengths.size()) {
    bad("N does not match the number of lengths");
  }
  const bool pilot = get_or<bool>(doc, "pilot", true);

  if (!doc.contains("assignments")) {
    return make_kron_config(spec, lengths, std::nullopt, pilot);
  }
  const auto& arr = doc.at("assignments");
  if (!arr.is_array()) bad("'assignments' must be a list");
  const auto sets = scheme_sets(spec);
  std::vector<ConstellationSet> assigned;
  for (const auto& a : arr) {
    if (a.is_number_integer()) {
      if (a.get<std::int64_t>() < 0) bad("assignment index must be non-negative");
      const auto i = a.get<std::size_t>();
      if (i >= sets.size()) bad("assignment index out of range for the scheme");
      assigned.push_back(sets[i]);
    } else if (a.is_object()) {
      for (const auto& [k, v] : a.items()) {
        if (k != "psk" && k != "rotation") bad("unknown assignment descriptor key '" + k + "'");
      }
      assigned.push_back(make_psk(get<unsigned>(a, "psk"), get_or<double>(a, "rotation", 0.0)));
    } else {
      bad("assignment entries must be indices or {\"psk\": M} descriptors");
    }
  }
  return KronConfig(lengths, std::move(assigned), pilot, spec.scheme);
}

}  // namespace

SimConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("configuration must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) bad("unknown key '" + key + "'");
  }
  try {
    SimConfig cfg;
    cfg.name = get_or<std::string>(doc, "name", "");
    cfg.description = get_or<std::string>(doc, "description", "");
    cfg.pipeline = parse_pipeline(get_or<std::string>(doc, "pipeline", "kron_rod"));

    const auto channel = get_or<std::string>(doc, "channel", "awgn");
    if (channel == "awgn") {
      cfg.channel = ChannelModel::awgn;
    } else if (channel == "rayleigh") {
      cfg.channel = ChannelModel::rayleigh_flat;
    } else {
      bad("channel must be 'awgn' or 'rayleigh'");
    }

    cfg.ebn0_grid_db = get<std::vector<double>>(doc, "ebn0_db");
    cfg.stop.min_bit_errors = get_count(doc, "min_bit_errors", cfg.stop.min_bit_errors);
    cfg.stop.max_bits = get_count(doc, "max_bits", cfg.stop.max_bits);
    cfg.master_seed = get_count(doc, "seed", cfg.master_seed);
    cfg.workers = static_cast<unsigned>(get_count(doc, "workers", cfg.workers));

    cfg.tpmd.max_iters = static_cast<unsigned>(get_count(doc, "tpmd.max_iters", cfg.tpmd.max_iters));
    cfg.tpmd.tol = get_or<double>(doc, "tpmd.tol", cfg.tpmd.tol);
    const auto init = get_or<std::string>(doc, "tpmd.init", "random");
    if (init == "random") {
      cfg.tpmd.init = InitMode::random_alphabet;
    } else if (init == "ones") {
      cfg.tpmd.init = InitMode::all_ones;
    } else {
      bad("tpmd.init must be 'random' or 'ones'");
    }

    cfg.psk_order = static_cast<unsigned>(get_count(doc, "psk_order", cfg.psk_order));
    cfg.block_symbols = get_count(doc, "block_symbols", cfg.block_symbols);
    cfg.traceback_depth = get_count(doc, "traceback_depth", cfg.traceback_depth);
    cfg.bound_rate = get_or<double>(doc, "rate", cfg.bound_rate);
    cfg.bound_ber_proxy = get_or<bool>(doc, "bound_ber_proxy", false);
    if (doc.contains("sigma2_override")) {
      cfg.sigma2_override = get<double>(doc, "sigma2_override");
    }
    cfg.record_wall_time = get_or<bool>(doc, "record_wall_time", true);

    if (cfg.pipeline == Pipeline::kron_rod) {
      cfg.kron = parse_kron(doc);
    } else if (doc.contains("scheme") || doc.contains("lengths")) {
      bad("Kronecker keys are only valid with pipeline kron_rod");
    }
    validate(cfg);
    return cfg;
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_config) throw;
    throw Error(Errc::invalid_config, e.what());
  }
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ConstellationSet& set) {
  json points = json::array();
  for (const auto& p : set.points()) points.push_back({p.real(), p.imag()});
  json labels = json::array();
  const unsigned k = set.bits_per_symbol();
  for (auto lab : set.labels()) {
    std::string bits;
    for (unsigned b = k; b-- > 0;) bits.push_back(((lab >> b) & 1u) ? '1' : '0');
    labels.push_back(bits);
  }
  return {{"cardinality", set.size()}, {"points", points}, {"labels", labels}};
}

json describe_scheme(const SchemeSpec& spec) {
  const auto sets = scheme_sets(spec);
  json factors = json::array();
  for (const auto& s : sets) factors.push_back(to_json(s));
  json cards = json::array();
  for (const auto& s : sets) cards.push_back(s.size());
  return {{"scheme", spec.scheme == Scheme::one ? 1 : 2},
          {"M", spec.scheme == Scheme::one ? spec.base_cardinality : kron_expand(sets).size()},
          {"factor_cardinalities", cards},
          {"factors", factors},
          {"expansion", to_json(kron_expand(sets))}};
}

}  // namespace kronrod
