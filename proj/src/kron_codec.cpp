#include "kronrod/kron_codec.hpp"

#include <string>

#include "kronrod/error.hpp"
#include "kronrod/tensor.hpp"

namespace kronrod {

KronConfig::KronConfig(std::vector<std::size_t> lengths,
                       std::vector<ConstellationSet> assignments, bool pilot_enabled,
                       std::optional<Scheme> scheme)
    : lengths_(std::move(lengths)),
      sets_(std::move(assignments)),
      pilot_(pilot_enabled),
      scheme_(scheme),
      block_length_(1) {
  if (lengths_.size() < 2) {
    throw Error(Errc::invalid_config, "a Kronecker code needs at least two branches");
  }
  if (sets_.size() != lengths_.size()) {
    throw Error(Errc::invalid_config, "need exactly one constellation set per branch");
  }
  for (std::size_t n = 0; n < lengths_.size(); ++n) {
    if (lengths_[n] < 2) {
      throw Error(Errc::invalid_config, "branch " + std::to_string(n) +
                                            " length must be at least 2");
    }
    if (sets_[n].size() < 2) {
      throw Error(Errc::invalid_config, "branch " + std::to_string(n) +
                                            " set needs at least two points");
    }
    block_length_ *= lengths_[n];
  }
}

std::vector<std::size_t> default_assignment(std::size_t branches, std::size_t sets) {
  if (sets == 0 || branches < sets) {
    throw Error(Errc::invalid_config,
                "default assignment needs N >= P (got N=" + std::to_string(branches) +
                    ", P=" + std::to_string(sets) + ")");
  }
  std::vector<std::size_t> out(branches, 0);
  const std::size_t repeats = branches - sets + 1;
  for (std::size_t n = repeats; n < branches; ++n) out[n] = n - repeats + 1;
  return out;
}

KronConfig make_kron_config(const SchemeSpec& scheme, std::vector<std::size_t> lengths,
                            std::optional<std::vector<std::size_t>> assignment,
                            bool pilot_enabled) {
  const auto sets = scheme_sets(scheme);
  const auto idx = assignment ? *assignment : default_assignment(lengths.size(), sets.size());
  if (idx.size() != lengths.size()) {
    throw Error(Errc::invalid_config, "assignment length must equal the branch count");
  }
  std::vector<ConstellationSet> assigned;
  assigned.reserve(idx.size());
  for (auto i : idx) {
    if (i >= sets.size()) {
      throw Error(Errc::invalid_config, "assignment index " + std::to_string(i) +
                                            " exceeds the scheme's set count");
    }
    assigned.push_back(sets[i]);
  }
  return KronConfig(std::move(lengths), std::move(assigned), pilot_enabled, scheme.scheme);
}

std::size_t payload_bits_per_block(const KronConfig& cfg) {
  std::size_t bits = 0;
  for (std::size_t n = 0; n < cfg.branches(); ++n) {
    bits += cfg.payload_symbols(n) * cfg.set(n).bits_per_symbol();
  }
  return bits;
}

double bit_rate(const KronConfig& cfg) {
  std::size_t bits = 0;
  for (std::size_t n = 0; n < cfg.branches(); ++n) {
    bits += cfg.length(n) * cfg.set(n).bits_per_symbol();
  }
  return double(bits) / double(cfg.block_length());
}

double effective_bit_rate(const KronConfig& cfg) {
  return double(payload_bits_per_block(cfg)) / double(cfg.block_length());
}

double code_rate(const KronConfig& cfg) {
  std::size_t sum = 0;
  for (auto l : cfg.lengths()) sum += l;
  return double(sum) / double(cfg.block_length());
}

SymbolBlock modulate_branches(std::span<const std::uint8_t> bits, const KronConfig& cfg) {
  const auto expected = payload_bits_per_block(cfg);
  if (bits.size() != expected) {
    throw Error(Errc::length_mismatch, "expected " + std::to_string(expected) +
                                           " payload bits, got " +
                                           std::to_string(bits.size()));
  }
  SymbolBlock block;
  block.branch_symbols.reserve(cfg.branches());
  std::size_t pos = 0;
  for (std::size_t n = 0; n < cfg.branches(); ++n) {
    const auto& set = cfg.set(n);
    const unsigned k = set.bits_per_symbol();
    CVector s(cfg.length(n));
    std::size_t l = 0;
    if (cfg.pilot_enabled()) s[l++] = set.first_point();
    for (; l < s.size(); ++l) {
      std::uint32_t label = 0;
      for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[pos++] & 1u);
      s[l] = set.point(set.index_of_label(label));
    }
    block.branch_symbols.push_back(std::move(s));
  }
  return block;
}

CVector encode(const SymbolBlock& block) {
  std::vector<CVector> reversed(block.branch_symbols.rbegin(), block.branch_symbols.rend());
  return kron_vec(reversed);
}

Bits demap_branches(const SymbolBlock& block, const KronConfig& cfg) {
  if (block.branch_symbols.size() != cfg.branches()) {
    throw Error(Errc::length_mismatch, "block branch count does not match the config");
  }
  Bits out;
  out.reserve(payload_bits_per_block(cfg));
  for (std::size_t n = 0; n < cfg.branches(); ++n) {
    const auto& set = cfg.set(n);
    const auto& s = block.branch_symbols[n];
    if (s.size() != cfg.length(n)) {
      throw Error(Errc::length_mismatch, "branch vector length does not match the config");
    }
    const unsigned k = set.bits_per_symbol();
    for (std::size_t l = cfg.pilot_enabled() ? 1 : 0; l < s.size(); ++l) {
      const auto idx = set.find(s[l]);
      if (idx == set.size()) {
        throw Error(Errc::invalid_symbol, "branch " + std::to_string(n) +
                                              " holds a symbol outside its set");
      }
      const auto label = set.label(idx);
      for (unsigned b = k; b-- > 0;) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
  }
  return out;
}

}  // namespace kronrod
