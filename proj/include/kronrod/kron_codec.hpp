#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kronrod/constellation.hpp"
#include "kronrod/types.hpp"

namespace kronrod {

/// Full description of a Kronecker code: branch lengths, the factor set
/// assigned to each branch, and whether element 0 of every branch carries a
/// known pilot (the assigned set's first point).
class KronConfig {
 public:
  KronConfig(std::vector<std::size_t> lengths,
             std::vector<ConstellationSet> assignments, bool pilot_enabled = true,
             std::optional<Scheme> scheme = std::nullopt);

  std::size_t branches() const noexcept { return lengths_.size(); }
  std::span<const std::size_t> lengths() const noexcept { return lengths_; }
  std::size_t length(std::size_t n) const { return lengths_.at(n); }
  std::size_t block_length() const noexcept { return block_length_; }
  const ConstellationSet& set(std::size_t n) const { return sets_.at(n); }
  std::span<const ConstellationSet> sets() const noexcept { return sets_; }
  bool pilot_enabled() const noexcept { return pilot_; }
  std::optional<Scheme> scheme() const noexcept { return scheme_; }

  std::size_t payload_symbols(std::size_t n) const {
    return lengths_.at(n) - (pilot_ ? 1 : 0);
  }

 private:
  std::vector<std::size_t> lengths_;
  std::vector<ConstellationSet> sets_;
  bool pilot_;
  std::optional<Scheme> scheme_;
  std::size_t block_length_;
};

// Branch -> factor-set index following the repeat-the-basis pattern: the
// first N - P + 1 branches take set 0, the rest take sets 1..P-1 in order.
std::vector<std::size_t> default_assignment(std::size_t branches, std::size_t sets);

KronConfig make_kron_config(const SchemeSpec& scheme,
                            std::vector<std::size_t> lengths,
                            std::optional<std::vector<std::size_t>> assignment,
                            bool pilot_enabled = true);

struct SymbolBlock {
  std::vector<CVector> branch_symbols;  // s_1 .. s_N
  CVector coded;                        // s_N (x) ... (x) s_1, empty until encoded
};

std::size_t payload_bits_per_block(const KronConfig& cfg);

// Sum_n L_n log2 M_n / prod_n L_n, pilot positions included.
double bit_rate(const KronConfig& cfg);
// Same, counting payload symbols only.
double effective_bit_rate(const KronConfig& cfg);
double code_rate(const KronConfig& cfg);

SymbolBlock modulate_branches(std::span<const std::uint8_t> bits, const KronConfig& cfg);
CVector encode(const SymbolBlock& block);
Bits demap_branches(const SymbolBlock& block, const KronConfig& cfg);

}  // namespace kronrod
