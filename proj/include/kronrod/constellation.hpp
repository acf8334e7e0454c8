#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kronrod/types.hpp"

namespace kronrod {

/// Unit-modulus point set with a bijective bit labelling.
///
/// Points keep their construction order; index 0 is the "first point" used
/// as the per-branch pilot symbol. Labels are stored as integers whose
/// binary expansion (MSB first, bits_per_symbol() wide) is the bit string.
class ConstellationSet {
 public:
  // Validates every invariant: power-of-two size, unit modulus, distinct
  // points, labels a permutation of [0, size).
  ConstellationSet(CVector points, std::vector<std::uint32_t> labels);

  std::size_t size() const noexcept { return points_.size(); }
  unsigned bits_per_symbol() const noexcept { return bits_; }

  const cdouble& point(std::size_t i) const { return points_.at(i); }
  const cdouble& first_point() const noexcept { return points_.front(); }
  std::uint32_t label(std::size_t i) const { return labels_.at(i); }
  std::span<const cdouble> points() const noexcept { return points_; }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }

  std::size_t index_of_label(std::uint32_t label) const;

  // Nearest point in Euclidean distance; ties resolve to the lowest index.
  std::size_t nearest(cdouble z) const noexcept;

  // Index of an exact member (within tol), or size() when absent.
  std::size_t find(cdouble z, double tol = 1e-9) const noexcept;

  friend bool operator==(const ConstellationSet&,
                         const ConstellationSet&) = default;

 private:
  CVector points_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> index_by_label_;
  unsigned bits_ = 0;
};

enum class Scheme { one, two };

struct SchemeSpec {
  Scheme scheme = Scheme::one;
  // Scheme 1: M, the target PSK order. Scheme 2: unused (max of factors).
  unsigned base_cardinality = 2;
  // Scheme 2 only.
  std::vector<unsigned> factor_cardinalities;
};

bool is_power_of_two(unsigned m) noexcept;
unsigned log2_exact(unsigned m);

// Gray-labelled M-PSK, points e^{j(2 pi m / M + rotation)} in ascending
// phase from the rotation offset.
ConstellationSet make_psk(unsigned m, double rotation = 0.0);

// Binary factors {1, e^{j pi}}, {1, e^{j(pi + pi/2^p)}} for p = 1..log2(M)-1.
std::vector<ConstellationSet> scheme1_sets(unsigned m);

std::vector<ConstellationSet> scheme2_sets(std::span<const unsigned> cardinalities);

std::vector<ConstellationSet> scheme_sets(const SchemeSpec& spec);

// All products a_0 * a_1 * ... with near-duplicates (< 1e-9) merged. The
// result is ordered by ascending phase in [0, 2pi) and Gray labelled.
ConstellationSet kron_expand(std::span<const ConstellationSet> sets);

double min_distance(const ConstellationSet& set);

// Gaussian tail probability.
double q_function(double x) noexcept;

// Q(d_min / sqrt(2 N0)); binary sets only.
double set_error_prob(const ConstellationSet& set, double n0);

}  // namespace kronrod
