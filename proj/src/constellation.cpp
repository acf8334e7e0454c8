#include "kronrod/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kronrod/error.hpp"

namespace kronrod {
namespace {

constexpr double kModulusTol = 1e-12;
constexpr double kMergeTol = 1e-9;

std::uint32_t gray(std::uint32_t m) noexcept { return m ^ (m >> 1); }

// Phase folded into [0, 2pi), with values a hair below 2pi mapped to 0.
double wrapped_phase(cdouble z) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double ph = std::arg(z);
  if (ph < 0.0) ph += two_pi;
  if (ph >= two_pi - 1e-12) ph = 0.0;
  return ph;
}

}  // namespace

bool is_power_of_two(unsigned m) noexcept { return m != 0 && (m & (m - 1)) == 0; }

unsigned log2_exact(unsigned m) {
  if (!is_power_of_two(m)) {
    throw Error(Errc::invalid_cardinality,
                "cardinality " + std::to_string(m) + " is not a power of two");
  }
  unsigned k = 0;
  while ((1u << k) < m) ++k;
  return k;
}

ConstellationSet::ConstellationSet(CVector points,
                                   std::vector<std::uint32_t> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  const auto m = static_cast<unsigned>(points_.size());
  if (m < 1 || !is_power_of_two(m)) {
    throw Error(Errc::invalid_cardinality,
                "constellation size " + std::to_string(m) +
                    " is not a power of two");
  }
  bits_ = log2_exact(m);
  if (labels_.size() != points_.size()) {
    throw Error(Errc::invalid_argument, "label count differs from point count");
  }
  for (const auto& p : points_) {
    if (std::abs(std::abs(p) - 1.0) >= kModulusTol) {
      throw Error(Errc::invalid_argument, "constellation point is not unit modulus");
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t k = i + 1; k < points_.size(); ++k) {
      if (std::abs(points_[i] - points_[k]) < kMergeTol) {
        throw Error(Errc::invalid_argument, "constellation points are not distinct");
      }
    }
  }
  index_by_label_.assign(m, m);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto lab = labels_[i];
    if (lab >= m || index_by_label_[lab] != m) {
      throw Error(Errc::invalid_argument, "bit labels are not a bijection");
    }
    index_by_label_[lab] = i;
  }
}

std::size_t ConstellationSet::index_of_label(std::uint32_t label) const {
  if (label >= index_by_label_.size()) {
    throw Error(Errc::invalid_argument, "label out of range");
  }
  return index_by_label_[label];
}

std::size_t ConstellationSet::nearest(cdouble z) const noexcept {
  std::size_t best = 0;
  double best_d = std::norm(z - points_[0]);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double d = std::norm(z - points_[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t ConstellationSet::find(cdouble z, double tol) const noexcept {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(z - points_[i]) < tol) return i;
  }
  return points_.size();
}

ConstellationSet make_psk(unsigned m, double rotation) {
  if (m < 2 || !is_power_of_two(m)) {
    throw Error(Errc::invalid_cardinality,
                "PSK order " + std::to_string(m) + " must be a power of two >= 2");
  }
  CVector points(m);
  std::vector<std::uint32_t> labels(m);
  for (unsigned k = 0; k < m; ++k) {
    points[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / m + rotation);
    labels[k] = gray(k);
  }
  return {std::move(points), std::move(labels)};
}

std::vector<ConstellationSet> scheme1_sets(unsigned m) {
  const unsigned p_count = [&] {
    if (m < 2) {
      throw Error(Errc::invalid_cardinality, "scheme 1 needs M >= 2");
    }
    return log2_exact(m);
  }();
  std::vector<ConstellationSet> sets;
  sets.reserve(p_count);
  sets.push_back(make_psk(2, 0.0));
  for (unsigned p = 1; p < p_count; ++p) {
    const double angle = std::numbers::pi + std::numbers::pi / double(1u << p);
    sets.emplace_back(CVector{1.0, std::polar(1.0, angle)},
                      std::vector<std::uint32_t>{0, 1});
  }
  return sets;
}

std::vector<ConstellationSet> scheme2_sets(std::span<const unsigned> cardinalities) {
  if (cardinalities.empty()) {
    throw Error(Errc::invalid_argument, "scheme 2 needs at least one factor");
  }
  std::vector<ConstellationSet> sets;
  sets.reserve(cardinalities.size());
  for (unsigned m : cardinalities) sets.push_back(make_psk(m, 0.0));
  return sets;
}

std::vector<ConstellationSet> scheme_sets(const SchemeSpec& spec) {
  if (spec.scheme == Scheme::one) return scheme1_sets(spec.base_cardinality);
  const auto sets = scheme2_sets(spec.factor_cardinalities);
  if (spec.base_cardinality > 2) {
    for (unsigned mp : spec.factor_cardinalities) {
      if (mp > spec.base_cardinality) {
        throw Error(Errc::invalid_cardinality,
                    "scheme 2 factor order exceeds the base cardinality");
      }
    }
  }
  return sets;
}

ConstellationSet kron_expand(std::span<const ConstellationSet> sets) {
  if (sets.empty()) {
    throw Error(Errc::invalid_argument, "kron_expand needs at least one set");
  }
  CVector acc{cdouble{1.0, 0.0}};
  for (const auto& set : sets) {
    CVector next;
    next.reserve(acc.size() * set.size());
    for (const auto& a : acc) {
      for (const auto& b : set.points()) {
        const cdouble prod = a * b;
        const bool seen = std::any_of(next.begin(), next.end(), [&](cdouble q) {
          return std::abs(q - prod) < kMergeTol;
        });
        if (!seen) next.push_back(prod / std::abs(prod));
      }
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end(), [](cdouble a, cdouble b) {
    return wrapped_phase(a) < wrapped_phase(b);
  });
  std::vector<std::uint32_t> labels(acc.size());
  for (std::uint32_t k = 0; k < labels.size(); ++k) labels[k] = gray(k);
  return {std::move(acc), std::move(labels)};
}

double min_distance(const ConstellationSet& set) {
  if (set.size() < 2) {
    throw Error(Errc::undefined_distance, "minimum distance needs two points");
  }
  double best = std::numeric_limits<double>::infinity();
  const auto pts = set.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      best = std::min(best, std::abs(pts[i] - pts[k]));
    }
  }
  return best;
}

double q_function(double x) noexcept {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double set_error_prob(const ConstellationSet& set, double n0) {
  if (set.size() != 2) {
    throw Error(Errc::unsupported_cardinality,
                "closed-form factor error probability is defined for binary sets");
  }
  if (!(n0 > 0.0)) {
    throw Error(Errc::domain, "N0 must be positive");
  }
  return q_function(min_distance(set) / std::sqrt(2.0 * n0));
}

}  // namespace kronrod
