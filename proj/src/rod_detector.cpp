#include "kronrod/rod_detector.hpp"

#include <cmath>
#include <string>

#include "kronrod/channel.hpp"
#include "kronrod/error.hpp"

namespace kronrod {
namespace {

constexpr double kNullTol = 1e-14;
constexpr double kPilotTol = 1e-9;

CVector normalized(CVector v) {
  const double n = std::sqrt(norm2(v));
  for (auto& z : v) z /= n;
  return v;
}

CVector random_unit(std::size_t n, Rng& rng) {
  CVector v(n);
  do {
    for (auto& z : v) z = complex_gaussian(rng, 1.0);
  } while (norm2(v) == 0.0);
  return normalized(std::move(v));
}

}  // namespace

void validate(const TpmdSettings& settings) {
  if (settings.max_iters < 1) {
    throw Error(Errc::invalid_config, "tpmd.max_iters must be at least 1");
  }
  if (!(settings.tol > 0.0)) {
    throw Error(Errc::invalid_config, "tpmd.tol must be positive");
  }
}

PowerIteration tpmd_branch(const ComplexMatrix& a, const TpmdSettings& settings,
                           std::span<const cdouble> init, Rng& rng) {
  validate(settings);
  if (a.rows() != a.cols() || init.size() != a.rows()) {
    throw Error(Errc::shape_mismatch, "Gramian and initial vector sizes disagree");
  }
  const double a_norm = a.frobenius_norm();
  if (a_norm == 0.0) {
    throw Error(Errc::degenerate_input, "mode Gramian is identically zero");
  }

  PowerIteration out;
  out.u = norm2(init) > 0.0 ? normalized(CVector(init.begin(), init.end()))
                            : random_unit(init.size(), rng);
  const unsigned halfway = (settings.max_iters + 1) / 2;
  const double stagnation = std::sqrt(settings.tol);

  for (unsigned j = 1; j <= settings.max_iters; ++j) {
    out.iterations = j;
    CVector v = a.multiply(out.u);
    const double nv = std::sqrt(norm2(v));
    if (nv <= kNullTol * a_norm) {
      // Iterate lies in the null space of A.
      out.u = random_unit(v.size(), rng);
      continue;
    }
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] /= nv;
      err += std::norm(v[i] - out.u[i]);
    }
    out.u = std::move(v);
    if (err <= settings.tol) {
      out.converged = true;
      return out;
    }
    if (j == halfway && j < settings.max_iters && !out.reinitialized && err > stagnation) {
      out.u = random_unit(out.u.size(), rng);
      out.reinitialized = true;
    }
  }
  return out;
}

ScaleResolution resolve_scale(std::span<const cdouble> u, const ConstellationSet& set) {
  if (u.empty() || std::abs(u[0]) < kPilotTol) {
    throw Error(Errc::pilot_erasure, "pilot element of the branch estimate vanished");
  }
  ScaleResolution r;
  r.beta = u[0] / set.first_point();
  r.s_hat.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r.s_hat[i] = u[i] / r.beta;
  r.s_hat[0] = set.first_point();
  return r;
}

CVector slice(std::span<const cdouble> s_hat, const ConstellationSet& set) {
  CVector out(s_hat.size());
  for (std::size_t i = 0; i < s_hat.size(); ++i) out[i] = set.point(set.nearest(s_hat[i]));
  return out;
}

bool Detection::erased() const noexcept {
  for (const auto& b : branches) {
    if (b.erased) return true;
  }
  return false;
}

SymbolBlock Detection::sliced_block() const {
  SymbolBlock block;
  block.branch_symbols.reserve(branches.size());
  for (const auto& b : branches) block.branch_symbols.push_back(b.s_sliced);
  return block;
}

CVector initial_vector(const ConstellationSet& set, std::size_t length, InitMode mode,
                       Rng& rng) {
  if (mode == InitMode::all_ones) return CVector(length, cdouble{1.0, 0.0});
  std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
  CVector v(length);
  for (auto& z : v) z = set.point(pick(rng));
  return v;
}

Detection detect(std::span<const cdouble> yhat, const KronConfig& cfg,
                 const TpmdSettings& settings, Rng& rng) {
  if (!cfg.pilot_enabled()) {
    throw Error(Errc::invalid_config,
                "the rank-one detector needs per-branch pilots to resolve scale");
  }
  const std::vector<std::size_t> shape(cfg.lengths().begin(), cfg.lengths().end());
  const DenseTensor y = tensorize(yhat, shape);

  Detection det;
  det.branches.resize(cfg.branches());
  for (std::size_t n = 0; n < cfg.branches(); ++n) {
    Rng branch_rng(rng());
    auto& br = det.branches[n];
    const auto& set = cfg.set(n);
    try {
      const ComplexMatrix gram = mode_gramian(y, n);
      const CVector init = initial_vector(set, cfg.length(n), settings.init, branch_rng);
      auto pi = tpmd_branch(gram, settings, init, branch_rng);
      br.iters_used = pi.iterations;
      br.converged = pi.converged;
      br.u = std::move(pi.u);
      auto sr = resolve_scale(br.u, set);
      br.beta = sr.beta;
      br.s_hat = std::move(sr.s_hat);
      br.s_sliced = slice(br.s_hat, set);
    } catch (const Error& e) {
      if (e.code() != Errc::pilot_erasure && e.code() != Errc::degenerate_input) throw;
      br.erased = true;
      br.s_sliced.assign(cfg.length(n), set.first_point());
    }
  }
  return det;
}

double rayleigh_quotient(const DenseTensor& t, std::span<const CVector> vectors) {
  if (vectors.size() != t.order()) {
    throw Error(Errc::shape_mismatch, "need one vector per tensor mode");
  }
  double denom = 1.0;
  for (std::size_t n = 0; n < vectors.size(); ++n) {
    if (vectors[n].size() != t.extent(n)) {
      throw Error(Errc::shape_mismatch, "vector length differs from the mode extent");
    }
    denom *= std::sqrt(norm2(vectors[n]));
  }
  const DenseTensor x = outer_rank_one(vectors);
  return std::abs(dot(x.data(), t.data())) / denom;
}

FlopsEstimate flops_estimate(std::span<const std::size_t> lengths, unsigned max_iters) {
  if (lengths.empty()) throw Error(Errc::invalid_argument, "no branch lengths");
  const double j = max_iters;
  double block = 1.0;
  for (auto l : lengths) block *= double(l);
  bool uniform = true;
  double sum = 0.0;
  for (auto l : lengths) {
    uniform = uniform && l == lengths[0];
    sum += double(l) * (block / double(l));
  }
  if (uniform) {
    const double n = double(lengths.size());
    return {8.0 * n * j * std::pow(double(lengths[0]), n), true};
  }
  return {8.0 * j * sum, false};
}

FlopsEstimate flops_estimate(const KronConfig& cfg, const TpmdSettings& settings) {
  return flops_estimate(cfg.lengths(), settings.max_iters);
}

}  // namespace kronrod
