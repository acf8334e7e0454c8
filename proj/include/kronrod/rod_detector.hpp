#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kronrod/constellation.hpp"
#include "kronrod/kron_codec.hpp"
#include "kronrod/rng.hpp"
#include "kronrod/tensor.hpp"
#include "kronrod/types.hpp"

namespace kronrod {

enum class InitMode { random_alphabet, all_ones };

struct TpmdSettings {
  unsigned max_iters = 30;
  // Threshold on ||u_j - u_{j-1}||^2 / ||u_j||^2 between unit-norm iterates.
  double tol = 1e-6;
  InitMode init = InitMode::random_alphabet;
};

void validate(const TpmdSettings& settings);

struct PowerIteration {
  CVector u;  // unit norm
  unsigned iterations = 0;
  bool converged = false;
  bool reinitialized = false;
};

/// Power iteration u <- A u / ||A u|| on a Hermitian PSD Gramian.
///
/// Stops once the normalized squared step falls to settings.tol or after
/// settings.max_iters products. If the step is still above sqrt(tol) at
/// iteration ceil(J/2) the iterate is redrawn once at random; an iterate that
/// A maps to (numerical) zero is redrawn immediately. Throws
/// Errc::degenerate_input for an all-zero A.
PowerIteration tpmd_branch(const ComplexMatrix& a, const TpmdSettings& settings,
                           std::span<const cdouble> init, Rng& rng);

struct ScaleResolution {
  cdouble beta;
  CVector s_hat;
};

// beta = u[0] / first_point, s_hat = u / beta. Throws Errc::pilot_erasure
// when |u[0]| < 1e-9.
ScaleResolution resolve_scale(std::span<const cdouble> u, const ConstellationSet& set);

// Nearest point per entry, ties to the lowest point index.
CVector slice(std::span<const cdouble> s_hat, const ConstellationSet& set);

struct BranchResult {
  CVector u;
  cdouble beta{};
  CVector s_hat;
  CVector s_sliced;
  unsigned iters_used = 0;
  bool converged = false;
  bool erased = false;
};

struct Detection {
  std::vector<BranchResult> branches;

  bool erased() const noexcept;
  SymbolBlock sliced_block() const;
};

CVector initial_vector(const ConstellationSet& set, std::size_t length, InitMode mode,
                       Rng& rng);

/// Kronecker rank-one detector: tensorize the matched-filter output, run an
/// independent power iteration on each mode Gramian, rescale by the pilot and
/// slice. Each branch gets its own random stream drawn from `rng` in branch
/// order. Requires cfg.pilot_enabled().
Detection detect(std::span<const cdouble> yhat, const KronConfig& cfg,
                 const TpmdSettings& settings, Rng& rng);

// |<v_{N-1} (x) ... (x) v_0, vec(t)>| / prod ||v_n||, Hermitian inner product.
double rayleigh_quotient(const DenseTensor& t, std::span<const CVector> vectors);

struct FlopsEstimate {
  double flops;
  bool uniform_lengths;  // false: generalized count 8 J sum_n L_n prod_{i!=n} L_i
};

FlopsEstimate flops_estimate(std::span<const std::size_t> lengths, unsigned max_iters);
FlopsEstimate flops_estimate(const KronConfig& cfg, const TpmdSettings& settings);

}  // namespace kronrod
