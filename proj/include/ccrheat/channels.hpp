#pragma once
// Measure-defined CP maps phi_mu(A) = sum_zeta mu(zeta) W_{c zeta} A W_{c zeta}^dag,
// the heat and Cauchy semigroups, and the state-side evolution.
//
// Inputs of dimension N stand for A (+) 0; outputs are compressions to the
// requested dimension of the exact infinite-dimensional result.

#include <cstdint>
#include <vector>

#include "ccrheat/fock.hpp"
#include "ccrheat/phase_space.hpp"
#include "ccrheat/report.hpp"
#include "ccrheat/weyl_transform.hpp"

namespace ccrheat {

struct HeatFlowParams {
  double t = 0.0;
  // Throws std::invalid_argument unless t is finite and >= 0.
  static HeatFlowParams checked(double t);
};

enum class SemigroupKind { heat, cauchy };

// Multiplier on W_z: exp(-t|z|^2) (heat) or exp(-t(|x| + |y|)) (cauchy).
double semigroup_multiplier(SemigroupKind kind, double t, PhasePoint z);

// Scale c for which phi_mu(W_z) = FT(mu)(z) W_z, found from a one-atom
// measure: the conjugation phase of W_a on W_z against FT(delta_a)(z).
double calibrate_conjugation_scale();
// Calibrated once per process.
double conjugation_scale();

class MeasureChannel {
 public:
  // truncation is the Fock dimension whose window (|c| * support radius of
  // mu)^2 / 2 <= truncation must hold; throws TruncationError otherwise.
  MeasureChannel(GridMeasure mu, int truncation, double scale = conjugation_scale());

  // Smallest truncation whose window holds the support of mu.
  static int required_truncation(const GridMeasure& mu, double scale = conjugation_scale());

  const GridMeasure& mu() const { return mu_; }
  double scale() const { return scale_; }
  int truncation() const { return truncation_; }

 private:
  GridMeasure mu_;
  double scale_;
  int truncation_;
};

// Grid on which gaussian_measure(t) drives the heat channel on operators of
// dimension dim: spacing small enough that FT(mu_t) = exp(-t|z|^2) to 1e-9
// wherever trace(A W_z) is non-negligible.
GridSpec heat_measure_grid(double t, int dim);
MeasureChannel heat_channel(double t, int dim);

FockOperator apply_quadrature(const MeasureChannel& ch, const FockOperator& a);
// Same channel on several operators of one dimension (shared Weyl blocks).
std::vector<FockOperator> apply_quadrature(const MeasureChannel& ch, const std::vector<FockOperator>& ops);

// Seeded Monte-Carlo estimate: `samples` cells drawn with probability
// |mu(cell)| / ||mu||. Not used by any acceptance check.
FockOperator apply_monte_carlo(const MeasureChannel& ch, const FockOperator& a, std::size_t samples,
                               std::uint64_t seed);

// Integration disk and grid for the spectral path.
struct SpectralPlan {
  GridSpec grid;
  double radius;  // char function used on |z| <= radius
  int work_dim;   // truncation at which the char function is sampled
};
SpectralPlan spectral_plan(SemigroupKind kind, double t, int dim_in, int dim_out);

// Char function times multiplier, then inverse transform; output dimension
// out_dim (default a.dim()).
FockOperator apply_spectral(HeatFlowParams params, const FockOperator& a, SemigroupKind kind = SemigroupKind::heat,
                            int out_dim = 0);

enum class EvolutionPath { spectral, quadrature };

struct EvolveOptions {
  EvolutionPath path = EvolutionPath::spectral;
  // 0: smallest dimension >= rho.dim() capturing population 1 - capture_tail.
  int out_dim = 0;
  double capture_tail = 1e-7;
  int max_dim = 2048;
};

// Output dimension picked by evolve_state (diagonal-only spectral pass).
int evolved_dimension(HeatFlowParams params, const DensityOperator& rho, double capture_tail = 1e-7,
                      int max_dim = 2048);

// rho -> rho o phi_t (the predual heat flow). Trace drift > 1e-6 or negative
// eigenvalues below -1e-8 throw TruncationError; smaller drift is renormalized.
DensityOperator evolve_state(HeatFlowParams params, const DensityOperator& rho, const EvolveOptions& opts = {});

// (phi_t(W_z) - W_z)/t on the leading dim/2 block for each t; the fitted
// coefficient should approach -|z|^2.
ExperimentReport generator_check(PhasePoint z, int dim, const std::vector<double>& t_values);

// sum_ij E_ij (x) phi(E_ij) on the leading n-block; requires n <= truncation/4.
Matrix choi_matrix(const MeasureChannel& ch, int n);

// max over probes of ||(phi_mu - phi_nu)(A)|| / (||mu - nu|| ||A||), operator norm.
ExperimentReport cb_distance_bound(const GridMeasure& mu, const GridMeasure& nu,
                                   const std::vector<FockOperator>& probes);

}  // namespace ccrheat
