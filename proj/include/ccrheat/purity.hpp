#pragma once
// Trace-norm purity decay, the three-term certified bound and the desk-scale
// spectral synthesis test.

#include <string>
#include <vector>

#include "ccrheat/channels.hpp"
#include "ccrheat/fock.hpp"
#include "ccrheat/phase_space.hpp"
#include "ccrheat/report.hpp"

namespace ccrheat {

struct DecayCurve {
  std::vector<double> times;
  std::vector<double> distances;
  std::string label1;
  std::string label2;

  // distances[i] <= distances[i-1] + tol for all i
  bool non_increasing(double tol = 1e-6) const;
  bool strictly_decreasing() const;
};

// {0, 0.25, 0.5, 1, 2, 4, 8, 16}
std::vector<double> default_decay_times();

// ||rho1 o phi_t - rho2 o phi_t||_1 at each t (both evolved at a common
// output dimension).
DecayCurve decay_curve(const DensityOperator& rho1, const DensityOperator& rho2, const std::vector<double>& times,
                       EvolutionPath path = EvolutionPath::spectral, std::string label1 = "rho1",
                       std::string label2 = "rho2");

struct BandAnnihilation {
  double epsilon = 0.0;
  double trace_distance = 0.0;  // ||A - B||_1
  double hs_distance = 0.0;     // ||A - B||_2
  FockOperator approximant;     // B
  int constraints = 0;
};

// Hilbert-Schmidt-nearest B with trace(B W_z) = 0 at every grid point with
// |z| <= epsilon. Requires grid spacing <= epsilon/4 (GridError) and fewer
// constraints than N^2 (InfeasibleError).
BandAnnihilation band_annihilated_distance(const FockOperator& a, double epsilon, const GridSpec& grid);
// Same minimization with explicit constraint points (all must satisfy
// |z| <= epsilon).
BandAnnihilation band_annihilated_distance(const FockOperator& a, double epsilon,
                                           const std::vector<PhasePoint>& sample);

// Nested sweep: the sample at epsilon is the union of the covering(e, e/4)
// disk points over every listed e <= epsilon, so feasible sets shrink as
// epsilon grows. Results are in the order of `epsilons`.
std::vector<BandAnnihilation> band_annihilation_sweep(const FockOperator& a, const std::vector<double>& epsilons);

// Grid used for mu_t and nu_t: half-width 64 pi / delta, so the dual lattice
// has spacing delta/32, and spacing <= min(sqrt(8t), 0.63/delta).
GridSpec approximant_grid(double t, double delta);

struct BoundCertificate {
  double epsilon = 0.0;
  double delta = 0.0;
  double t = 0.0;
  double term1 = 0.0;  // ||omega - omega0||_1
  double term2 = 0.0;  // ||omega0||_1 ||mu_t - nu_t||
  double term3 = 0.0;  // |sum_z FT(nu_t)(z) omega0^(z)| over the certificate grid
  double measured = 0.0;  // ||omega o phi_t||_1
  double tv_distance = 0.0;
  bool feasible = false;  // term1 <= epsilon

  bool holds(double slack = 1e-6) const { return measured <= term1 + term2 + slack; }
  Json to_json() const;
};

BoundCertificate certified_bound(const DensityOperator& rho1, const DensityOperator& rho2, double t,
                                 double epsilon, double delta);

// For each probe and t: |trace(rho_t W_z) - exp(-t) trace(rho W_z)| on the
// ring |z| = 1, plus a check that no probe's ring values are t-independent.
ExperimentReport absorbing_state_probe(const std::vector<double>& times, const std::vector<DensityOperator>& probes,
                                       int directions = 16);

}  // namespace ccrheat
