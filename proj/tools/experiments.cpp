#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fstream>
#include <functional>
#include <random>

#include "ccrheat/channels.hpp"
#include "ccrheat/io.hpp"
#include "ccrheat/purity.hpp"
#include "ccrheat/weyl_transform.hpp"

namespace ccrheat::cli {
namespace fs = std::filesystem;
namespace {

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    std::string line;
    ((line += cell(cells) + ','), ...);
    line.pop_back();
    out_ << line << '\n';
  }

 private:
  static std::string cell(double v) { return io::exact(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  std::ofstream out_;
};

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// Runs body; a library exception becomes a failed report carrying the message.
ExperimentReport guarded(const std::string& name, Json params, double bound,
                         const std::function<void(ExperimentReport&)>& body) {
  ExperimentReport r;
  r.check = name;
  r.params = std::move(params);
  r.bound = bound;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.measured["error"] = e.what();
    r.pass = false;
  }
  return r;
}

PhasePoint random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const PhasePoint z{u(rng), u(rng)};
    if (z.norm() <= radius) return z;
  }
}

double block_max_abs(const Matrix& m, int k) { return m.topLeftCorner(k, k).cwiseAbs().maxCoeff(); }

double min_eig(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.adjoint())).eigenvalues().minCoeff();
}

std::vector<ExperimentReport> weyl_check(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  const int n = c.truncation;
  const int block = n / 4 + 1;

  struct Pair {
    PhasePoint z1, z2;
  };
  std::mt19937_64 rng(c.seed);
  std::vector<Pair> pairs;
  for (int i = 0; i < c.trials; ++i) {
    const PhasePoint z1 = random_in_disk(rng, 1.0);
    pairs.push_back({z1, random_in_disk(rng, 1.0)});
  }
  const Json pair_params{{"truncation", n}, {"pairs", c.trials}, {"radius", 1.0}, {"block", block}, {"seed", c.seed}};

  std::vector<double> relation(pairs.size()), unitary(pairs.size()), conj(pairs.size());
  bool computed = false;
  out.push_back(guarded("weyl_relation", pair_params, 1e-6, [&](ExperimentReport& r) {
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [z1, z2] = pairs[i];
      const Matrix w1 = weyl_operator(z1, n).matrix(), w2 = weyl_operator(z2, n).matrix();
      const Matrix rhs = std::polar(1.0, omega(z1, z2)) * weyl_operator(z1 + z2, n).matrix();
      relation[i] = block_max_abs(w1 * w2 - rhs, block);
      unitary[i] = block_max_abs(w1.adjoint() * w1 - Matrix::Identity(n, n), block);
      const Matrix lhs = w1 * w2 * w1.adjoint();
      conj[i] = block_max_abs(lhs - std::polar(1.0, 2.0 * omega(z1, z2)) * w2, block);
      worst = std::max(worst, relation[i]);
    }
    computed = true;
    r.measured = {{"max_error", worst}};
    r.pass = worst <= r.bound;
  }));
  out.push_back(guarded("unitarity", pair_params, 1e-6, [&](ExperimentReport& r) {
    if (!computed) throw std::runtime_error("pair products unavailable");
    const double worst = *std::max_element(unitary.begin(), unitary.end());
    r.measured = {{"max_error", worst}};
    r.pass = worst <= r.bound;
  }));
  out.push_back(guarded("conjugation", pair_params, 1e-6, [&](ExperimentReport& r) {
    if (!computed) throw std::runtime_error("pair products unavailable");
    const double worst = *std::max_element(conj.begin(), conj.end());
    r.measured = {{"max_error", worst}};
    r.pass = worst <= r.bound;
  }));
  {
    Csv csv(dir / "weyl_pairs.csv", "pair,x1,y1,x2,y2,relation_error,unitarity_error,conjugation_error");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      csv.row(i, pairs[i].z1.x, pairs[i].z1.y, pairs[i].z2.x, pairs[i].z2.y, relation[i], unitary[i], conj[i]);
    }
  }

  const int points = std::min(c.trials, 20);
  out.push_back(guarded("method_agreement", {{"truncation", n}, {"points", points}, {"radius", 2.0}, {"block", n / 2}},
                        1e-8, [&](ExperimentReport& r) {
                          std::mt19937_64 g(c.seed + 1);
                          double worst = 0.0;
                          for (int i = 0; i < points; ++i) {
                            const PhasePoint z = random_in_disk(g, 2.0);
                            const Matrix a = weyl_operator(z, n, WeylMethod::closed_form).matrix();
                            const Matrix b = weyl_operator(z, n, WeylMethod::exponential).matrix();
                            worst = std::max(worst, block_max_abs(a - b, n / 2));
                          }
                          r.measured = {{"max_error", worst}};
                          r.pass = worst <= r.bound;
                        }));

  out.push_back(guarded("conjugation_scale", Json::object(), 1e-9, [&](ExperimentReport& r) {
    const double s = calibrate_conjugation_scale();
    r.measured = {{"scale", s}, {"abs_minus_half", std::abs(std::abs(s) - 0.5)}};
    r.pass = std::abs(std::abs(s) - 0.5) <= r.bound;
  }));

  const GridSpec grid(c.grid_half_width, c.grid_points);
  out.push_back(guarded("inverse_round_trip",
                        {{"truncation", n}, {"grid_half_width", c.grid_half_width}, {"grid_points", c.grid_points},
                         {"states", {"fock:0", "fock:1"}}},
                        1e-3, [&](ExperimentReport& r) {
                          InverseOptions opts;
                          opts.probe_check = false;
                          Json errs = Json::array();
                          double worst = 0.0;
                          for (int k : {0, 1}) {
                            const FockOperator p = number_state(k, n).op();
                            const FockOperator back =
                                inverse_transform(char_function(p, grid, c.grid_half_width), n, opts);
                            const double e = trace_norm(back - p);
                            errs.push_back(e);
                            worst = std::max(worst, e);
                          }
                          r.measured = {{"trace_norm_errors", errs}, {"max_error", worst}};
                          r.pass = worst <= r.bound;
                        }));

  std::vector<double> radii;
  for (int i = 0; i <= 24; ++i) radii.push_back(0.25 * i);
  out.push_back(guarded("riemann_lebesgue", {{"truncation", n}, {"state", "fock:0"}, {"max_radius", 6.0}, {"tail_from", 4.3}},
                        1e-4, [&](ExperimentReport& r) {
                          std::vector<double> rs = radii;
                          rs.push_back(4.3);
                          const auto prof = riemann_lebesgue_profile(number_state(0, n).op(), rs);
                          double err = 0.0, tail = 0.0;
                          Csv csv(dir / "riemann_lebesgue.csv", "radius,profile,reference");
                          for (std::size_t i = 0; i < rs.size(); ++i) {
                            const double ref = std::exp(-rs[i] * rs[i] / 4.0);
                            err = std::max(err, std::abs(prof[i] - ref));
                            if (rs[i] >= 4.3) tail = std::max(tail, prof[i]);
                            if (i < radii.size()) csv.row(rs[i], prof[i], ref);
                          }
                          r.measured = {{"max_error", err}, {"tail_max", tail}, {"tail_bound", 0.01}};
                          r.pass = err <= r.bound && tail <= 0.01;
                        }));
  return out;
}

std::vector<ExperimentReport> heatflow(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  const int n = c.truncation;
  std::mt19937_64 rng(c.seed);

  for (double t : c.times) {
    // W_z is not trace class: its truncation is taken at 3N/2 so the leading
    // N/4 block of the image does not see the cut
    out.push_back(guarded("eigen_relation",
                          {{"t", t}, {"truncation", n}, {"input_dimension", 3 * n / 2}, {"block", n / 4}, {"points", 8}},
                          1e-3, [&](ExperimentReport& r) {
                            const MeasureChannel ch = heat_channel(t, 3 * n / 2);
                            double worst = 0.0;
                            for (int i = 0; i < 8; ++i) {
                              const PhasePoint z = random_in_disk(rng, 1.0);
                              const FockOperator w = weyl_operator(z, 3 * n / 2);
                              const Matrix expect = std::exp(-t * z.norm2()) * w.matrix().topLeftCorner(n / 4, n / 4);
                              const Matrix got = apply_quadrature(ch, w).matrix().topLeftCorner(n / 4, n / 4);
                              worst = std::max(worst, (got - expect).norm() / expect.norm());
                            }
                            r.measured = {{"max_relative_error", worst}};
                            r.pass = worst <= r.bound;
                          }));
  }

  {
    Csv csv(dir / "path_agreement.csv", "t,index,trace_norm_difference");
    for (double t : c.times) {
      out.push_back(guarded("path_agreement", {{"t", t}, {"truncation", n}, {"states", c.trials}, {"seed", c.seed}},
                            2e-3, [&](ExperimentReport& r) {
                              std::vector<FockOperator> ops;
                              for (int i = 0; i < c.trials; ++i) ops.push_back(random_density(n, n, rng).op());
                              const auto q = apply_quadrature(heat_channel(t, n), ops);
                              double worst = 0.0;
                              for (int i = 0; i < c.trials; ++i) {
                                const double d = trace_norm(q[i] - apply_spectral({t}, ops[i]));
                                csv.row(t, i, d);
                                worst = std::max(worst, d);
                              }
                              r.measured = {{"max_trace_norm_difference", worst}};
                              r.pass = worst <= r.bound;
                            }));
    }
  }

  for (double t : c.times) {
    out.push_back(guarded("trace_preservation", {{"t", t}, {"truncation", n}, {"support", 4}}, 1e-6,
                          [&](ExperimentReport& r) {
                            const DensityOperator rho = random_density(n, 4, rng);
                            const int d = evolved_dimension({t}, rho);
                            const FockOperator in = rho.embedded(d).op();
                            const double q = std::abs(apply_quadrature(heat_channel(t, d), in).trace() - 1.0);
                            const double s = std::abs(apply_spectral({t}, in).trace() - 1.0);
                            r.measured = {{"working_dimension", d}, {"quadrature_drift", q}, {"spectral_drift", s}};
                            r.pass = q <= r.bound && s <= r.bound;
                          }));
    const int dim = std::max(n, 64);
    out.push_back(guarded("unitality", {{"t", t}, {"dimension", dim}, {"block", dim / 6}}, 1e-6,
                          [&](ExperimentReport& r) {
                            const FockOperator one = FockOperator::identity(dim);
                            const Matrix img = apply_quadrature(heat_channel(t, dim), one).matrix();
                            const double e = block_max_abs(img - one.matrix(), dim / 6);
                            r.measured = {{"max_error", e}};
                            r.pass = e <= r.bound;
                          }));
  }

  const double s = c.times.front();
  const double u = c.times.size() > 1 ? c.times[1] : c.times.front();
  out.push_back(guarded("semigroup_measures", {{"s", s}, {"t", u}}, 1e-3, [&](ExperimentReport& r) {
    const double h = 1.4 * std::sqrt(std::min(s, u));
    const GridSpec g = GridSpec::covering(gaussian_capture_radius(s + u) + h, h);
    const GridMeasure conv = convolve(gaussian_measure(s, g), gaussian_measure(u, g));
    const double tv = total_variation_distance(conv, gaussian_measure(s + u, conv.grid()));
    r.measured = {{"spacing", h}, {"tv_error", tv}};
    r.pass = tv <= r.bound;
  }));
  out.push_back(guarded("semigroup_composition", {{"s", s}, {"t", u}, {"truncation", n}}, 2e-3,
                        [&](ExperimentReport& r) {
                          const DensityOperator rho = random_density(n, 5, rng);
                          const int mid_dim = evolved_dimension({s}, rho);
                          const FockOperator mid = apply_spectral({s}, rho.op(), SemigroupKind::heat, mid_dim);
                          const FockOperator two = apply_spectral({u}, mid, SemigroupKind::heat, n);
                          const double e = trace_norm(two - apply_spectral({s + u}, rho.op()));
                          r.measured = {{"intermediate_dimension", mid_dim}, {"trace_norm_error", e}};
                          r.pass = e <= r.bound;
                        }));

  {
    const std::vector<double> ts{0.004, 0.002, 0.001};
    Csv csv(dir / "generator.csv", "x,y,coefficient,target,relative_error");
    for (PhasePoint z : {PhasePoint{1, 0}, PhasePoint{0, 2}, PhasePoint{1, 1}}) {
      out.push_back(guarded("generator", {{"x", z.x}, {"y", z.y}, {"truncation", n}, {"t_values", ts}}, 1e-2,
                            [&](ExperimentReport& r) {
                              const ExperimentReport g = generator_check(z, n, ts);
                              const double coef = g.measured["coefficient"].get<double>();
                              const double rel = std::abs(coef / -z.norm2() - 1.0);
                              csv.row(z.x, z.y, coef, -z.norm2(), rel);
                              r.measured = {{"coefficient", coef}, {"target", -z.norm2()}, {"relative_error", rel}};
                              r.pass = rel <= r.bound && g.pass;
                            }));
    }
  }

  if (c.mc_samples > 0) {
    // seeded Monte-Carlo estimate against the quadrature, recorded but not checked
    Csv csv(dir / "monte_carlo.csv", "t,samples,seed,trace_norm_difference");
    std::mt19937_64 g(c.seed);
    const DensityOperator rho = random_density(n, 4, g);
    for (double t : c.times) {
      const MeasureChannel ch = heat_channel(t, n);
      const double d = trace_norm(apply_monte_carlo(ch, rho.op(), c.mc_samples, c.seed) - apply_quadrature(ch, rho.op()));
      csv.row(t, c.mc_samples, c.seed, d);
    }
  }
  return out;
}

std::vector<ExperimentReport> choi(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  const int n = c.truncation;
  const int k = n / 4;
  Csv csv(dir / "choi_eigenvalues.csv", "channel,t,index,eigenvalue");
  auto record = [&](const std::string& label, double t, const Matrix& m) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (m + m.adjoint())).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) csv.row(label, t, static_cast<int>(i), ev[i]);
    return ev.minCoeff();
  };
  for (double t : c.times) {
    out.push_back(guarded("gaussian_positive", {{"t", t}, {"truncation", n}, {"block", k}}, -1e-8,
                          [&](ExperimentReport& r) {
                            const double m = record("gaussian", t, choi_matrix(heat_channel(t, n), k));
                            r.measured = {{"min_eigenvalue", m}};
                            r.pass = m >= r.bound;
                          }));
  }
  out.push_back(guarded("signed_witness", {{"atoms", {{1.0, 0.0}, {-1.0, 0.0}}}, {"masses", {1.0, -1.0}},
                                           {"truncation", n}, {"block", k}},
                        -0.01, [&](ExperimentReport& r) {
                          const GridSpec g(2.0, 4);
                          const MeasureChannel w(point_mass(g, {1.0, 0.0}) - point_mass(g, {-1.0, 0.0}), n);
                          const double m = record("signed_witness", 0.0, choi_matrix(w, k));
                          r.measured = {{"min_eigenvalue", m}};
                          r.pass = m <= r.bound;
                        }));
  return out;
}

std::vector<ExperimentReport> approximant_sweep(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  const double delta = c.delta;
  std::vector<double> tvs;
  Csv csv(dir / "approximant.csv", "t,delta,grid_half_width,grid_spacing,tv_distance,sup_outside_band");
  for (double t : c.times) {
    out.push_back(guarded("band_limit", {{"t", t}, {"delta", delta}, {"off_lattice_points", 200}}, 1e-6,
                          [&](ExperimentReport& r) {
                            const GridSpec g = approximant_grid(t, delta);
                            const GridMeasure mu = gaussian_measure(t, g);
                            const GridMeasure nu = band_limited_approximant(t, delta, g);
                            const double tv = total_variation_distance(mu, nu);
                            tvs.push_back(tv);
                            // one period (4 pi / h per axis) of the transform: every 8th
                            // dual-lattice point plus random off-lattice points
                            double sup = 0.0;
                            const double step = 2.0 * std::numbers::pi / g.half_width();
                            const int k = static_cast<int>(std::floor(2.0 * std::numbers::pi / g.spacing() / step));
                            for (int i = -k; i < k; i += 8) {
                              for (int j = -k; j < k; j += 8) {
                                const PhasePoint z{i * step, j * step};
                                if (z.norm() >= delta) sup = std::max(sup, std::abs(symplectic_ft_at(nu, z)));
                              }
                            }
                            std::mt19937_64 rng(c.seed);
                            std::uniform_real_distribution<double> uni(-k * step, k * step);
                            for (int i = 0; i < 200; ++i) {
                              const PhasePoint z{uni(rng), uni(rng)};
                              if (z.norm() >= delta) sup = std::max(sup, std::abs(symplectic_ft_at(nu, z)));
                            }
                            csv.row(t, delta, g.half_width(), g.spacing(), tv, sup);
                            r.measured = {{"sup_outside_band", sup}, {"tv_distance", tv}};
                            r.pass = sup <= r.bound;
                          }));
  }
  if (tvs.size() == c.times.size()) {
    out.push_back(guarded("tv_decreasing", {{"times", c.times}}, 0.0, [&](ExperimentReport& r) {
      bool ok = true;
      for (std::size_t i = 1; i < tvs.size(); ++i) ok = ok && (c.times[i] > c.times[i - 1]) == (tvs[i] < tvs[i - 1]);
      r.measured = {{"tv_distances", tvs}};
      r.pass = ok;
    }));
    out.push_back(guarded("tv_final", {{"t", c.times.back()}, {"delta", delta}}, 0.05, [&](ExperimentReport& r) {
      r.measured = {{"tv_distance", tvs.back()}};
      r.pass = tvs.back() <= r.bound;
    }));
  }
  const double t0 = c.times.front();
  out.push_back(guarded("sqrt_density_transform", {{"t", t0}, {"radius", 2.0}, {"dual_spacing", 0.125}}, 1e-6,
                        [&](ExperimentReport& r) {
                          const GridSpec dual = GridSpec::covering(2.0, 0.125);
                          const SampledFunction f = sqrt_density_ft_profile(t0, dual);
                          double rel = 0.0;
                          for (std::size_t k = 0; k < dual.size(); ++k) {
                            const PhasePoint z = dual.point(k);
                            if (z.norm() > 2.0) continue;
                            const double ref = sqrt_density_ft_reference(t0, z);
                            rel = std::max(rel, std::abs(f.values()[k] - ref) / ref);
                          }
                          r.measured = {{"max_relative_error", rel}};
                          r.pass = rel <= r.bound;
                        }));
  return out;
}

std::vector<ExperimentReport> purity(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  Csv csv(dir / "decay.csv", "pair,state1,state2,t,trace_distance");
  Json certs = Json::array();
  for (std::size_t p = 0; p + 1 < c.probes.size(); p += 2) {
    const Probe& a = c.probes[p];
    const Probe& b = c.probes[p + 1];
    const Json pair{{"state1", a.label}, {"state2", b.label}, {"truncation", c.truncation}};
    DecayCurve curve;
    bool have_curve = false;
    out.push_back(guarded("decay_strictly_decreasing", pair, 0.0, [&](ExperimentReport& r) {
      curve = decay_curve(a.state, b.state, c.times, EvolutionPath::spectral, a.label, b.label);
      have_curve = true;
      for (std::size_t i = 0; i < curve.times.size(); ++i) csv.row(p / 2, a.label, b.label, curve.times[i], curve.distances[i]);
      r.measured = {{"distances", curve.distances}};
      r.pass = curve.strictly_decreasing();
    }));
    if (!have_curve) continue;
    if (c.times.front() == 0.0) {
      out.push_back(guarded("decay_initial", pair, 1e-8, [&](ExperimentReport& r) {
        const double direct = trace_norm(a.state.op() - b.state.op());
        const double e = std::abs(curve.distances.front() - direct);
        r.measured = {{"distance", curve.distances.front()}, {"direct", direct}, {"error", e}};
        r.pass = e <= r.bound;
      }));
    }
    Json first = nullptr;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
      if (curve.distances[i] < 0.2) {
        first = curve.times[i];
        break;
      }
    }
    out.back().measured["first_time_below_0.2"] = first;
    // the 0.2-by-t=10 target is specific to the |0>, |1> pair
    if (a.label == "fock:0" && b.label == "fock:1") {
      Json threshold_params = pair;
      threshold_params["level"] = 0.2;
      out.push_back(guarded("decay_threshold", threshold_params, 10.0, [&](ExperimentReport& r) {
        r.measured = {{"first_time_below", first}};
        r.pass = !first.is_null() && first.get<double>() <= r.bound;
      }));
    }
    for (double eps : c.epsilons) {
      Json cp = pair;
      cp["t"] = c.times.back();
      cp["epsilon"] = eps;
      cp["delta"] = c.delta;
      out.push_back(guarded("certificate", cp, 1e-6, [&](ExperimentReport& r) {
        const BoundCertificate cert = certified_bound(a.state, b.state, c.times.back(), eps, c.delta);
        Json j = cert.to_json();
        certs.push_back({{"pair", p / 2}, {"state1", a.label}, {"state2", b.label}, {"certificate", j}});
        r.measured = j;
        r.pass = cert.holds(r.bound) && cert.term3 <= 1e-8;
      }));
    }
  }
  write_json(dir / "certificates.json", certs);

  std::vector<DensityOperator> states;
  Json labels = Json::array();
  for (const Probe& p : c.probes) {
    states.push_back(p.state);
    labels.push_back(p.label);
  }
  ExperimentReport probe = guarded("absorbing_probe", {{"times", c.probe_times}, {"probes", labels}}, 0.0,
                                   [&](ExperimentReport& r) {
                                     const ExperimentReport lib = absorbing_state_probe(c.probe_times, states);
                                     r.measured = lib.measured;
                                     r.bound = lib.bound;
                                     r.pass = lib.pass;
                                   });
  out.push_back(probe);
  return out;
}

std::vector<ExperimentReport> beurling(const RunConfig& c, const fs::path& dir) {
  std::vector<ExperimentReport> out;
  const int n = c.truncation;
  Csv csv(dir / "band_annihilation.csv", "operator,seed,epsilon,constraints,trace_distance,hs_distance");
  const Json params{{"truncation", n}, {"epsilons", c.epsilons}, {"first_seed", c.seed}, {"operators", c.trials}};
  out.push_back(guarded("trace_zero_monotone", params, 0.0, [&](ExperimentReport& r) {
    // distances should grow as epsilon shrinks
    std::vector<std::size_t> order(c.epsilons.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return c.epsilons[x] > c.epsilons[y]; });
    bool monotone = true;
    double margin = INFINITY;
    for (int k = 0; k < c.trials; ++k) {
      const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
      std::mt19937_64 rng(seed);
      const auto s = band_annihilation_sweep(random_traceless_hermitian(n, rng), c.epsilons);
      for (const BandAnnihilation& b : s) csv.row("traceless", seed, b.epsilon, b.constraints, b.trace_distance, b.hs_distance);
      for (std::size_t i = 1; i < order.size(); ++i) {
        const double step = s[order[i - 1]].trace_distance - s[order[i]].trace_distance;
        monotone = monotone && step >= 0.0;
        margin = std::min(margin, step);
      }
    }
    r.measured = {{"monotone", monotone}};
    if (std::isfinite(margin)) r.measured["min_step"] = margin;
    r.pass = monotone;
  }));
  out.push_back(guarded("trace_one_lower_bound", {{"truncation", n}, {"epsilons", c.epsilons}}, 1.0 - 1e-6,
                        [&](ExperimentReport& r) {
                          std::mt19937_64 rng(c.seed);
                          double lowest = INFINITY;
                          const std::vector<std::pair<std::string, FockOperator>> ops{
                              {"fock:0", number_state(0, n).op()}, {"random_density", random_density(n, n, rng).op()}};
                          for (const auto& [label, a] : ops) {
                            for (const BandAnnihilation& b : band_annihilation_sweep(a, c.epsilons)) {
                              csv.row(label, c.seed, b.epsilon, b.constraints, b.trace_distance, b.hs_distance);
                              lowest = std::min(lowest, b.trace_distance);
                            }
                          }
                          r.measured = {{"min_trace_distance", lowest}};
                          r.pass = lowest >= r.bound;
                        }));
  return out;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"weyl-check", "heatflow", "choi", "lemma37", "purity", "beurling"};
  return names;
}

std::vector<ExperimentReport> run_subcommand(const RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  if (cfg.subcommand == "weyl-check") return weyl_check(cfg, dir);
  if (cfg.subcommand == "heatflow") return heatflow(cfg, dir);
  if (cfg.subcommand == "choi") return choi(cfg, dir);
  if (cfg.subcommand == "lemma37") return approximant_sweep(cfg, dir);
  if (cfg.subcommand == "purity") return purity(cfg, dir);
  if (cfg.subcommand == "beurling") return beurling(cfg, dir);
  throw std::invalid_argument("unknown subcommand " + cfg.subcommand);
}

}  // namespace ccrheat::cli
