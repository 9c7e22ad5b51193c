#pragma once
// Truncated Fock space: operators on span{|0>, ..., |N-1>} as dense complex
// matrices in the number basis.
//
// A FockOperator of dimension N stands for the infinite operator A (+) 0 when
// used as an input; outputs of the channel and transform code are
// compressions P_N X P_N of the exact infinite-dimensional result.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

#include "ccrheat/phase_space.hpp"

namespace ccrheat {

using Matrix = Eigen::MatrixXcd;

class FockOperator {
 public:
  // Throws std::invalid_argument for non-square, empty or non-finite input.
  explicit FockOperator(Matrix m);

  static FockOperator zero(int dim);
  static FockOperator identity(int dim);
  // |row><col|
  static FockOperator unit(int dim, int row, int col);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  cplx trace() const { return m_.trace(); }
  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }
  // Zero-padded to a larger dimension.
  FockOperator embedded(int dim) const;
  // Leading n x n block.
  FockOperator leading_block(int n) const;

  FockOperator& operator+=(const FockOperator& o);
  FockOperator& operator-=(const FockOperator& o);
  FockOperator& operator*=(cplx s);
  friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
  friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
  friend FockOperator operator*(cplx s, FockOperator a) { return a *= s; }
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);

 private:
  Matrix m_;
};

// Normal state at truncation: Hermitian, PSD and trace one within tolerance.
class DensityOperator {
 public:
  inline static constexpr double kTolerance = 1e-10;

  // Throws std::invalid_argument if the invariants fail at `tol`.
  static DensityOperator from(FockOperator op, double tol = kTolerance);

  const FockOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }
  // Same state in a larger truncation.
  DensityOperator embedded(int dim) const;
  double purity() const;

 private:
  explicit DensityOperator(FockOperator op) : op_(std::move(op)) {}
  FockOperator op_;
};

FockOperator annihilation(int dim);
FockOperator creation(int dim);
// Q = (a + a^dag)/sqrt(2), P = -i (a - a^dag)/sqrt(2)
FockOperator position(int dim);
FockOperator momentum(int dim);

enum class WeylMethod { exponential, closed_form };

// Displacement amplitude alpha = (i x - y)/sqrt(2) with W_z = D(alpha).
cplx displacement_amplitude(PhasePoint z);

// W_z = exp(i (x Q + y P)) at truncation dim.
//  - exponential: exponential of the truncated Hermitian generator (exactly
//    unitary on the truncated space);
//  - closed_form: exact matrix elements <m|D(alpha)|n> of the infinite
//    operator via associated Laguerre polynomials. Throws TruncationError
//    when |alpha|^2 > dim.
FockOperator weyl_operator(PhasePoint z, int dim, WeylMethod method = WeylMethod::closed_form);

// Leading dim x dim block of the infinite W_z, any z. Same matrix elements
// as the closed form but without the truncation window check.
FockOperator weyl_block(PhasePoint z, int dim);

// <n|W_z|n> for n < dim (closed form), O(dim).
std::vector<double> weyl_diagonal(PhasePoint z, int dim);

double trace_norm(const FockOperator& a);
double operator_norm(const FockOperator& a);
double hs_norm(const FockOperator& a);
// Eigenvalues of (A + A^dag)/2, ascending.
Eigen::VectorXd hermitian_eigenvalues(const FockOperator& a);

DensityOperator number_state(int n, int dim);
// Requires |alpha|^2 <= dim/4 so the captured mass is >= 1 - 1e-8.
DensityOperator coherent_state(cplx alpha, int dim);
// Random mixed state supported on the first `support` levels, embedded in dim.
DensityOperator random_density(int dim, int support, std::mt19937_64& rng);
// Random Hermitian trace-zero operator with unit trace norm.
FockOperator random_traceless_hermitian(int dim, std::mt19937_64& rng);

}  // namespace ccrheat
