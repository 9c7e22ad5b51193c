#include "ccrheat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccrheat/errors.hpp"

namespace ccrheat {

namespace {

void require_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("Fock truncation must be >= 1");
}

bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

// --- FockOperator -----------------------------------------------------------

FockOperator::FockOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("Fock operator must be a non-empty square matrix");
  }
  if (!m_.allFinite()) throw std::invalid_argument("Fock operator entries must be finite");
}

FockOperator FockOperator::zero(int dim) {
  require_dim(dim);
  return FockOperator(Matrix::Zero(dim, dim));
}

FockOperator FockOperator::identity(int dim) {
  require_dim(dim);
  return FockOperator(Matrix::Identity(dim, dim));
}

FockOperator FockOperator::unit(int dim, int row, int col) {
  require_dim(dim);
  if (row < 0 || col < 0 || row >= dim || col >= dim) {
    throw std::out_of_range("matrix unit index outside the truncation");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return FockOperator(std::move(m));
}

FockOperator FockOperator::embedded(int dim) const {
  if (dim < this->dim()) throw std::invalid_argument("cannot embed into a smaller truncation");
  Matrix m = Matrix::Zero(dim, dim);
  m.topLeftCorner(this->dim(), this->dim()) = m_;
  return FockOperator(std::move(m));
}

FockOperator FockOperator::leading_block(int n) const {
  if (n < 1 || n > dim()) throw std::invalid_argument("leading block size out of range");
  return FockOperator(m_.topLeftCorner(n, n));
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  m_ += o.m_;
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  m_ -= o.m_;
  return *this;
}

FockOperator& FockOperator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return FockOperator(a.m_ * b.m_);
}

// --- DensityOperator --------------------------------------------------------

DensityOperator DensityOperator::from(FockOperator op, double tol) {
  const Matrix& m = op.matrix();
  if (!is_hermitian(m, tol)) throw std::invalid_argument("density operator is not self-adjoint");
  if (std::abs(m.trace() - 1.0) > tol) {
    throw std::invalid_argument("density operator trace differs from 1 by " +
                                std::to_string(std::abs(m.trace() - 1.0)));
  }
  const double lowest = hermitian_eigenvalues(op)(0);
  if (lowest < -tol) {
    throw std::invalid_argument("density operator has negative eigenvalue " + std::to_string(lowest));
  }
  return DensityOperator(std::move(op));
}

DensityOperator DensityOperator::embedded(int dim) const { return DensityOperator(op_.embedded(dim)); }

double DensityOperator::purity() const {
  const Matrix& m = op_.matrix();
  return (m * m).trace().real();
}

// --- canonical operators ----------------------------------------------------

FockOperator annihilation(int dim) {
  require_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator(std::move(a));
}

FockOperator creation(int dim) { return annihilation(dim).adjoint(); }

FockOperator position(int dim) {
  const Matrix a = annihilation(dim).matrix();
  return FockOperator((a + a.adjoint()) / std::sqrt(2.0));
}

FockOperator momentum(int dim) {
  const Matrix a = annihilation(dim).matrix();
  return FockOperator(cplx{0.0, -1.0} * (a - a.adjoint()) / std::sqrt(2.0));
}

// --- Weyl operators ---------------------------------------------------------

cplx displacement_amplitude(PhasePoint z) { return cplx{-z.y, z.x} / std::sqrt(2.0); }

namespace {

FockOperator weyl_exponential(PhasePoint z, int dim) {
  const Matrix h = z.x * position(dim).matrix() + z.y * momentum(dim).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Matrix& v = eig.eigenvectors();
  Eigen::VectorXcd phases(dim);
  for (int i = 0; i < dim; ++i) phases(i) = std::polar(1.0, eig.eigenvalues()(i));
  return FockOperator(v * phases.asDiagonal() * v.adjoint());
}

// Fills element(j + k, j) or element(j, j + k) for one off-diagonal k:
//   P_j = sqrt(j!/(j+k)!) x^{k/2} e^{-x/2} L_j^{(k)}(x),  x = |alpha|^2,
// advanced with the Laguerre three-term recurrence rescaled so that every
// P_j is a matrix element (|P_j| <= 1).
template <class Sink>
void laguerre_band(double x, int k, int count, Sink&& sink) {
  if (count <= 0) return;
  double p_prev = 0.0;
  double p;
  if (x == 0.0) {
    p = (k == 0) ? 1.0 : 0.0;
  } else {
    const double log_p0 = 0.5 * k * std::log(x) - 0.5 * std::lgamma(k + 1.0) - 0.5 * x;
    p = log_p0 < -740.0 ? 0.0 : std::exp(log_p0);
  }
  double r_prev = 0.0;
  for (int j = 0; j < count; ++j) {
    sink(j, p);
    const double r = std::sqrt((j + 1.0) / (j + 1.0 + k));
    const double next = r * ((2.0 * j + 1.0 + k - x) * p - (j + k) * r_prev * p_prev) / (j + 1.0);
    p_prev = p;
    p = next;
    r_prev = r;
  }
}

FockOperator weyl_closed_form(PhasePoint z, int dim, bool windowed) {
  const cplx alpha = displacement_amplitude(z);
  const double x = std::norm(alpha);
  if (windowed && x > dim) {
    throw TruncationError("closed-form Weyl operator outside its window: |alpha|^2 = " +
                          std::to_string(x) + " > N = " + std::to_string(dim));
  }
  const double theta = std::arg(alpha);
  const double theta_up = std::arg(-std::conj(alpha));
  Matrix w(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const cplx lower_phase = std::polar(1.0, k * theta);
    const cplx upper_phase = std::polar(1.0, k * theta_up);
    laguerre_band(x, k, dim - k, [&](int j, double p) {
      w(j + k, j) = lower_phase * p;
      if (k > 0) w(j, j + k) = upper_phase * p;
    });
  }
  return FockOperator(std::move(w));
}

}  // namespace

FockOperator weyl_operator(PhasePoint z, int dim, WeylMethod method) {
  require_dim(dim);
  z = PhasePoint::checked(z.x, z.y);
  return method == WeylMethod::exponential ? weyl_exponential(z, dim) : weyl_closed_form(z, dim, true);
}

FockOperator weyl_block(PhasePoint z, int dim) {
  require_dim(dim);
  return weyl_closed_form(PhasePoint::checked(z.x, z.y), dim, false);
}

std::vector<double> weyl_diagonal(PhasePoint z, int dim) {
  require_dim(dim);
  std::vector<double> d(dim);
  laguerre_band(std::norm(displacement_amplitude(z)), 0, dim, [&](int j, double p) { d[j] = p; });
  return d;
}

// --- norms --------------------------------------------------------------------

Eigen::VectorXd hermitian_eigenvalues(const FockOperator& a) {
  const Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

double trace_norm(const FockOperator& a) {
  if (is_hermitian(a.matrix(), 1e-13)) return hermitian_eigenvalues(a).cwiseAbs().sum();
  return Eigen::BDCSVD<Matrix>(a.matrix()).singularValues().sum();
}

double operator_norm(const FockOperator& a) {
  return Eigen::BDCSVD<Matrix>(a.matrix()).singularValues()(0);
}

double hs_norm(const FockOperator& a) { return a.matrix().norm(); }

// --- states -----------------------------------------------------------------

DensityOperator number_state(int n, int dim) {
  require_dim(dim);
  if (n < 0 || n >= dim) throw std::out_of_range("number state outside the truncation");
  return DensityOperator::from(FockOperator::unit(dim, n, n));
}

DensityOperator coherent_state(cplx alpha, int dim) {
  require_dim(dim);
  const double x = std::norm(alpha);
  if (x > 0.25 * dim) {
    throw TruncationError("coherent state needs |alpha|^2 <= N/4");
  }
  Eigen::VectorXcd psi(dim);
  cplx amp = std::exp(-0.5 * x);
  for (int n = 0; n < dim; ++n) {
    psi(n) = amp;
    amp *= alpha / std::sqrt(n + 1.0);
  }
  const double captured = psi.squaredNorm();
  if (captured < 1.0 - 1e-8) {
    throw TruncationError("coherent state mass capture " + std::to_string(captured) + " < 1 - 1e-8");
  }
  psi /= std::sqrt(captured);
  return DensityOperator::from(FockOperator(psi * psi.adjoint()));
}

namespace {
Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = cplx{normal(rng), normal(rng)};
  }
  return g;
}
}  // namespace

DensityOperator random_density(int dim, int support, std::mt19937_64& rng) {
  require_dim(dim);
  if (support < 1 || support > dim) throw std::invalid_argument("support must be in [1, dim]");
  const Matrix g = ginibre(support, support, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator::from(FockOperator(rho).embedded(dim));
}

FockOperator random_traceless_hermitian(int dim, std::mt19937_64& rng) {
  require_dim(dim);
  if (dim < 2) throw std::invalid_argument("trace-zero Hermitian operators need dim >= 2");
  const Matrix g = ginibre(dim, dim, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  FockOperator op(h);
  op *= 1.0 / trace_norm(op);
  return op;
}

}  // namespace ccrheat
