#pragma once

// Floating-point checks in the matrix C*-probability space (M_k, tr/k).

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "selfless/report.hpp"

namespace selfless {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kEstimateSlack = 1e-10;

struct MatrixSpace {
  std::size_t k = 1;

  explicit MatrixSpace(std::size_t dim);
  /// Normalized trace tr(x)/k.
  Complex trace(const Matrix& x) const;
};

class MatrixElement {
 public:
  /// Any k x k matrix.
  explicit MatrixElement(Matrix m);
  /// Verifies ||U*U - I||_max <= kUnitaryTolerance; throws InvalidUnitary.
  static MatrixElement unitary(Matrix m);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  bool is_unitary() const { return unitary_; }

 private:
  MatrixElement(Matrix m, bool unitary) : m_(std::move(m)), unitary_(unitary) {}
  Matrix m_;
  bool unitary_ = false;
};

/// Independent stream seed for item `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q.
MatrixElement haar_unitary(std::size_t k, std::uint64_t seed);

double operator_norm(const Matrix& x);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Centered matrices x - tau(x)I and x* - conj(tau(x))I, dropping zeros and
/// (to 1e-12) duplicates.
std::vector<Matrix> centered_matrices(const MatrixSpace& space, std::span<const MatrixElement> f);

CheckReport check_matrix(const MatrixSpace& space, std::span<const MatrixElement> f, const MatrixElement& u,
                         const CheckParams& params);

struct UnitarySearch {
  MatrixElement best;
  CheckReport report;
  std::size_t best_index = 0;
  /// max_violation of every draw, in draw order.
  std::vector<double> violations;
};

/// Draw i is haar_unitary(k, derive_seed(seed, i)); keeps the first draw with
/// the smallest max_violation.
UnitarySearch search_unitary(const MatrixSpace& space, std::span<const MatrixElement> f, const CheckParams& params,
                             std::size_t samples, std::uint64_t seed);

using FamilyGenerator = std::function<std::vector<MatrixElement>(std::size_t k)>;

/// One diagonal unitary with k equally spaced phases exp(2 pi i j / k).
std::vector<MatrixElement> diagonal_phase_family(std::size_t k);

struct SweepRow {
  std::size_t k = 0;
  std::size_t samples = 0;
  double best = 0.0;
  double median = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
};

SweepResult dimension_sweep(std::span<const std::size_t> dims, const FamilyGenerator& family,
                            const CheckParams& params, std::size_t samples, std::uint64_t seed);

/// sum_i d_i prod_{j != i} max(||z_j||, ||y_j||)
double perturbation_bound(std::span<const double> norms_z, std::span<const double> norms_y,
                          std::span<const double> deviations);

/// min(1, eps / (8 N M^(N-1))), which gives N * 2 delta * M^(N-1) <= eps/4.
double delta_for(double epsilon, int N, double M);

struct EstimateResult {
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Smallest bound/|tau(w) - tau(w')| over trials with a nonzero gap.
  double worst_ratio = 0.0;
  double largest_gap = 0.0;
};

/// Random trials of the telescoping estimate with p centered factors:
/// |tau(w) - tau(w')| <= perturbation_bound + kEstimateSlack.
EstimateResult verify_estimate(const MatrixSpace& space, std::size_t p, std::size_t trials, std::uint64_t seed,
                               int max_exponent = 3);

nlohmann::json to_json(const SweepResult& r);
std::string to_csv(const SweepResult& r);

}  // namespace selfless
