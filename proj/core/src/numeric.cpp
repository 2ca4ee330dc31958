#include "selfless/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "selfless/detail/scan.hpp"

namespace selfless {

namespace {

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Matrix ginibre(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  Matrix g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

CheckParams serial(CheckParams p) {
  p.threads = 1;
  return p;
}

}  // namespace

MatrixSpace::MatrixSpace(std::size_t dim) : k(dim) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be >= 1");
}

Complex MatrixSpace::trace(const Matrix& x) const { return x.trace() / static_cast<double>(k); }

MatrixElement::MatrixElement(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw InvalidArgument("matrix elements must be square and nonempty");
}

MatrixElement MatrixElement::unitary(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("matrix elements must be square and nonempty");
  const Matrix residual = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  if (residual.cwiseAbs().maxCoeff() > kUnitaryTolerance) {
    throw InvalidUnitary("matrix is not unitary within tolerance");
  }
  return MatrixElement(std::move(m), true);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatrixElement haar_unitary(std::size_t k, std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("matrix dimension must be >= 1");
  std::mt19937_64 rng(seed);
  const Matrix g = ginibre(k, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return MatrixElement::unitary(std::move(q));
}

double operator_norm(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<Matrix> centered_matrices(const MatrixSpace& space, std::span<const MatrixElement> f) {
  std::vector<Matrix> out;
  const auto id = Matrix::Identity(static_cast<Eigen::Index>(space.k), static_cast<Eigen::Index>(space.k));
  auto keep = [&](Matrix y) {
    if (y.cwiseAbs().maxCoeff() <= 1e-12) return;
    for (const auto& have : out) {
      if (max_abs_diff(have, y) <= 1e-12) return;
    }
    out.push_back(std::move(y));
  };
  for (const auto& x : f) {
    if (x.dim() != space.k) throw InvalidArgument("element dimension does not match the matrix space");
    const Complex t = space.trace(x.matrix());
    keep(x.matrix() - t * id);
    keep(Matrix(x.matrix().adjoint()) - std::conj(t) * id);
  }
  return out;
}

CheckReport check_matrix(const MatrixSpace& space, std::span<const MatrixElement> f, const MatrixElement& u,
                         const CheckParams& params) {
  params.validate();
  if (u.dim() != space.k) throw InvalidArgument("unitary dimension does not match the matrix space");
  if (!u.is_unitary()) throw InvalidUnitary("u must be a verified unitary");

  CheckReport report;
  report.params = params;
  report.mode = ArithmeticMode::numeric;
  report.norm = "operator";

  const auto k = static_cast<Eigen::Index>(space.k);
  std::map<int, Matrix> powers;
  Matrix un = Matrix::Identity(k, k);
  for (int n = 1; n <= params.N; ++n) {
    un = un * u.matrix();
    const Complex t = space.trace(un);
    report.haar_violations.push_back({n, std::abs(t), format_complex(t)});
    powers.emplace(n, un);
    powers.emplace(-n, un.adjoint());
  }

  const std::vector<Matrix> ys = centered_matrices(space, f);
  report.centered_size = ys.size();
  auto scan = detail::scan_exhaustive(
      ys, powers, Matrix(Matrix::Identity(k, k)), params, [](const Matrix& a, const Matrix& b) -> Matrix { return a * b; },
      [&space](const Matrix& x) { return std::abs(space.trace(x)); },
      [&space](const Matrix& x) { return format_complex(space.trace(x)); });
  report.word_violations = std::move(scan.listed);
  report.templates_checked = scan.checked;
  report.nonzero_words = scan.nonzero;
  finalize(report);
  return report;
}

UnitarySearch search_unitary(const MatrixSpace& space, std::span<const MatrixElement> f, const CheckParams& params,
                             std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  std::vector<std::optional<CheckReport>> reports(samples);
  detail::parallel_for(samples, params.threads, [&](std::size_t i) {
    const MatrixElement u = haar_unitary(space.k, derive_seed(seed, i));
    reports[i] = check_matrix(space, f, u, serial(params));
  });
  std::size_t best = 0;
  std::vector<double> violations;
  violations.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    violations.push_back(reports[i]->max_violation);
    if (reports[i]->max_violation < reports[best]->max_violation) best = i;
  }
  CheckReport report = std::move(*reports[best]);
  report.params.threads = params.threads;
  return {haar_unitary(space.k, derive_seed(seed, best)), std::move(report), best, std::move(violations)};
}

std::vector<MatrixElement> diagonal_phase_family(std::size_t k) {
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
    d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = std::polar(1.0, theta);
  }
  return {MatrixElement::unitary(std::move(d))};
}

SweepResult dimension_sweep(std::span<const std::size_t> dims, const FamilyGenerator& family,
                            const CheckParams& params, std::size_t samples, std::uint64_t seed) {
  if (dims.empty()) throw InvalidArgument("dimension list must be nonempty");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  std::vector<std::size_t> sorted(dims.begin(), dims.end());
  std::sort(sorted.begin(), sorted.end());
  SweepResult result;
  result.seed = seed;
  for (std::size_t k : sorted) {
    const MatrixSpace space(k);
    const auto f = family ? family(k) : std::vector<MatrixElement>{};
    const UnitarySearch search = search_unitary(space, f, params, samples, derive_seed(seed, k));
    result.rows.push_back({k, samples, search.report.max_violation, median_of(search.violations)});
  }
  return result;
}

double perturbation_bound(std::span<const double> norms_z, std::span<const double> norms_y,
                          std::span<const double> deviations) {
  const std::size_t p = deviations.size();
  if (p == 0 || norms_z.size() != p || norms_y.size() != p) {
    throw InvalidArgument("perturbation_bound needs three nonempty lists of equal length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double term = deviations[i];
    for (std::size_t j = 0; j < p; ++j) {
      if (j != i) term *= std::max(norms_z[j], norms_y[j]);
    }
    total += term;
  }
  return total;
}

double delta_for(double epsilon, int N, double M) {
  if (!(epsilon > 0.0) || N < 1 || !(M > 0.0)) throw InvalidArgument("delta_for needs eps > 0, N >= 1, M > 0");
  const double denom = 8.0 * N * std::pow(M, N - 1);
  return std::min(1.0, epsilon / denom);
}

EstimateResult verify_estimate(const MatrixSpace& space, std::size_t p, std::size_t trials, std::uint64_t seed,
                               int max_exponent) {
  if (p == 0) throw InvalidArgument("verify_estimate needs p >= 1");
  if (max_exponent < 1) throw InvalidArgument("max_exponent must be >= 1");
  const auto k = static_cast<Eigen::Index>(space.k);
  const Matrix id = Matrix::Identity(k, k);
  auto center_m = [&](const Matrix& x) -> Matrix { return x - space.trace(x) * id; };

  std::vector<Pattern> patterns{Pattern::w1, Pattern::w2, Pattern::w4};
  if (p >= 2) patterns.push_back(Pattern::w3);

  EstimateResult result;
  result.trials = trials;
  result.worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(derive_seed(seed, trial));
    const Pattern pattern = patterns[std::uniform_int_distribution<std::size_t>(0, patterns.size() - 1)(rng)];
    const bool zero_perturbation = trial % 10 == 0;
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-6.0, 0.0)(rng));

    std::vector<Matrix> z, y;
    std::vector<double> nz, ny, dev;
    for (std::size_t i = 0; i < p; ++i) {
      Matrix g = ginibre(space.k, rng);
      Matrix zi = center_m(g / operator_norm(g) * std::uniform_real_distribution<double>(0.2, 2.0)(rng));
      Matrix e = ginibre(space.k, rng);
      Matrix yi = zero_perturbation ? zi : center_m(zi + scale * e / operator_norm(e));
      nz.push_back(operator_norm(zi));
      ny.push_back(operator_norm(yi));
      dev.push_back(operator_norm(zi - yi));
      z.push_back(std::move(zi));
      y.push_back(std::move(yi));
    }
    const Matrix u = haar_unitary(space.k, rng()).matrix();

    std::size_t u_slots = pattern == Pattern::w3 ? p - 1 : pattern == Pattern::w4 ? p + 1 : p;
    std::vector<int> exps(u_slots);
    std::uniform_int_distribution<int> mag(1, max_exponent);
    for (auto& n : exps) n = mag(rng) * (rng() % 2 == 0 ? 1 : -1);

    auto upow = [&](int n) -> Matrix {
      Matrix out = id;
      const Matrix base = n < 0 ? Matrix(u.adjoint()) : u;
      for (int i = 0; i < std::abs(n); ++i) out = out * base;
      return out;
    };
    auto word = [&](const std::vector<Matrix>& ys) -> Matrix {
      Matrix out = id;
      std::size_t yi = 0, ui = 0;
      SlotKind kind = first_kind(pattern);
      for (std::size_t s = 0; s < p + u_slots; ++s) {
        out = out * (kind == SlotKind::Y ? ys[yi++] : upow(exps[ui++]));
        kind = kind == SlotKind::Y ? SlotKind::U : SlotKind::Y;
      }
      return out;
    };

    const double gap = std::abs(space.trace(word(z)) - space.trace(word(y)));
    const double bound = perturbation_bound(nz, ny, dev);
    if (gap > bound + kEstimateSlack) ++result.failures;
    result.largest_gap = std::max(result.largest_gap, gap);
    if (gap > 0.0) result.worst_ratio = std::min(result.worst_ratio, bound / gap);
  }
  return result;
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k}, {"samples", row.samples}, {"best_violation", row.best},
                    {"median_violation", row.median}});
  }
  return {{"seed", r.seed}, {"rows", std::move(rows)}};
}

std::string to_csv(const SweepResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << "k,samples,best,median,seed\n";
  for (const auto& row : r.rows) {
    out << row.k << ',' << row.samples << ',' << row.best << ',' << row.median << ',' << r.seed << '\n';
  }
  return out.str();
}

}  // namespace selfless
