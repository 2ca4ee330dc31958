#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "selfless/checker.hpp"
#include "selfless/errors.hpp"
#include "selfless/numeric.hpp"
#include "selfless/text.hpp"

namespace selfless {
namespace {

CheckParams params(int N, double eps) {
  CheckParams p;
  p.N = N;
  p.epsilon = eps;
  p.max_listed = 100000;
  return p;
}

TEST(Haar, OneByOneIsAPhase) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto u = haar_unitary(1, s);
    EXPECT_NEAR(std::abs(u.matrix()(0, 0)), 1.0, 1e-14);
  }
}

TEST(Haar, UnitaryAndDeterministic) {
  for (std::size_t k : {2u, 7u, 32u}) {
    auto u = haar_unitary(k, 99);
    Matrix id = Matrix::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    EXPECT_LT(max_abs_diff(u.matrix().adjoint() * u.matrix(), id), 1e-12);
    EXPECT_EQ(max_abs_diff(u.matrix(), haar_unitary(k, 99).matrix()), 0.0);
    EXPECT_GT(max_abs_diff(u.matrix(), haar_unitary(k, 100).matrix()), 0.0);
    EXPECT_NEAR(operator_norm(u.matrix()), 1.0, 1e-12);
  }
}

// For Haar unitaries E|Tr U|^2 = 1 and E|Tr U^2|^2 = 2 (k >= 2). Sampling
// without the phase fix from diag(R) gets these wrong.
TEST(Haar, LowMoments) {
  constexpr int kSamples = 4000;
  const std::size_t k = 6;
  double m1 = 0, m2 = 0;
  for (int i = 0; i < kSamples; ++i) {
    const Matrix u = haar_unitary(k, derive_seed(5, static_cast<std::uint64_t>(i))).matrix();
    m1 += std::norm(u.trace());
    m2 += std::norm((u * u).trace());
  }
  EXPECT_NEAR(m1 / kSamples, 1.0, 0.1);
  EXPECT_NEAR(m2 / kSamples, 2.0, 0.2);
}

TEST(MatrixElement, RejectsNonUnitary) {
  Matrix m = Matrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(MatrixElement::unitary(m), InvalidUnitary);
  EXPECT_FALSE(MatrixElement(m).is_unitary());
}

TEST(CheckMatrix, OneByOneAlwaysFails) {
  MatrixSpace space(1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto r = check_matrix(space, {}, haar_unitary(1, s), params(1, 0.5));
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.max_violation, 1.0, 1e-12);
  }
}

TEST(CheckMatrix, TracelessUnitaryPassesHaarCondition) {
  MatrixSpace space(2);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -1;
  auto r = check_matrix(space, {}, MatrixElement::unitary(d), params(1, 1e-9));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_violation, 0.0);
  // u^2 = 1
  EXPECT_FALSE(check_matrix(space, {}, MatrixElement::unitary(d), params(2, 1e-9)).passed);
}

TEST(CheckMatrix, Errors) {
  MatrixSpace space(2);
  auto u3 = haar_unitary(3, 1);
  EXPECT_THROW(check_matrix(space, {}, u3, params(1, 0.5)), InvalidArgument);
  EXPECT_THROW(check_matrix(space, {}, MatrixElement(Matrix::Identity(2, 2) * 2.0), params(1, 0.5)), InvalidUnitary);
}

// Z/m acting on l^2(Z/m) by the cyclic shift: the normalized matrix trace is
// the group trace, so the two checkers must agree.
TEST(CheckMatrix, RegularRepresentationAgreesWithGroup) {
  for (int m : {3, 5, 6}) {
    auto g = parse_presentation("Z" + std::to_string(m));
    Matrix shift = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) shift((i + 1) % m, i) = 1;
    auto rep = [&](long e) {
      Matrix x = Matrix::Identity(m, m);
      for (long i = 0; i < ((e % m) + m) % m; ++i) x = shift * x;
      return x;
    };
    MatrixSpace space(static_cast<std::size_t>(m));
    for (long fe : {1L, 2L}) {
      for (long ue : {1L, 2L}) {
        for (int N : {1, 2, 3}) {
          auto exact = check_group(g, {ReducedWord::generator(g, 0, fe)}, ReducedWord::generator(g, 0, ue),
                                   params(N, 1e-9));
          std::vector<MatrixElement> f{MatrixElement::unitary(rep(fe))};
          auto approx = check_matrix(space, f, MatrixElement::unitary(rep(ue)), params(N, 1e-9));
          EXPECT_NEAR(exact.max_violation, approx.max_violation, 1e-9);
          EXPECT_EQ(exact.passed, approx.passed);
          ASSERT_EQ(exact.haar_violations.size(), approx.haar_violations.size());
          for (std::size_t i = 0; i < exact.haar_violations.size(); ++i) {
            EXPECT_NEAR(exact.haar_violations[i].magnitude, approx.haar_violations[i].magnitude, 1e-9);
          }
          EXPECT_EQ(exact.templates_checked, approx.templates_checked);
        }
      }
    }
  }
}

TEST(SearchUnitary, PrefixMinimum) {
  MatrixSpace space(4);
  auto f = diagonal_phase_family(4);
  auto full = search_unitary(space, f, params(2, 0.1), 12, 3);
  ASSERT_EQ(full.violations.size(), 12u);
  auto best = *std::min_element(full.violations.begin(), full.violations.end());
  EXPECT_EQ(full.report.max_violation, best);
  EXPECT_EQ(full.violations[full.best_index], best);
  for (std::size_t i = 0; i < full.best_index; ++i) EXPECT_GT(full.violations[i], best);
  for (std::size_t s = 1; s <= 12; ++s) {
    auto part = search_unitary(space, f, params(2, 0.1), s, 3);
    EXPECT_EQ(part.report.max_violation,
              *std::min_element(full.violations.begin(), full.violations.begin() + static_cast<long>(s)));
  }
  auto first = check_matrix(space, f, haar_unitary(4, derive_seed(3, 0)), params(2, 0.1));
  EXPECT_EQ(first.max_violation, full.violations[0]);
}

TEST(SearchUnitary, OneByOne) {
  MatrixSpace space(1);
  auto r = search_unitary(space, {}, params(1, 0.5), 10, 1);
  EXPECT_NEAR(r.report.max_violation, 1.0, 1e-12);
}

TEST(Sweep, Basics) {
  std::vector<std::size_t> one{1};
  auto r = dimension_sweep(one, [](std::size_t) { return std::vector<MatrixElement>{}; }, params(1, 0.5), 5, 2);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0].best, 1.0, 1e-12);
  std::vector<std::size_t> dims{2, 4};
  auto a = dimension_sweep(dims, diagonal_phase_family, params(2, 0.5), 6, 8);
  auto b = dimension_sweep(dims, diagonal_phase_family, params(2, 0.5), 6, 8);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(to_csv(a).substr(0, 24), "k,samples,best,median,se");
  EXPECT_LE(a.rows[0].best, a.rows[0].median);
}

TEST(PerturbationBound, Examples) {
  std::vector<double> z{2, 3}, y{1, 4}, zero{0, 0};
  EXPECT_EQ(perturbation_bound(z, y, zero), 0.0);
  std::vector<double> one{5}, d1{0.25};
  EXPECT_EQ(perturbation_bound(one, one, d1), 0.25);
  std::vector<double> m{4, 4}, d{0.1, 0.2};
  EXPECT_NEAR(perturbation_bound(m, m, d), 0.1 * 4 + 0.2 * 4, 1e-15);
  // max(||z_j||, ||y_j||) is used per factor.
  EXPECT_NEAR(perturbation_bound(z, y, d), 0.1 * 4 + 0.2 * 2, 1e-15);
  std::vector<double> short_d{0.1};
  EXPECT_THROW(perturbation_bound(z, y, short_d), InvalidArgument);
}

TEST(DeltaFor, Examples) {
  EXPECT_NEAR(delta_for(0.1, 3, 4), 0.1 / 384, 1e-18);
  EXPECT_EQ(delta_for(1e6, 3, 1), 1.0);
  EXPECT_EQ(delta_for(0.4, 1, 1000), 0.05);
  EXPECT_THROW(delta_for(0, 2, 1), InvalidArgument);
  EXPECT_THROW(delta_for(0.1, 0, 1), InvalidArgument);
  EXPECT_THROW(delta_for(0.1, 2, 0.0), InvalidArgument);
}

TEST(DeltaFor, GridInequality) {
  for (double eps : {1e-6, 1e-3, 0.05, 0.5, 1.0, 10.0}) {
    for (int N = 1; N <= 8; ++N) {
      for (double M : {1.0, 1.5, 2.0, 4.0, 10.0}) {
        double d = delta_for(eps, N, M);
        EXPECT_LE(d, 1.0);
        EXPECT_GT(d, 0.0);
        EXPECT_LT(N * 2 * d * std::pow(M, N - 1), eps / 2);
      }
    }
  }
}

TEST(VerifyEstimate, NoFailures) {
  MatrixSpace space(8);
  for (std::size_t p = 1; p <= 3; ++p) {
    auto r = verify_estimate(space, p, 200, 17 + p);
    EXPECT_EQ(r.trials, 200u);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_GE(r.worst_ratio, 1.0);
  }
  auto zero = verify_estimate(space, 2, 1, 3);
  EXPECT_EQ(zero.largest_gap, 0.0);
}

TEST(Seeds, DeriveSeedSpreads) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
}  // namespace selfless
