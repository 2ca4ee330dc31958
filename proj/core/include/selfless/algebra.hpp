#pragma once

// The complex group algebra of a presentation with its canonical trace
// tau(g) = [g == 1]. Group elements are orthonormal in L^2(tau), so the
// 2-norm is the Euclidean norm of the coefficient vector.

#include <map>
#include <vector>

#include "selfless/scalar.hpp"
#include "selfless/words.hpp"

namespace selfless {

class AlgebraElement {
 public:
  using Terms = std::map<ReducedWord, GaussianRational>;

  /// The zero element of the group algebra of `p`.
  explicit AlgebraElement(PresentationPtr p);
  AlgebraElement(const ReducedWord& w, const GaussianRational& c = 1);  // NOLINT(google-explicit-constructor)

  static AlgebraElement identity(PresentationPtr p);
  static AlgebraElement scalar(PresentationPtr p, const GaussianRational& c);

  const PresentationPtr& presentation() const { return presentation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  GaussianRational coefficient(const ReducedWord& w) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const GaussianRational& c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const GaussianRational& c) { return a *= c; }
  friend AlgebraElement operator*(const GaussianRational& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  void add_term(const ReducedWord& w, const GaussianRational& c);
  void check_same(const AlgebraElement& o) const;

  PresentationPtr presentation_;
  Terms terms_;
};

GaussianRational trace(const AlgebraElement& x);
AlgebraElement adjoint(const AlgebraElement& x);
/// x - tau(x) 1
AlgebraElement center(const AlgebraElement& x);

struct CenteredSet {
  std::vector<AlgebraElement> originals;
  /// {x - tau(x)1} together with {x* - conj(tau(x))1}, zeros dropped,
  /// duplicates removed, in first-seen order.
  std::vector<AlgebraElement> centered;
};

CenteredSet centered_set(const std::vector<AlgebraElement>& f);

/// ||x||_2^2 = tau(x* x) = sum |c_g|^2, exact.
mpq_class two_norm_squared(const AlgebraElement& x);
double two_norm(const AlgebraElement& x);
/// l^1 norm of the coefficients, an upper bound for the reduced C*-norm.
double norm_upper(const AlgebraElement& x);

/// `2 + 3i*a b - 1/2*b^-1`; zero prints as `0`.
std::string to_string(const AlgebraElement& x);

}  // namespace selfless
