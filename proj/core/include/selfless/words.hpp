#pragma once

// Normal-form arithmetic in free products of cyclic groups.
//
// A word is stored as a list of syllables g_i^{e_i}. The normal form has no
// two adjacent syllables in the same factor, no zero exponents, and exponents
// in {1, ..., m-1} for a factor of finite order m. Exponents are GMP integers
// so families like a^n b a^n stay small for any n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "selfless/errors.hpp"

namespace selfless {

using Exponent = mpz_class;

struct CyclicFactor {
  std::string name;
  /// Empty for an infinite cyclic factor.
  std::optional<unsigned long> order;

  bool infinite() const { return !order.has_value(); }
  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
};

class GroupPresentation {
 public:
  explicit GroupPresentation(std::vector<CyclicFactor> factors);

  /// F_r with generators a, b, c, d, f, ... ('e' is reserved for the identity).
  static GroupPresentation free_group(std::size_t rank);

  std::size_t size() const { return factors_.size(); }
  const CyclicFactor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// This presentation with one extra infinite cyclic factor appended.
  /// The new generator is called `preferred`, or `preferred` plus a digit if
  /// that name is taken.
  GroupPresentation with_free_factor(std::string preferred = "z") const;

  /// True when `extended` is this presentation plus one trailing infinite factor.
  bool is_extended_by_one(const GroupPresentation& extended) const;

  /// Compact spelling, e.g. "F2" or "s:Z2*t:Z3".
  std::string to_string() const;

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  std::vector<CyclicFactor> factors_;
};

using PresentationPtr = std::shared_ptr<const GroupPresentation>;

PresentationPtr make_presentation(GroupPresentation p);

struct Syllable {
  std::size_t factor = 0;
  Exponent exponent;

  Syllable() = default;
  Syllable(std::size_t f, Exponent e) : factor(f), exponent(std::move(e)) {}
  Syllable(std::size_t f, long e) : factor(f), exponent(e) {}

  friend bool operator==(const Syllable& x, const Syllable& y) {
    return x.factor == y.factor && x.exponent == y.exponent;
  }
};

class ReducedWord {
 public:
  /// The identity of `p`.
  explicit ReducedWord(PresentationPtr p);

  static ReducedWord generator(PresentationPtr p, std::size_t factor, const Exponent& e = 1);

  const PresentationPtr& presentation() const { return presentation_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t length() const { return syllables_.size(); }
  bool is_identity() const { return syllables_.empty(); }

  /// Syllable-wise comparison; the presentations must agree.
  friend bool operator==(const ReducedWord& x, const ReducedWord& y);
  friend std::strong_ordering operator<=>(const ReducedWord& x, const ReducedWord& y);

 private:
  friend ReducedWord reduce(std::span<const Syllable> raw, PresentationPtr p);
  friend ReducedWord multiply(const ReducedWord& x, const ReducedWord& y);
  friend ReducedWord invert(const ReducedWord& x);

  PresentationPtr presentation_;
  std::vector<Syllable> syllables_;
};

bool same_presentation(const PresentationPtr& x, const PresentationPtr& y);

/// Normal form of an arbitrary syllable list. Throws PresentationMismatch on
/// a factor index outside `p`.
ReducedWord reduce(std::span<const Syllable> raw, PresentationPtr p);

ReducedWord multiply(const ReducedWord& x, const ReducedWord& y);
ReducedWord invert(const ReducedWord& x);
ReducedWord power(const ReducedWord& x, const Exponent& n);

inline ReducedWord operator*(const ReducedWord& x, const ReducedWord& y) { return multiply(x, y); }

/// Reinterprets `w` in a presentation that contains its factors as a prefix
/// (e.g. Gamma inside Gamma * <z>).
ReducedWord lift(const ReducedWord& w, PresentationPtr into);

/// The homomorphism Gamma * <z> -> Gamma that is the identity on Gamma and
/// sends the trailing free generator z to `target`.
ReducedWord substitute(const ReducedWord& w, const ReducedWord& target);

/// `a^3 b^-1 a`; the identity prints as `e`.
std::string to_string(const ReducedWord& w);

std::size_t hash_value(const ReducedWord& w);

struct ReducedWordHash {
  std::size_t operator()(const ReducedWord& w) const { return hash_value(w); }
};

}  // namespace selfless
