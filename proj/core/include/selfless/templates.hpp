#pragma once

// Alternating word templates: strict alternations of centered-element slots
// Y(i) and unitary-power slots U(n), containing at least one of each.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "selfless/algebra.hpp"

namespace selfless {

enum class SlotKind : std::uint8_t { Y, U };

struct Slot {
  SlotKind kind = SlotKind::Y;
  /// Index into the centered set for Y, exponent for U.
  int value = 0;

  static Slot y(int index) { return {SlotKind::Y, index}; }
  static Slot u(int exponent) { return {SlotKind::U, exponent}; }

  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// w1: Y ... U, w2: U ... Y, w3: Y ... Y, w4: U ... U.
enum class Pattern : std::uint8_t { w1, w2, w3, w4 };

Pattern pattern_of(SlotKind first, SlotKind last);
SlotKind first_kind(Pattern p);
/// Lengths admitted by a pattern have this parity (w1/w2 even, w3/w4 odd).
bool admits_length(Pattern p, std::size_t length);

struct AlternatingTemplate {
  Pattern pattern = Pattern::w1;
  std::vector<Slot> slots;

  std::size_t length() const { return slots.size(); }
  std::size_t y_count() const;
  /// Largest |n| over U slots.
  int max_exponent() const;
  int exponent_sum() const;
  /// Largest Y index + 1 (0 when there are no Y slots).
  std::size_t y_bound() const;

  /// Enumeration order: pattern, then length, then slots lexicographically.
  friend std::strong_ordering operator<=>(const AlternatingTemplate& a, const AlternatingTemplate& b);
  friend bool operator==(const AlternatingTemplate&, const AlternatingTemplate&) = default;
};

/// How the exact checker visits templates. `automatic` picks the
/// meet-in-the-middle join whenever every centered element is a monomial.
enum class ScanStrategy : std::uint8_t { automatic, exhaustive, meet_in_middle };

struct CheckParams {
  /// Bound on the number of factors and on every |n|; N >= 1.
  int N = 1;
  /// Strict tolerance; 0 demands exact vanishing.
  double epsilon = 0.0;
  /// Additionally require sum |n_i| <= N over the U slots.
  bool strict_exponents = false;
  /// Worker threads for template scans; 0 selects hardware concurrency.
  std::size_t threads = 1;
  /// Cap on the number of word violations listed in a report.
  std::size_t max_listed = 32;
  ScanStrategy strategy = ScanStrategy::automatic;

  void validate() const;
};

/// Validates the structural invariants; throws InvalidArgument.
void validate(const AlternatingTemplate& t, std::size_t p, const CheckParams& params);

/// Calls `fn` on every template for a centered set of size `p`, in
/// enumeration order.
void for_each_template(std::size_t p, int N, bool strict_exponents,
                       const std::function<void(const AlternatingTemplate&)>& fn);

std::vector<AlternatingTemplate> enumerate_templates(std::size_t p, int N, bool strict_exponents = false);

/// The ordered (pattern, length) blocks for bound N.
std::vector<std::pair<Pattern, std::size_t>> template_blocks(int N);

/// The values a slot of `kind` may take, ascending.
std::vector<int> slot_values(SlotKind kind, std::size_t p, int N);

/// Product of the slot values, with U(n) realised as u^n.
AlgebraElement instantiate(const AlternatingTemplate& t, const std::vector<AlgebraElement>& centered,
                           const AlgebraElement& u);
AlgebraElement instantiate(const AlternatingTemplate& t, const std::vector<AlgebraElement>& centered,
                           const ReducedWord& u);

/// `Y0 U2 Y1 U-1`
std::string to_string(const AlternatingTemplate& t);
std::string to_string(Pattern p);

}  // namespace selfless
