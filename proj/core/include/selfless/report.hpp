#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "selfless/templates.hpp"

namespace selfless {

enum class ArithmeticMode : std::uint8_t { exact, numeric };

struct HaarViolation {
  int k = 0;
  double magnitude = 0.0;
  /// tau(u^k) as text, exact rational or decimal complex.
  std::string value;
};

struct WordViolation {
  AlternatingTemplate tmpl;
  double magnitude = 0.0;
  std::string value;
};

/// The worst offender of a failed check: a power k or a template.
struct Witness {
  std::optional<int> haar_k;
  std::optional<AlternatingTemplate> word;
  double magnitude = 0.0;
};

struct CheckReport {
  CheckParams params;
  ArithmeticMode mode = ArithmeticMode::exact;
  /// Which norm backs the operator-norm quantities of this run.
  std::string norm;
  std::size_t centered_size = 0;
  /// |tau(u^k)| for k = 1..N (the k < 0 values are their conjugates).
  std::vector<HaarViolation> haar_violations;
  /// Nonzero word traces, largest first, ties in enumeration order; at most
  /// params.max_listed entries.
  std::vector<WordViolation> word_violations;
  std::uint64_t templates_checked = 0;
  std::uint64_t nonzero_words = 0;
  double max_violation = 0.0;
  bool passed = false;
  std::optional<Witness> witness;
};

/// Fills max_violation, passed and witness from the violation lists.
void finalize(CheckReport& report);

/// Numeric reports pass only when max_violation + margin < epsilon.
inline constexpr double kNumericMargin = 1e-12;

/// Strict comparison against epsilon; epsilon = 0 demands exact zero.
bool within_tolerance(double violation, double epsilon);

nlohmann::json to_json(const AlternatingTemplate& t);
nlohmann::json to_json(const CheckParams& p);
nlohmann::json to_json(const CheckReport& r);

std::string to_string(ArithmeticMode m);

}  // namespace selfless
