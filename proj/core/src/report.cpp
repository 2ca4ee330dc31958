#include "selfless/report.hpp"

#include <algorithm>

namespace selfless {

bool within_tolerance(double violation, double epsilon) {
  return epsilon > 0.0 ? violation < epsilon : violation <= 0.0;
}

void finalize(CheckReport& r) {
  r.max_violation = 0.0;
  r.witness.reset();
  for (const auto& h : r.haar_violations) {
    if (h.magnitude > r.max_violation) {
      r.max_violation = h.magnitude;
      r.witness = Witness{h.k, std::nullopt, h.magnitude};
    }
  }
  if (!r.word_violations.empty() && r.word_violations.front().magnitude > r.max_violation) {
    const auto& w = r.word_violations.front();
    r.max_violation = w.magnitude;
    r.witness = Witness{std::nullopt, w.tmpl, w.magnitude};
  }
  // Floating-point traces carry rounding error, so a numeric pass needs a
  // margin below epsilon.
  const double margin = r.mode == ArithmeticMode::numeric ? kNumericMargin * std::max(1.0, r.params.epsilon) : 0.0;
  r.passed = within_tolerance(r.max_violation + margin, r.params.epsilon);
  if (r.passed) r.witness.reset();
}

nlohmann::json to_json(const AlternatingTemplate& t) {
  return {{"pattern", to_string(t.pattern)}, {"slots", to_string(t)}};
}

nlohmann::json to_json(const CheckParams& p) {
  return {{"N", p.N}, {"epsilon", p.epsilon}, {"strict_exponents", p.strict_exponents}};
}

std::string to_string(ArithmeticMode m) { return m == ArithmeticMode::exact ? "exact" : "numeric"; }

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json haar = nlohmann::json::array();
  for (const auto& h : r.haar_violations) {
    haar.push_back({{"k", h.k}, {"magnitude", h.magnitude}, {"trace", h.value}});
  }
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : r.word_violations) {
    auto j = to_json(w.tmpl);
    j["magnitude"] = w.magnitude;
    j["trace"] = w.value;
    words.push_back(std::move(j));
  }
  nlohmann::json out = {
      {"params", to_json(r.params)},
      {"mode", to_string(r.mode)},
      {"norm", r.norm},
      {"centered_size", r.centered_size},
      {"haar_violations", std::move(haar)},
      {"word_violations", std::move(words)},
      {"templates_checked", r.templates_checked},
      {"nonzero_words", r.nonzero_words},
      {"max_violation", r.max_violation},
      {"passed", r.passed},
  };
  if (r.witness) {
    nlohmann::json w = {{"magnitude", r.witness->magnitude}};
    if (r.witness->haar_k) w["haar_k"] = *r.witness->haar_k;
    if (r.witness->word) w["template"] = to_json(*r.witness->word);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

}  // namespace selfless
