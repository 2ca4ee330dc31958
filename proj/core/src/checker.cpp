#include "selfless/checker.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "selfless/detail/scan.hpp"

namespace selfless {

namespace {

struct Monomial {
  ReducedWord word;
  GaussianRational coefficient;
};

std::optional<std::vector<Monomial>> as_monomials(const std::vector<AlgebraElement>& ys) {
  std::vector<Monomial> out;
  for (const auto& y : ys) {
    if (!y.is_monomial()) return std::nullopt;
    const auto& [w, c] = *y.terms().begin();
    out.push_back({w, c});
  }
  return out;
}

struct HalfWord {
  std::vector<Slot> slots;
  ReducedWord word;
  GaussianRational coefficient;
  int exponent_sum = 0;
};

// All alternating slot sequences of `length` starting with `start`, in
// lexicographic order, with their products.
std::vector<HalfWord> enumerate_halves(SlotKind start, std::size_t length, const std::vector<Monomial>& ys,
                                       const std::map<int, ReducedWord>& powers, const PresentationPtr& p,
                                       const CheckParams& params) {
  std::vector<HalfWord> out;
  const auto y_values = slot_values(SlotKind::Y, ys.size(), params.N);
  const auto u_values = slot_values(SlotKind::U, ys.size(), params.N);
  std::vector<Slot> slots(length);
  auto rec = [&](auto&& self, std::size_t pos, SlotKind kind, const ReducedWord& word, const GaussianRational& c,
                 int sum) -> void {
    if (pos == length) {
      out.push_back({slots, word, c, sum});
      return;
    }
    const SlotKind next = kind == SlotKind::Y ? SlotKind::U : SlotKind::Y;
    for (int v : kind == SlotKind::Y ? y_values : u_values) {
      slots[pos] = {kind, v};
      if (kind == SlotKind::Y) {
        const auto& m = ys[static_cast<std::size_t>(v)];
        self(self, pos + 1, next, multiply(word, m.word), c * m.coefficient, sum);
      } else {
        const int s = sum + std::abs(v);
        if (params.strict_exponents && s > params.N) continue;
        self(self, pos + 1, next, multiply(word, powers.at(v)), c, s);
      }
    }
  };
  rec(rec, 0, start, ReducedWord(p), GaussianRational(1), 0);
  return out;
}

// A word w = L R is the identity iff L = R^{-1}: join left halves against
// inverted right halves instead of visiting every template.
detail::ScanOutcome scan_meet_in_middle(const std::vector<Monomial>& ys, const std::map<int, ReducedWord>& powers,
                                        const PresentationPtr& p, const CheckParams& params) {
  detail::ScanOutcome out;
  if (ys.empty() || params.N < 2) return out;
  detail::TopViolations top(params.max_listed);

  for (const auto& [pattern, len] : template_blocks(params.N)) {
    const std::size_t h = len / 2;
    const SlotKind start = first_kind(pattern);
    const SlotKind right_start = h % 2 == 0 ? start : (start == SlotKind::Y ? SlotKind::U : SlotKind::Y);
    const auto left = enumerate_halves(start, h, ys, powers, p, params);
    const auto right = enumerate_halves(right_start, len - h, ys, powers, p, params);

    if (params.strict_exponents) {
      std::map<int, std::uint64_t> right_sums;
      for (const auto& r : right) ++right_sums[r.exponent_sum];
      for (const auto& l : left) {
        for (const auto& [s, count] : right_sums) {
          if (l.exponent_sum + s <= params.N) out.checked += count;
        }
      }
    } else {
      out.checked += static_cast<std::uint64_t>(left.size()) * right.size();
    }

    std::unordered_map<ReducedWord, std::vector<std::uint32_t>, ReducedWordHash> inverse_right;
    inverse_right.reserve(right.size());
    for (std::uint32_t i = 0; i < right.size(); ++i) inverse_right[invert(right[i].word)].push_back(i);

    for (const auto& l : left) {
      const auto it = inverse_right.find(l.word);
      if (it == inverse_right.end()) continue;
      for (std::uint32_t ri : it->second) {
        const auto& r = right[ri];
        if (params.strict_exponents && l.exponent_sum + r.exponent_sum > params.N) continue;
        const GaussianRational value = l.coefficient * r.coefficient;
        const double m = value.abs();
        if (m == 0.0) continue;
        ++out.nonzero;
        AlternatingTemplate t{pattern, l.slots};
        t.slots.insert(t.slots.end(), r.slots.begin(), r.slots.end());
        if (top.admits(m, t)) top.insert({std::move(t), m, to_string(value)});
      }
    }
  }
  out.listed = std::move(top).take();
  return out;
}

void require_presentation(const PresentationPtr& p, const ReducedWord& w, const char* what) {
  if (!same_presentation(p, w.presentation())) {
    throw PresentationMismatch(std::string(what) + " '" + to_string(w) + "' is not a word of " + p->to_string());
  }
}

}  // namespace

CheckReport check_algebra(const std::vector<AlgebraElement>& f, const ReducedWord& u, const CheckParams& params) {
  params.validate();
  if (u.is_identity()) throw InvalidUnitary("u must not be the identity");
  const PresentationPtr& p = u.presentation();
  for (const auto& x : f) {
    if (!same_presentation(p, x.presentation())) {
      throw PresentationMismatch("element '" + to_string(x) + "' does not live in " + p->to_string());
    }
  }

  CheckReport report;
  report.params = params;
  report.mode = ArithmeticMode::exact;
  report.norm = "l1_upper_bound";

  std::map<int, ReducedWord> powers;
  for (int n = 1; n <= params.N; ++n) {
    ReducedWord un = power(u, n);
    // tau(u^k) = [u^k == 1]
    const bool one = un.is_identity();
    report.haar_violations.push_back({n, one ? 1.0 : 0.0, one ? "1" : "0"});
    powers.emplace(-n, invert(un));
    powers.emplace(n, std::move(un));
  }

  const CenteredSet cs = centered_set(f);
  report.centered_size = cs.centered.size();

  const auto monomials = as_monomials(cs.centered);
  bool join = params.strategy == ScanStrategy::meet_in_middle ||
              (params.strategy == ScanStrategy::automatic && monomials.has_value());
  if (join && !monomials) throw InvalidArgument("meet-in-the-middle scan needs monomial centered elements");

  detail::ScanOutcome scan;
  if (join) {
    scan = scan_meet_in_middle(*monomials, powers, p, params);
  } else {
    std::map<int, AlgebraElement> algebra_powers;
    for (const auto& [n, w] : powers) algebra_powers.emplace(n, AlgebraElement(w));
    scan = detail::scan_exhaustive(
        cs.centered, algebra_powers, AlgebraElement::identity(p), params,
        [](const AlgebraElement& a, const AlgebraElement& b) { return a * b; },
        [](const AlgebraElement& x) { return trace(x).abs(); },
        [](const AlgebraElement& x) { return to_string(trace(x)); });
  }
  report.word_violations = std::move(scan.listed);
  report.templates_checked = scan.checked;
  report.nonzero_words = scan.nonzero;
  finalize(report);
  return report;
}

CheckReport check_group(const PresentationPtr& presentation, const std::vector<ReducedWord>& f,
                        const ReducedWord& u, const CheckParams& params) {
  require_presentation(presentation, u, "unitary");
  std::vector<AlgebraElement> elements;
  elements.reserve(f.size());
  for (const auto& g : f) {
    require_presentation(presentation, g, "element");
    elements.emplace_back(g);
  }
  return check_algebra(elements, u, params);
}

CheckReport check_freeness_in_free_product(const PresentationPtr& gamma, const std::vector<ReducedWord>& f,
                                           const CheckParams& params) {
  const PresentationPtr extended = make_presentation(gamma->with_free_factor("z"));
  std::vector<ReducedWord> lifted;
  lifted.reserve(f.size());
  for (const auto& g : f) {
    require_presentation(gamma, g, "element");
    lifted.push_back(lift(g, extended));
  }
  const ReducedWord z = ReducedWord::generator(extended, gamma->size());
  return check_group(extended, lifted, z, params);
}

AxialSearchResult axial_search(const PresentationPtr& presentation, const std::vector<ReducedWord>& f,
                               const AxialCandidate& candidate, const CheckParams& params) {
  if (!candidate.formula) throw InvalidArgument("axial candidate without a formula");
  if (candidate.n_min > candidate.n_max) throw InvalidArgument("empty axial search range");
  AxialSearchResult result;
  std::optional<CheckReport> best;
  for (long long n = candidate.n_min; n <= candidate.n_max; ++n) {
    const ReducedWord z = candidate.at(n);
    ++result.candidates_tried;
    if (z.is_identity()) continue;
    CheckReport report = check_group(presentation, f, z, params);
    const bool exact_zero = report.max_violation == 0.0;
    const bool better = !best || report.max_violation < best->max_violation ||
                        (report.max_violation == best->max_violation && report.nonzero_words < best->nonzero_words);
    if (exact_zero || better) {
      best = std::move(report);
      result.reported_n = n;
    }
    if (exact_zero) {
      result.n = n;
      break;
    }
  }
  if (best) result.report = std::move(*best);
  return result;
}

}  // namespace selfless
