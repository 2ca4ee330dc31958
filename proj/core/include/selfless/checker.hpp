#pragma once

// Exact verification of the approximate-selflessness conditions for group
// unitaries in a reduced group C*-algebra, and the axial-sequence search.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selfless/algebra.hpp"
#include "selfless/report.hpp"

namespace selfless {

/// Checks (i) |tau(u^k)| for 1 <= k <= N and (ii) every alternating word over
/// centered_set(F) and powers of u, in exact arithmetic. F may hold
/// arbitrary group-algebra elements.
CheckReport check_algebra(const std::vector<AlgebraElement>& f, const ReducedWord& u, const CheckParams& params);

/// check_algebra for a set of group elements. Every word and `u` must live in
/// `presentation`; u must not be the identity.
CheckReport check_group(const PresentationPtr& presentation, const std::vector<ReducedWord>& f,
                        const ReducedWord& u, const CheckParams& params);

/// Runs check_group inside Gamma * <z> with u = z. A genuine free product
/// makes every alternating word reduced, so the expected violation is 0.
CheckReport check_freeness_in_free_product(const PresentationPtr& gamma, const std::vector<ReducedWord>& f,
                                           const CheckParams& params);

/// A candidate sequence n -> z_n and the range of n to try.
struct AxialCandidate {
  std::function<ReducedWord(long long)> formula;
  long long n_min = 1;
  long long n_max = 64;
  std::string description;

  ReducedWord at(long long n) const { return formula(n); }
};

struct AxialSearchResult {
  /// Smallest n whose z_n passes with violation exactly 0.
  std::optional<long long> n;
  /// Report of the passing n, or of the best n tried when nothing passed.
  CheckReport report;
  long long reported_n = 0;
  std::size_t candidates_tried = 0;
};

AxialSearchResult axial_search(const PresentationPtr& presentation, const std::vector<ReducedWord>& f,
                               const AxialCandidate& candidate, const CheckParams& params);

}  // namespace selfless
