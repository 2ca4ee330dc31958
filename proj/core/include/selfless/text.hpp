#pragma once

// Text syntax used by the command-line tool.
//
//   presentation  F2 | F3 | Z2*Z3 | Z*Z3 | a:Z*s:Z2
//   word          a^3 b^-1 a      (e is the identity)
//   element       2 + 3i*a b - (1/2+1/4i)*b^-1
//   template      Y0 U2 Y1 U-1
//   family        a^n b a^n | a^(2n+1) b^-1

#include <string>
#include <string_view>
#include <vector>

#include "selfless/checker.hpp"

namespace selfless {

PresentationPtr parse_presentation(std::string_view text);
ReducedWord parse_word(std::string_view text, const PresentationPtr& p);
GaussianRational parse_scalar(std::string_view text);
AlgebraElement parse_element(std::string_view text, const PresentationPtr& p);
AlternatingTemplate parse_template(std::string_view text);

/// z_n given by a word whose exponents are affine in n.
AxialCandidate parse_family(std::string_view text, const PresentationPtr& p, long long n_min = 1,
                            long long n_max = 64);

/// Splits on commas and trims; empty input gives an empty list.
std::vector<std::string> split_list(std::string_view text);

std::vector<ReducedWord> parse_word_list(std::string_view text, const PresentationPtr& p);
std::vector<AlgebraElement> parse_element_list(std::string_view text, const PresentationPtr& p);

}  // namespace selfless
