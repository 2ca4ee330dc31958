#include "selfless/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace selfless {

AlgebraElement::AlgebraElement(PresentationPtr p) : presentation_(std::move(p)) {
  if (!presentation_) throw InvalidArgument("algebra element without a presentation");
}

AlgebraElement::AlgebraElement(const ReducedWord& w, const GaussianRational& c) : presentation_(w.presentation()) {
  add_term(w, c);
}

AlgebraElement AlgebraElement::identity(PresentationPtr p) {
  ReducedWord e(p);
  return AlgebraElement(e, 1);
}

AlgebraElement AlgebraElement::scalar(PresentationPtr p, const GaussianRational& c) {
  ReducedWord e(p);
  return AlgebraElement(e, c);
}

GaussianRational AlgebraElement::coefficient(const ReducedWord& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void AlgebraElement::add_term(const ReducedWord& w, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void AlgebraElement::check_same(const AlgebraElement& o) const {
  if (!same_presentation(presentation_, o.presentation_)) {
    throw PresentationMismatch("algebra elements from " + presentation_->to_string() + " and " +
                               o.presentation_->to_string());
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_same(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check_same(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_same(b);
  AlgebraElement out(a.presentation_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(multiply(wa, wb), ca * cb);
  }
  return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return same_presentation(a.presentation_, b.presentation_) && a.terms_ == b.terms_;
}

GaussianRational trace(const AlgebraElement& x) { return x.coefficient(ReducedWord(x.presentation())); }

AlgebraElement adjoint(const AlgebraElement& x) {
  AlgebraElement out(x.presentation());
  for (const auto& [w, c] : x.terms()) out += AlgebraElement(invert(w), c.conj());
  return out;
}

AlgebraElement center(const AlgebraElement& x) {
  return x - AlgebraElement::scalar(x.presentation(), trace(x));
}

CenteredSet centered_set(const std::vector<AlgebraElement>& f) {
  CenteredSet out;
  out.originals = f;
  auto keep = [&out](AlgebraElement y) {
    if (y.is_zero()) return;
    if (std::find(out.centered.begin(), out.centered.end(), y) != out.centered.end()) return;
    out.centered.push_back(std::move(y));
  };
  for (const auto& x : f) {
    keep(center(x));
    keep(center(adjoint(x)));
  }
  return out;
}

mpq_class two_norm_squared(const AlgebraElement& x) {
  mpq_class sum = 0;
  for (const auto& [w, c] : x.terms()) sum += c.norm();
  return sum;
}

double two_norm(const AlgebraElement& x) { return std::sqrt(two_norm_squared(x).get_d()); }

double norm_upper(const AlgebraElement& x) {
  double sum = 0.0;
  for (const auto& [w, c] : x.terms()) sum += c.abs();
  return sum;
}

std::string to_string(const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : x.terms()) {
    std::string coeff = to_string(c);
    const bool compound = sgn(c.real()) != 0 && sgn(c.imag()) != 0;
    if (compound) coeff = "(" + coeff + ")";
    std::string term;
    if (w.is_identity()) {
      term = coeff;
    } else if (c == 1) {
      term = to_string(w);
    } else if (c == -1) {
      term = "-" + to_string(w);
    } else {
      term = coeff + "*" + to_string(w);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace selfless
