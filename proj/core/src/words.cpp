#include "selfless/words.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace selfless {

namespace {

constexpr std::string_view kFreeNames = "abcdfghjklmnopqrstuvwxy";

// Brings `e` into the canonical range for factor `f`: unchanged for an
// infinite factor, {0, ..., m-1} for order m.
void normalize(const CyclicFactor& f, Exponent& e) {
  if (f.order) {
    mpz_fdiv_r_ui(e.get_mpz_t(), e.get_mpz_t(), *f.order);
  }
}

void push_reduced(std::vector<Syllable>& stack, const GroupPresentation& p, const Syllable& s) {
  if (s.factor >= p.size()) {
    throw PresentationMismatch("factor index " + std::to_string(s.factor) +
                               " out of range for presentation " + p.to_string());
  }
  const CyclicFactor& f = p.factor(s.factor);
  if (!stack.empty() && stack.back().factor == s.factor) {
    Exponent& top = stack.back().exponent;
    top += s.exponent;
    normalize(f, top);
    if (top == 0) stack.pop_back();
    return;
  }
  Exponent e = s.exponent;
  normalize(f, e);
  if (e != 0) stack.emplace_back(s.factor, std::move(e));
}

}  // namespace

GroupPresentation::GroupPresentation(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("a presentation needs at least one factor");
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.name.empty()) throw InvalidArgument("generator names must be nonempty");
    if (f.name == "e") throw InvalidArgument("'e' is reserved for the identity word");
    if (!seen.insert(f.name).second) throw InvalidArgument("duplicate generator name '" + f.name + "'");
    if (f.order && *f.order < 2) throw InvalidArgument("finite cyclic factors need order >= 2");
  }
}

GroupPresentation GroupPresentation::free_group(std::size_t rank) {
  std::vector<CyclicFactor> factors;
  for (std::size_t i = 0; i < rank; ++i) {
    std::string name = i < kFreeNames.size() ? std::string(1, kFreeNames[i]) : "g" + std::to_string(i);
    factors.push_back({std::move(name), std::nullopt});
  }
  return GroupPresentation(std::move(factors));
}

std::optional<std::size_t> GroupPresentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name == name) return i;
  }
  return std::nullopt;
}

GroupPresentation GroupPresentation::with_free_factor(std::string preferred) const {
  std::string name = preferred;
  for (int suffix = 1; find(name); ++suffix) name = preferred + std::to_string(suffix);
  auto factors = factors_;
  factors.push_back({std::move(name), std::nullopt});
  return GroupPresentation(std::move(factors));
}

bool GroupPresentation::is_extended_by_one(const GroupPresentation& extended) const {
  if (extended.size() != size() + 1) return false;
  if (!extended.factors_.back().infinite()) return false;
  return std::equal(factors_.begin(), factors_.end(), extended.factors_.begin());
}

std::string GroupPresentation::to_string() const {
  if (factors_ == free_group(factors_.size()).factors_) return "F" + std::to_string(factors_.size());
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += f.name + ":Z";
    if (f.order) out += std::to_string(*f.order);
  }
  return out;
}

PresentationPtr make_presentation(GroupPresentation p) {
  return std::make_shared<const GroupPresentation>(std::move(p));
}

bool same_presentation(const PresentationPtr& x, const PresentationPtr& y) {
  return x == y || (x && y && *x == *y);
}

ReducedWord::ReducedWord(PresentationPtr p) : presentation_(std::move(p)) {
  if (!presentation_) throw InvalidArgument("word without a presentation");
}

ReducedWord ReducedWord::generator(PresentationPtr p, std::size_t factor, const Exponent& e) {
  const Syllable s(factor, e);
  return reduce(std::span(&s, 1), std::move(p));
}

bool operator==(const ReducedWord& x, const ReducedWord& y) {
  return x.syllables_ == y.syllables_ && same_presentation(x.presentation_, y.presentation_);
}

std::strong_ordering operator<=>(const ReducedWord& x, const ReducedWord& y) {
  const auto n = std::min(x.syllables_.size(), y.syllables_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = x.syllables_[i];
    const auto& b = y.syllables_[i];
    if (auto c = a.factor <=> b.factor; c != 0) return c;
    const int c = cmp(a.exponent, b.exponent);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.syllables_.size() <=> y.syllables_.size();
}

ReducedWord reduce(std::span<const Syllable> raw, PresentationPtr p) {
  ReducedWord out(std::move(p));
  out.syllables_.reserve(raw.size());
  for (const auto& s : raw) push_reduced(out.syllables_, *out.presentation_, s);
  return out;
}

ReducedWord multiply(const ReducedWord& x, const ReducedWord& y) {
  if (!same_presentation(x.presentation_, y.presentation_)) {
    throw PresentationMismatch("cannot multiply words from " + x.presentation_->to_string() + " and " +
                               y.presentation_->to_string());
  }
  ReducedWord out = x;
  out.syllables_.reserve(x.length() + y.length());
  for (const auto& s : y.syllables_) push_reduced(out.syllables_, *out.presentation_, s);
  return out;
}

ReducedWord invert(const ReducedWord& x) {
  ReducedWord out(x.presentation_);
  out.syllables_.reserve(x.length());
  for (auto it = x.syllables_.rbegin(); it != x.syllables_.rend(); ++it) {
    Exponent e = -it->exponent;
    normalize(x.presentation_->factor(it->factor), e);
    out.syllables_.emplace_back(it->factor, std::move(e));
  }
  return out;
}

ReducedWord power(const ReducedWord& x, const Exponent& n) {
  ReducedWord base = n < 0 ? invert(x) : x;
  Exponent k = abs(n);
  ReducedWord result(x.presentation());
  // A single syllable stays a single syllable.
  if (base.length() == 1) {
    const Syllable s(base.syllables().front().factor, base.syllables().front().exponent * k);
    return reduce(std::span(&s, 1), x.presentation());
  }
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

ReducedWord lift(const ReducedWord& w, PresentationPtr into) {
  const auto& from = *w.presentation();
  if (into->size() < from.size() ||
      !std::equal(from.factors().begin(), from.factors().end(), into->factors().begin())) {
    throw PresentationMismatch("cannot lift a word of " + from.to_string() + " into " + into->to_string());
  }
  return reduce(w.syllables(), std::move(into));
}

ReducedWord substitute(const ReducedWord& w, const ReducedWord& target) {
  const auto& base = *target.presentation();
  if (!base.is_extended_by_one(*w.presentation())) {
    throw PresentationMismatch("substitution needs a word over " + base.to_string() +
                               " plus one free factor, got " + w.presentation()->to_string());
  }
  const std::size_t z = base.size();
  std::vector<Syllable> raw;
  raw.reserve(w.length());
  for (const auto& s : w.syllables()) {
    if (s.factor != z) {
      raw.push_back(s);
      continue;
    }
    const ReducedWord image = power(target, s.exponent);
    raw.insert(raw.end(), image.syllables().begin(), image.syllables().end());
  }
  return reduce(raw, target.presentation());
}

std::string to_string(const ReducedWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += w.presentation()->factor(s.factor).name;
    if (s.exponent != 1) out += "^" + s.exponent.get_str();
  }
  return out;
}

std::size_t hash_value(const ReducedWord& w) {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& s : w.syllables()) {
    mix(s.factor);
    const mpz_srcptr z = s.exponent.get_mpz_t();
    mix(static_cast<std::size_t>(mpz_sgn(z) + 1));
    for (std::size_t i = 0; i < mpz_size(z); ++i) mix(static_cast<std::size_t>(mpz_getlimbn(z, i)));
  }
  return h;
}

}  // namespace selfless
