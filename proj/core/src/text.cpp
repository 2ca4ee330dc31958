#include "selfless/text.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace selfless {

namespace {

constexpr std::string_view kProductNames = "stvwxy";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool is_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Exponent parse_integer(std::string_view s, std::string_view context) {
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (!is_integer(s)) throw ParseError("malformed exponent '" + std::string(s) + "' in '" + std::string(context) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Exponent(std::string(s), 10);
}

std::size_t lookup_generator(std::string_view name, const PresentationPtr& p, std::string_view context) {
  const auto idx = p->find(name);
  if (!idx) {
    throw ParseError("unknown generator '" + std::string(name) + "' in '" + std::string(context) + "' for " +
                     p->to_string());
  }
  return *idx;
}

// Splits `token` as `gen` or `gen^exp`.
std::pair<std::string_view, std::string_view> split_power(std::string_view token) {
  const auto caret = token.find('^');
  if (caret == std::string_view::npos) return {token, {}};
  if (caret + 1 == token.size()) throw ParseError("missing exponent after '^' in '" + std::string(token) + "'");
  return {token.substr(0, caret), token.substr(caret + 1)};
}

mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  if (s.empty()) throw ParseError("empty number");
  mpq_class out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = trim(s.substr(0, slash));
    const auto den = trim(s.substr(slash + 1));
    if (!is_integer(num) || !is_integer(den) || num.front() == '-' || den.front() == '-') {
      throw ParseError("malformed rational '" + std::string(s) + "'");
    }
    mpz_class d(std::string{den}, 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    out = mpq_class(mpz_class(std::string{num}, 10), d);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto whole = s.substr(0, dot);
    const auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !is_integer(whole)) || (!frac.empty() && !is_integer(frac)) ||
        (whole.empty() && frac.empty())) {
      throw ParseError("malformed decimal '" + std::string(s) + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::string digits = std::string(whole) + std::string(frac);
    out = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!is_integer(s)) throw ParseError("malformed number '" + std::string(s) + "'");
    out = mpq_class(mpz_class(std::string{s}, 10));
  }
  out.canonicalize();
  return negative ? mpq_class(-out) : out;
}

// A real or pure-imaginary literal: `3`, `-1/2`, `2i`, `i`, `-i`.
GaussianRational parse_simple_scalar(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.back() == 'i') {
    auto body = trim(s.substr(0, s.size() - 1));
    if (body.empty() || body == "+") return {0, 1};
    if (body == "-") return {0, -1};
    return {0, parse_rational(body)};
  }
  return {parse_rational(s), 0};
}

// Splits at top-level + and - that separate terms: not inside parentheses and
// not directly after '^', '*', '/' or another sign.
std::vector<std::pair<bool, std::string_view>> split_terms(std::string_view s) {
  std::vector<std::pair<bool, std::string_view>> out;
  int depth = 0;
  bool negative = false;
  std::size_t start = 0;
  char prev = '\0';
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool separator = depth == 0 && (c == '+' || c == '-') && prev != '^' && prev != '*' && prev != '/' &&
                           prev != '+' && prev != '-';
    if (separator) {
      const auto term = trim(s.substr(start, i - start));
      if (!term.empty()) {
        out.emplace_back(negative, term);
      } else if (!out.empty()) {
        throw ParseError("empty term in '" + std::string(s) + "'");
      }
      negative = c == '-';
      start = i + 1;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
  const auto last = trim(s.substr(start));
  if (last.empty()) throw ParseError("dangling sign in '" + std::string(s) + "'");
  out.emplace_back(negative, last);
  return out;
}

bool looks_numeric(std::string_view s) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '(') return true;
  try {
    parse_simple_scalar(s);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

struct AffineExponent {
  mpz_class slope = 0;
  mpz_class offset = 0;
};

AffineExponent parse_affine(std::string_view s, std::string_view context) {
  s = trim(s);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw ParseError("empty exponent in '" + std::string(context) + "'");
  AffineExponent out;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw ParseError("malformed exponent '" + std::string(s) + "' in '" + std::string(context) + "'");
    }
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    mpz_class coeff = i > digits_start ? mpz_class(std::string(s.substr(digits_start, i - digits_start)), 10) : mpz_class(1);
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && s[i] == 'n') {
      out.slope += sign * coeff;
      ++i;
    } else if (i > digits_start) {
      out.offset += sign * coeff;
    } else {
      throw ParseError("malformed exponent '" + std::string(s) + "' in '" + std::string(context) + "'");
    }
    first = false;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  return out;
}

}  // namespace

PresentationPtr parse_presentation(std::string_view text) {
  const auto s = trim(text);
  if (s.size() >= 2 && s.front() == 'F' && is_integer(s.substr(1)) && s[1] != '-' && s[1] != '+') {
    const long rank = std::stol(std::string(s.substr(1)));
    if (rank < 1) throw ParseError("free group rank must be >= 1");
    return make_presentation(GroupPresentation::free_group(static_cast<std::size_t>(rank)));
  }
  std::vector<CyclicFactor> factors;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto star = s.find('*', start);
    auto part = trim(s.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start));
    std::string name;
    if (const auto colon = part.find(':'); colon != std::string_view::npos) {
      name = std::string(trim(part.substr(0, colon)));
      part = trim(part.substr(colon + 1));
    } else {
      const std::size_t i = factors.size();
      name = i < kProductNames.size() ? std::string(1, kProductNames[i]) : "g" + std::to_string(i);
    }
    if (part.empty() || part.front() != 'Z') throw ParseError("malformed presentation '" + std::string(s) + "'");
    auto order = part.substr(1);
    if (!order.empty() && order.front() == '/') order.remove_prefix(1);
    CyclicFactor f{name, std::nullopt};
    if (!order.empty()) {
      if (!is_integer(order) || order.front() == '-' || order.front() == '+') {
        throw ParseError("malformed cyclic order in '" + std::string(s) + "'");
      }
      f.order = std::stoul(std::string(order));
    }
    factors.push_back(std::move(f));
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  try {
    return make_presentation(GroupPresentation(std::move(factors)));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

ReducedWord parse_word(std::string_view text, const PresentationPtr& p) {
  std::vector<Syllable> raw;
  for (auto token : split_tokens(text)) {
    auto [name, exp] = split_power(token);
    if (name == "e") {
      if (!exp.empty()) parse_integer(exp, text);
      continue;
    }
    const std::size_t factor = lookup_generator(name, p, text);
    raw.emplace_back(factor, exp.empty() ? Exponent(1) : parse_integer(exp, text));
  }
  return reduce(raw, p);
}

GaussianRational parse_scalar(std::string_view text) {
  auto s = trim(text);
  bool negative = false;
  if (!s.empty() && s.front() == '-' && s.size() > 1 && s[1] == '(') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
    const auto inner = trim(s.substr(1, s.size() - 2));
    GaussianRational z;
    // Split at a sign that is not leading.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < inner.size(); ++i) {
      if ((inner[i] == '+' || inner[i] == '-') && inner[i - 1] != '/') split = i;
    }
    if (split == std::string_view::npos) {
      z = parse_simple_scalar(inner);
    } else {
      z = parse_simple_scalar(inner.substr(0, split)) + parse_simple_scalar(inner.substr(split));
    }
    return negative ? -z : z;
  }
  return parse_simple_scalar(s);
}

AlgebraElement parse_element(std::string_view text, const PresentationPtr& p) {
  if (trim(text).empty()) throw ParseError("empty element");
  AlgebraElement out(p);
  for (const auto& [negative, term] : split_terms(text)) {
    GaussianRational coeff = 1;
    ReducedWord word(p);
    if (const auto star = term.find('*'); star != std::string_view::npos) {
      coeff = parse_scalar(term.substr(0, star));
      word = parse_word(term.substr(star + 1), p);
    } else if (looks_numeric(term)) {
      coeff = parse_scalar(term);
    } else {
      word = parse_word(term, p);
    }
    out += AlgebraElement(word, negative ? -coeff : coeff);
  }
  return out;
}

AlternatingTemplate parse_template(std::string_view text) {
  AlternatingTemplate t;
  for (auto token : split_tokens(text)) {
    if (token.size() < 2 || (token.front() != 'Y' && token.front() != 'U') || !is_integer(token.substr(1))) {
      throw ParseError("malformed template slot '" + std::string(token) + "'");
    }
    int value = 0;
    auto digits = token.substr(1);
    if (digits.front() == '+') digits.remove_prefix(1);
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (res.ec != std::errc{}) throw ParseError("slot value out of range in '" + std::string(token) + "'");
    t.slots.push_back({token.front() == 'Y' ? SlotKind::Y : SlotKind::U, value});
  }
  if (t.slots.size() < 2) throw ParseError("a template needs at least one Y and one U slot");
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    const auto& s = t.slots[i];
    if (i > 0 && s.kind == t.slots[i - 1].kind) throw ParseError("template slots must alternate Y and U");
    if (s.kind == SlotKind::U && s.value == 0) throw ParseError("U0 is not allowed");
    if (s.kind == SlotKind::Y && s.value < 0) throw ParseError("Y indices are nonnegative");
  }
  t.pattern = pattern_of(t.slots.front().kind, t.slots.back().kind);
  return t;
}

AxialCandidate parse_family(std::string_view text, const PresentationPtr& p, long long n_min, long long n_max) {
  std::vector<std::pair<std::size_t, AffineExponent>> parts;
  for (auto token : split_tokens(text)) {
    auto [name, exp] = split_power(token);
    if (name == "e") continue;
    const std::size_t factor = lookup_generator(name, p, text);
    parts.emplace_back(factor, exp.empty() ? AffineExponent{0, 1} : parse_affine(exp, text));
  }
  AxialCandidate c;
  c.n_min = n_min;
  c.n_max = n_max;
  c.description = std::string(trim(text));
  c.formula = [parts, p](long long n) {
    std::vector<Syllable> raw;
    raw.reserve(parts.size());
    const mpz_class nn(static_cast<long>(n));
    for (const auto& [factor, e] : parts) raw.emplace_back(factor, Exponent(e.slope * nn + e.offset));
    return reduce(raw, p);
  };
  return c;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) throw ParseError("empty list item in '" + std::string(text) + "'");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<ReducedWord> parse_word_list(std::string_view text, const PresentationPtr& p) {
  std::vector<ReducedWord> out;
  for (const auto& item : split_list(text)) out.push_back(parse_word(item, p));
  return out;
}

std::vector<AlgebraElement> parse_element_list(std::string_view text, const PresentationPtr& p) {
  std::vector<AlgebraElement> out;
  for (const auto& item : split_list(text)) out.push_back(parse_element(item, p));
  return out;
}

}  // namespace selfless
