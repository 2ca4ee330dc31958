#include "selfless/templates.hpp"

#include <algorithm>
#include <cstdlib>

namespace selfless {

Pattern pattern_of(SlotKind first, SlotKind last) {
  if (first == SlotKind::Y) return last == SlotKind::U ? Pattern::w1 : Pattern::w3;
  return last == SlotKind::Y ? Pattern::w2 : Pattern::w4;
}

SlotKind first_kind(Pattern p) { return p == Pattern::w1 || p == Pattern::w3 ? SlotKind::Y : SlotKind::U; }

bool admits_length(Pattern p, std::size_t length) {
  if (length < 2) return false;
  const bool even = length % 2 == 0;
  return (p == Pattern::w1 || p == Pattern::w2) ? even : (even ? false : length >= 3);
}

std::size_t AlternatingTemplate::y_count() const {
  return static_cast<std::size_t>(
      std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return s.kind == SlotKind::Y; }));
}

int AlternatingTemplate::max_exponent() const {
  int m = 0;
  for (const auto& s : slots) {
    if (s.kind == SlotKind::U) m = std::max(m, std::abs(s.value));
  }
  return m;
}

int AlternatingTemplate::exponent_sum() const {
  int sum = 0;
  for (const auto& s : slots) {
    if (s.kind == SlotKind::U) sum += std::abs(s.value);
  }
  return sum;
}

std::size_t AlternatingTemplate::y_bound() const {
  std::size_t b = 0;
  for (const auto& s : slots) {
    if (s.kind == SlotKind::Y) b = std::max(b, static_cast<std::size_t>(s.value) + 1);
  }
  return b;
}

std::strong_ordering operator<=>(const AlternatingTemplate& a, const AlternatingTemplate& b) {
  if (auto c = a.pattern <=> b.pattern; c != 0) return c;
  if (auto c = a.slots.size() <=> b.slots.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.slots.begin(), a.slots.end(), b.slots.begin(), b.slots.end());
}

void CheckParams::validate() const {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
}

void validate(const AlternatingTemplate& t, std::size_t p, const CheckParams& params) {
  if (t.slots.size() < 2) throw InvalidArgument("a template needs at least two slots");
  if (static_cast<int>(t.slots.size()) > params.N) throw InvalidArgument("template longer than N");
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    const Slot& s = t.slots[i];
    if (i > 0 && t.slots[i - 1].kind == s.kind) throw InvalidArgument("template does not alternate");
    if (s.kind == SlotKind::Y && (s.value < 0 || static_cast<std::size_t>(s.value) >= p)) {
      throw InvalidArgument("Y index " + std::to_string(s.value) + " out of range");
    }
    if (s.kind == SlotKind::U && (s.value == 0 || std::abs(s.value) > params.N)) {
      throw InvalidArgument("U exponent " + std::to_string(s.value) + " outside 1 <= |n| <= N");
    }
  }
  if (pattern_of(t.slots.front().kind, t.slots.back().kind) != t.pattern) {
    throw InvalidArgument("slot sequence does not match pattern " + to_string(t.pattern));
  }
  if (params.strict_exponents && t.exponent_sum() > params.N) {
    throw InvalidArgument("exponent sum exceeds N under strict exponents");
  }
}

std::vector<std::pair<Pattern, std::size_t>> template_blocks(int N) {
  std::vector<std::pair<Pattern, std::size_t>> blocks;
  for (Pattern p : {Pattern::w1, Pattern::w2, Pattern::w3, Pattern::w4}) {
    for (std::size_t len = 2; len <= static_cast<std::size_t>(std::max(N, 0)); ++len) {
      if (admits_length(p, len)) blocks.emplace_back(p, len);
    }
  }
  return blocks;
}

std::vector<int> slot_values(SlotKind kind, std::size_t p, int N) {
  std::vector<int> out;
  if (kind == SlotKind::Y) {
    for (std::size_t i = 0; i < p; ++i) out.push_back(static_cast<int>(i));
  } else {
    for (int n = -N; n <= N; ++n) {
      if (n != 0) out.push_back(n);
    }
  }
  return out;
}

void for_each_template(std::size_t p, int N, bool strict_exponents,
                       const std::function<void(const AlternatingTemplate&)>& fn) {
  if (p == 0 || N < 2) return;
  const auto ys = slot_values(SlotKind::Y, p, N);
  const auto us = slot_values(SlotKind::U, p, N);
  for (const auto& [pattern, len] : template_blocks(N)) {
    AlternatingTemplate t{pattern, std::vector<Slot>(len)};
    auto rec = [&](auto&& self, std::size_t pos, SlotKind kind, int budget) -> void {
      if (pos == len) {
        fn(t);
        return;
      }
      const auto& values = kind == SlotKind::Y ? ys : us;
      const SlotKind next = kind == SlotKind::Y ? SlotKind::U : SlotKind::Y;
      for (int v : values) {
        int rest = budget;
        if (kind == SlotKind::U && strict_exponents) {
          rest -= std::abs(v);
          if (rest < 0) continue;
        }
        t.slots[pos] = {kind, v};
        self(self, pos + 1, next, rest);
      }
    };
    rec(rec, 0, first_kind(pattern), N);
  }
}

std::vector<AlternatingTemplate> enumerate_templates(std::size_t p, int N, bool strict_exponents) {
  std::vector<AlternatingTemplate> out;
  for_each_template(p, N, strict_exponents, [&out](const AlternatingTemplate& t) { out.push_back(t); });
  return out;
}

AlgebraElement instantiate(const AlternatingTemplate& t, const std::vector<AlgebraElement>& centered,
                           const AlgebraElement& u) {
  AlgebraElement acc = AlgebraElement::identity(u.presentation());
  for (const auto& s : t.slots) {
    if (s.kind == SlotKind::Y) {
      if (s.value < 0 || static_cast<std::size_t>(s.value) >= centered.size()) {
        throw InvalidArgument("Y index " + std::to_string(s.value) + " out of range for a centered set of size " +
                              std::to_string(centered.size()));
      }
      acc = acc * centered[static_cast<std::size_t>(s.value)];
    } else {
      const AlgebraElement base = s.value < 0 ? adjoint(u) : u;
      for (int i = 0; i < std::abs(s.value); ++i) acc = acc * base;
    }
  }
  return acc;
}

AlgebraElement instantiate(const AlternatingTemplate& t, const std::vector<AlgebraElement>& centered,
                           const ReducedWord& u) {
  return instantiate(t, centered, AlgebraElement(u));
}

std::string to_string(const AlternatingTemplate& t) {
  std::string out;
  for (const auto& s : t.slots) {
    if (!out.empty()) out += ' ';
    out += (s.kind == SlotKind::Y ? "Y" : "U") + std::to_string(s.value);
  }
  return out;
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::w1: return "w1";
    case Pattern::w2: return "w2";
    case Pattern::w3: return "w3";
    case Pattern::w4: return "w4";
  }
  return "?";
}

}  // namespace selfless
