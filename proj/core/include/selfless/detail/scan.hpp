#pragma once

// Template scans shared by the exact and numeric checkers.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <thread>
#include <vector>

#include "selfless/report.hpp"
#include "selfless/templates.hpp"

namespace selfless::detail {

std::size_t resolve_threads(std::size_t requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(resolve_threads(threads), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

inline bool ranks_before(const WordViolation& a, const WordViolation& b) {
  if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
  return a.tmpl < b.tmpl;
}

/// Bounded list of the largest violations, deterministic under any
/// insertion order.
class TopViolations {
 public:
  explicit TopViolations(std::size_t cap) : cap_(cap) {}

  bool admits(double magnitude, const AlternatingTemplate& t) const {
    if (cap_ == 0) return false;
    if (items_.size() < cap_) return true;
    const auto& worst = items_.back();
    return magnitude > worst.magnitude || (magnitude == worst.magnitude && t < worst.tmpl);
  }

  void insert(WordViolation v) {
    if (!admits(v.magnitude, v.tmpl)) return;
    auto pos = std::lower_bound(items_.begin(), items_.end(), v, ranks_before);
    items_.insert(pos, std::move(v));
    if (items_.size() > cap_) items_.pop_back();
  }

  void merge(const TopViolations& other) {
    for (const auto& v : other.items_) insert(v);
  }

  std::vector<WordViolation> take() && { return std::move(items_); }

 private:
  std::size_t cap_;
  std::vector<WordViolation> items_;
};

struct ScanOutcome {
  std::vector<WordViolation> listed;
  std::uint64_t checked = 0;
  std::uint64_t nonzero = 0;
};

/// Exhaustive scan with shared prefix products. `magnitude(v)` is |tau(v)|
/// (exactly 0 for a vanishing trace) and `describe(v)` renders tau(v).
template <class Value, class Multiply, class Magnitude, class Describe>
ScanOutcome scan_exhaustive(const std::vector<Value>& ys, const std::map<int, Value>& powers, const Value& one,
                            const CheckParams& params, Multiply multiply, Magnitude magnitude, Describe describe) {
  ScanOutcome out;
  if (ys.empty() || params.N < 2) return out;

  struct Task {
    Pattern pattern;
    std::size_t length;
    int first;
  };
  const auto y_values = slot_values(SlotKind::Y, ys.size(), params.N);
  const auto u_values = slot_values(SlotKind::U, ys.size(), params.N);
  std::vector<Task> tasks;
  for (const auto& [pattern, len] : template_blocks(params.N)) {
    for (int v : first_kind(pattern) == SlotKind::Y ? y_values : u_values) tasks.push_back({pattern, len, v});
  }

  struct Partial {
    TopViolations top;
    std::uint64_t checked = 0;
    std::uint64_t nonzero = 0;
  };
  std::vector<Partial> partials(tasks.size(), Partial{TopViolations(params.max_listed)});

  auto factor = [&](const Slot& s) -> const Value& {
    return s.kind == SlotKind::Y ? ys[static_cast<std::size_t>(s.value)] : powers.at(s.value);
  };

  parallel_for(tasks.size(), params.threads, [&](std::size_t index) {
    const Task& task = tasks[index];
    Partial& part = partials[index];
    AlternatingTemplate t{task.pattern, std::vector<Slot>(task.length)};
    std::vector<Value> prefix(task.length + 1, one);
    const SlotKind start = first_kind(task.pattern);
    t.slots[0] = {start, task.first};
    int budget = params.N;
    if (start == SlotKind::U) budget -= std::abs(task.first);
    if (params.strict_exponents && budget < 0) return;
    prefix[1] = multiply(prefix[0], factor(t.slots[0]));

    auto rec = [&](auto&& self, std::size_t pos, SlotKind kind, int rest) -> void {
      if (pos == task.length) {
        ++part.checked;
        const double m = magnitude(prefix[pos]);
        if (m > 0.0) {
          ++part.nonzero;
          if (part.top.admits(m, t)) part.top.insert({t, m, describe(prefix[pos])});
        }
        return;
      }
      const SlotKind next = kind == SlotKind::Y ? SlotKind::U : SlotKind::Y;
      for (int v : kind == SlotKind::Y ? y_values : u_values) {
        int left = rest;
        if (kind == SlotKind::U && params.strict_exponents) {
          left -= std::abs(v);
          if (left < 0) continue;
        }
        t.slots[pos] = {kind, v};
        prefix[pos + 1] = multiply(prefix[pos], factor(t.slots[pos]));
        self(self, pos + 1, next, left);
      }
    };
    rec(rec, 1, start == SlotKind::Y ? SlotKind::U : SlotKind::Y, budget);
  });

  TopViolations top(params.max_listed);
  for (const auto& part : partials) {
    top.merge(part.top);
    out.checked += part.checked;
    out.nonzero += part.nonzero;
  }
  out.listed = std::move(top).take();
  return out;
}

}  // namespace selfless::detail
