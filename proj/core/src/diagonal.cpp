#include "selfless/diagonal.hpp"

#include <algorithm>
#include <cstdio>

namespace selfless {

WitnessNotFound::WitnessNotFound(int stage, double best_violation)
    : Error("no witness found at stage " + std::to_string(stage) + " (best violation " +
            std::to_string(best_violation) + ")"),
      stage_(stage),
      best_violation_(best_violation) {}

CheckParams stage_params(int m, const CheckParams& base) {
  if (m < 1) throw InvalidArgument("stages start at m = 1");
  CheckParams p = base;
  p.N = m;
  p.epsilon = 1.0 / m;
  return p;
}

std::vector<GroupStage> build_group_sequence(const std::vector<AlgebraElement>& enumeration, int m_max,
                                             const GroupWitnessStrategy& strategy, const CheckParams& base) {
  if (enumeration.empty()) throw InvalidArgument("enumeration must be nonempty");
  if (m_max < 1 || static_cast<std::size_t>(m_max) > enumeration.size()) {
    throw InvalidArgument("m_max must lie in [1, enumeration size]");
  }
  if (!strategy.family) throw InvalidArgument("group witness strategy without a family");

  std::vector<GroupStage> stages;
  for (int m = 1; m <= m_max; ++m) {
    const std::vector<AlgebraElement> fm(enumeration.begin(), enumeration.begin() + m);
    const CheckParams params = stage_params(m, base);
    double best = std::numeric_limits<double>::infinity();
    std::optional<GroupStage> found;
    for (long long n = m; n <= m + strategy.window && !found; ++n) {
      const ReducedWord u = strategy.family(n);
      if (u.is_identity()) {
        best = std::min(best, 1.0);
        continue;
      }
      CheckReport report = check_algebra(fm, u, params);
      best = std::min(best, report.max_violation);
      if (report.passed) found = GroupStage{m, n, u, centered_set(fm), std::move(report)};
    }
    if (!found) throw WitnessNotFound(m, best);
    stages.push_back(std::move(*found));
  }
  return stages;
}

std::vector<MatrixStage> build_matrix_sequence(const MatrixSpace& space, const std::vector<MatrixElement>& enumeration,
                                               int m_max, const MatrixWitnessStrategy& strategy,
                                               const CheckParams& base) {
  if (enumeration.empty()) throw InvalidArgument("enumeration must be nonempty");
  if (m_max < 1 || static_cast<std::size_t>(m_max) > enumeration.size()) {
    throw InvalidArgument("m_max must lie in [1, enumeration size]");
  }
  std::vector<MatrixStage> stages;
  for (int m = 1; m <= m_max; ++m) {
    const std::span<const MatrixElement> fm(enumeration.data(), static_cast<std::size_t>(m));
    const CheckParams params = stage_params(m, base);
    UnitarySearch search =
        search_unitary(space, fm, params, strategy.samples, derive_seed(strategy.seed, static_cast<std::uint64_t>(m)));
    if (!search.report.passed) throw WitnessNotFound(m, search.report.max_violation);
    stages.push_back({m, std::move(search.best), centered_matrices(space, fm), std::move(search.report)});
  }
  return stages;
}

namespace {

int coverage_stage(const AlternatingTemplate& t) {
  return std::max(static_cast<int>(t.length()), t.max_exponent());
}

}  // namespace

MomentSequence moment_trajectory(const std::vector<GroupStage>& stages, const AlternatingTemplate& tmpl,
                                 const std::vector<AlgebraElement>& ingredients) {
  if (tmpl.y_bound() > ingredients.size()) throw InvalidArgument("template refers to a missing ingredient");
  for (const auto& y : ingredients) {
    if (!trace(y).is_zero()) throw InvalidArgument("trajectory ingredients must be centered");
  }
  MomentSequence seq{tmpl, {}, {}, std::nullopt};
  for (const auto& stage : stages) {
    const GaussianRational t = trace(instantiate(tmpl, ingredients, stage.unitary));
    seq.magnitudes.push_back(t.abs());
    seq.values.push_back(to_string(t));
    if (seq.enrollment_stage) continue;
    bool enrolled = stage.stage >= coverage_stage(tmpl);
    for (const auto& s : tmpl.slots) {
      if (s.kind != SlotKind::Y) continue;
      const auto& y = ingredients[static_cast<std::size_t>(s.value)];
      const auto& c = stage.centered.centered;
      if (std::find(c.begin(), c.end(), y) == c.end()) enrolled = false;
    }
    if (enrolled) seq.enrollment_stage = stage.stage;
  }
  return seq;
}

MomentSequence moment_trajectory(const MatrixSpace& space, const std::vector<MatrixStage>& stages,
                                 const AlternatingTemplate& tmpl, const std::vector<Matrix>& ingredients) {
  if (tmpl.y_bound() > ingredients.size()) throw InvalidArgument("template refers to a missing ingredient");
  for (const auto& y : ingredients) {
    if (std::abs(space.trace(y)) > 1e-9 * std::max(1.0, operator_norm(y))) {
      throw InvalidArgument("trajectory ingredients must be centered");
    }
  }
  const auto k = static_cast<Eigen::Index>(space.k);
  MomentSequence seq{tmpl, {}, {}, std::nullopt};
  for (const auto& stage : stages) {
    const Matrix& u = stage.unitary.matrix();
    Matrix w = Matrix::Identity(k, k);
    for (const auto& s : tmpl.slots) {
      if (s.kind == SlotKind::Y) {
        w = w * ingredients[static_cast<std::size_t>(s.value)];
      } else {
        const Matrix base = s.value < 0 ? Matrix(u.adjoint()) : u;
        for (int i = 0; i < std::abs(s.value); ++i) w = w * base;
      }
    }
    const Complex t = space.trace(w);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", t.real(), t.imag());
    seq.magnitudes.push_back(std::abs(t));
    seq.values.emplace_back(buf);
    if (seq.enrollment_stage) continue;
    bool enrolled = stage.stage >= coverage_stage(tmpl);
    for (const auto& s : tmpl.slots) {
      if (s.kind != SlotKind::Y) continue;
      const auto& y = ingredients[static_cast<std::size_t>(s.value)];
      const bool member = std::any_of(stage.centered.begin(), stage.centered.end(),
                                      [&](const Matrix& c) { return max_abs_diff(c, y) <= 1e-12; });
      if (!member) enrolled = false;
    }
    if (enrolled) seq.enrollment_stage = stage.stage;
  }
  return seq;
}

MomentSequence power_trajectory(const std::vector<GroupStage>& stages, int k) {
  if (k == 0) throw InvalidArgument("power trajectory needs k != 0");
  MomentSequence seq{AlternatingTemplate{Pattern::w4, {Slot::u(k)}}, {}, {}, std::nullopt};
  for (const auto& stage : stages) {
    const bool one = power(stage.unitary, k).is_identity();
    seq.magnitudes.push_back(one ? 1.0 : 0.0);
    seq.values.emplace_back(one ? "1" : "0");
    if (!seq.enrollment_stage && stage.stage >= std::abs(k)) seq.enrollment_stage = stage.stage;
  }
  return seq;
}

nlohmann::json to_json(const MomentSequence& s) {
  nlohmann::json out = to_json(s.tmpl);
  out["magnitudes"] = s.magnitudes;
  out["values"] = s.values;
  out["enrollment_stage"] = s.enrollment_stage ? nlohmann::json(*s.enrollment_stage) : nlohmann::json(nullptr);
  return out;
}

}  // namespace selfless
