#pragma once

// Finite stages of the diagonal sequence: stage m checks a unitary u_m
// against F_m = {x_1..x_m}, N_m = m, eps_m = 1/m. Moment trajectories
// tau(w(u_m)) along the stages stand in for ultrapower traces.

#include <functional>
#include <optional>
#include <vector>

#include "selfless/checker.hpp"
#include "selfless/numeric.hpp"

namespace selfless {

/// Stage m failed to find a unitary meeting its contract.
class WitnessNotFound : public Error {
 public:
  WitnessNotFound(int stage, double best_violation);
  int stage() const { return stage_; }
  double best_violation() const { return best_violation_; }

 private:
  int stage_;
  double best_violation_;
};

/// Stage parameters (F_m, m, 1/m) with execution settings taken from `base`.
CheckParams stage_params(int m, const CheckParams& base);

struct GroupWitnessStrategy {
  /// u_m is family(n) for the smallest n in [m, m + window] that passes.
  std::function<ReducedWord(long long)> family;
  long long window = 0;
};

struct GroupStage {
  int stage = 0;
  long long family_index = 0;
  ReducedWord unitary;
  CenteredSet centered;
  CheckReport report;
};

std::vector<GroupStage> build_group_sequence(const std::vector<AlgebraElement>& enumeration, int m_max,
                                             const GroupWitnessStrategy& strategy, const CheckParams& base);

struct MatrixWitnessStrategy {
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

struct MatrixStage {
  int stage = 0;
  MatrixElement unitary;
  std::vector<Matrix> centered;
  CheckReport report;
};

std::vector<MatrixStage> build_matrix_sequence(const MatrixSpace& space, const std::vector<MatrixElement>& enumeration,
                                               int m_max, const MatrixWitnessStrategy& strategy,
                                               const CheckParams& base);

struct MomentSequence {
  AlternatingTemplate tmpl;
  std::vector<double> magnitudes;
  std::vector<std::string> values;
  /// First stage from which the template is covered: all ingredients are in
  /// the stage's centered set, length <= m and exponents <= m.
  std::optional<int> enrollment_stage;
};

/// tau(w(u_m)) for every stage; Y(i) in `tmpl` refers to ingredients[i],
/// which must already be centered.
MomentSequence moment_trajectory(const std::vector<GroupStage>& stages, const AlternatingTemplate& tmpl,
                                 const std::vector<AlgebraElement>& ingredients);
MomentSequence moment_trajectory(const MatrixSpace& space, const std::vector<MatrixStage>& stages,
                                 const AlternatingTemplate& tmpl, const std::vector<Matrix>& ingredients);

/// tau(u_m^k) for every stage; enrollment is the first m >= |k|.
MomentSequence power_trajectory(const std::vector<GroupStage>& stages, int k);

nlohmann::json to_json(const MomentSequence& s);

}  // namespace selfless
