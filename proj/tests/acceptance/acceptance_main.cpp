// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/run.hpp"
#include "oracles.hpp"
#include "selfless/algebra.hpp"
#include "selfless/numeric.hpp"
#include "selfless/templates.hpp"
#include "selfless/text.hpp"

namespace {

using namespace selfless;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct CliResult {
  int status = 0;
  nlohmann::json json;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "selfless");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (!out.str().empty()) r.json = nlohmann::json::parse(out.str());
  return r;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. u = a against F = {b, ab} in F2, N = 6.
Verdict free_group_generator() {
  Verdict v;
  auto t0 = Clock::now();
  auto r = run_cli({"check", "--group", "F2", "--F", "b,a b", "--u", "a", "--N", "6", "--eps", "1e-9"});
  const double secs = seconds_since(t0);
  const auto& res = r.json["result"];
  std::string why = "max_violation " + fmt(res.value("max_violation", -1.0));
  if (res.contains("witness") && res["witness"].contains("template")) {
    why += " at " + res["witness"]["template"]["slots"].get<std::string>();
  }
  why += ", " + std::to_string(res.value("nonzero_words", 0)) + " nonzero of " +
         std::to_string(res.value("templates_checked", 0));
  v.require(r.status == cli::kPass && res.value("passed", false), "check failed: " + why);
  v.require(res.value("max_violation", -1.0) == 0.0, "violation not exactly 0: " + why);
  v.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  if (v.ok) v.detail = why;
  return v;
}

// 2. Axial family a^n b a^n against F = {a, b, ab, a^-1 b}, N = 5.
Verdict axial_search_exact() {
  Verdict v;
  auto t0 = Clock::now();
  auto r = run_cli({"axial-search", "--group", "F2", "--F", "a,b,a b,a^-1 b", "--family", "a^n b a^n", "--N", "5",
                    "--eps", "1e-9"});
  const double secs = seconds_since(t0);
  const auto& res = r.json["result"];
  v.require(r.status == cli::kPass, "no n found");
  v.require(res.contains("n") && !res["n"].is_null(), "no n found");
  v.require(res["report"].value("max_violation", -1.0) == 0.0, "violation not exactly 0");
  v.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  if (v.ok) v.detail = "n = " + res["n"].dump() + " in " + fmt(secs) + " s";
  return v;
}

// 3. Random F inside Gamma * <z> with u = z.
Verdict free_product_freeness() {
  Verdict v;
  testing::Generator gen(2024);
  int runs = 0;
  for (const std::string group : {"F2", "Z2*Z3"}) {
    auto p = parse_presentation(group);
    for (int i = 0; i < 20; ++i) {
      std::string f;
      for (int j = gen.uniform(1, 4); j > 0; --j) {
        if (!f.empty()) f += ",";
        f += to_string(gen.word(p, 4, 3));
      }
      const int N = gen.uniform(1, 5);
      auto r = run_cli({"free-product-check", "--group", group, "--F", f, "--N", std::to_string(N), "--eps", "0"});
      ++runs;
      const auto& res = r.json["result"];
      v.require(r.status == cli::kPass && res.value("max_violation", -1.0) == 0.0,
                group + " F={" + f + "} N=" + std::to_string(N) + " failed");
    }
  }
  if (v.ok) v.detail = std::to_string(runs) + " random sets, all exactly 0";
  return v;
}

// 4. Template enumeration against generate-and-filter.
Verdict enumeration_oracle() {
  Verdict v;
  auto t0 = Clock::now();
  std::size_t total = 0;
  for (std::size_t p = 1; p <= 3; ++p) {
    for (int N = 1; N <= 6; ++N) {
      auto got = enumerate_templates(p, N);
      std::set<std::vector<Slot>> set;
      for (const auto& t : got) set.insert(t.slots);
      v.require(set.size() == got.size(), "duplicates at p=" + std::to_string(p) + " N=" + std::to_string(N));
      v.require(set == testing::brute_force_templates(p, N, false),
                "set mismatch at p=" + std::to_string(p) + " N=" + std::to_string(N));
      total += got.size();
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + fmt(secs) + " s");
  if (v.ok) v.detail = std::to_string(total) + " templates over 18 (p, N), " + fmt(secs) + " s";
  return v;
}

// 5. delta_for constraints, then the perturbation transfer on random M_8 instances.
Verdict perturbation_constants() {
  Verdict v;
  int grid = 0;
  for (int i = 0; i < 10; ++i) {
    const double eps = std::pow(10.0, -4.0 + 0.5 * i);
    for (int N = 1; N <= 10; ++N) {
      for (int j = 0; j < 10; ++j) {
        const double M = 0.25 * std::pow(2.0, j);
        const double d = delta_for(eps, N, M);
        ++grid;
        v.require(d <= 1.0, "delta > 1");
        v.require(N * 2.0 * d * std::pow(M, N - 1) < eps / 2, "budget exceeded at eps=" + fmt(eps));
      }
    }
  }

  const std::size_t k = 8;
  const int N = 2;
  MatrixSpace space(k);
  const auto id = Matrix::Identity(k, k);
  testing::Generator gen(5);
  auto ginibre = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0 * static_cast<double>(k)));
    Matrix m(k, k);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    return m;
  };
  CheckParams params;
  params.N = N;
  double tightest = 0;
  for (std::uint64_t inst = 0; inst < 100 && v.ok; ++inst) {
    const std::size_t p = 1 + inst % 3;
    std::vector<Matrix> xs, dirs;
    double M = 1.0;
    for (std::size_t i = 0; i < p; ++i) {
      xs.push_back(ginibre(derive_seed(inst, 2 * i)));
      Matrix e = ginibre(derive_seed(inst, 2 * i + 1));
      dirs.push_back(e / operator_norm(e));
      // ||y~|| <= ||x~|| + 2 delta and delta <= 1
      M = std::max(M, operator_norm(xs.back() - space.trace(xs.back()) * id) + 2.0);
    }
    std::vector<MatrixElement> f;
    for (const auto& x : xs) f.emplace_back(x);
    const auto u = haar_unitary(k, derive_seed(99, inst));

    // Choose eps so that u passes at eps/2 on the perturbed set F0, which itself
    // depends on eps through delta.
    double eps = 1.0, delta = 0.0, v0 = 0.0;
    std::vector<MatrixElement> f0;
    bool settled = false;
    for (int it = 0; it < 50 && !settled; ++it) {
      delta = delta_for(eps, N, M);
      f0.clear();
      for (std::size_t i = 0; i < p; ++i) f0.emplace_back(xs[i] + 0.99 * delta * dirs[i]);
      params.epsilon = eps / 2;
      auto r0 = check_matrix(space, f0, u, params);
      v0 = r0.max_violation;
      if (r0.passed) {
        settled = true;
      } else {
        eps = 2.2 * v0;
      }
    }
    v.require(settled, "no eps settled for instance " + std::to_string(inst));
    params.epsilon = eps;
    auto r = check_matrix(space, f, u, params);
    v.require(r.passed, "instance " + std::to_string(inst) + ": violation " + fmt(r.max_violation) +
                            " >= eps " + fmt(eps));
    v.require(std::abs(r.max_violation - v0) <= N * 2.0 * delta * std::pow(M, N - 1) + kEstimateSlack,
              "instance " + std::to_string(inst) + ": gap exceeds the estimate");
    tightest = std::max(tightest, r.max_violation / eps);
  }
  if (v.ok) v.detail = std::to_string(grid) + " grid points, 100 instances, max violation/eps " + fmt(tightest);
  return v;
}

// 6. Telescoping estimate.
Verdict estimate_trials() {
  Verdict v;
  MatrixSpace space(8);
  std::size_t failures = 0;
  double worst = INFINITY;
  for (std::size_t p = 1; p <= 3; ++p) {
    auto r = verify_estimate(space, p, 1000, 1000 + p);
    failures += r.failures;
    worst = std::min(worst, r.worst_ratio);
  }
  v.require(failures == 0, std::to_string(failures) + " failures");
  if (v.ok) v.detail = "3000 trials, worst bound/gap " + fmt(worst);
  return v;
}

// 7. Every 1x1 unitary has |tau(u)| = 1.
Verdict one_by_one() {
  Verdict v;
  auto r = run_cli({"search-unitary", "--k", "1", "--N", "1", "--eps", "0.5", "--samples", "200", "--seed", "3"});
  v.require(r.status == cli::kFail, "search-unitary did not fail");
  for (const auto& x : r.json["result"]["violations"]) {
    v.require(std::abs(x.get<double>() - 1.0) <= 1e-12, "violation " + fmt(x.get<double>()));
  }
  v.require(r.json["result"]["violations"].size() == 200, "expected 200 draws");
  auto single = run_cli({"matrix-check", "--k", "1", "--N", "1", "--eps", "0.5", "--samples", "10"});
  v.require(single.status == cli::kFail, "matrix-check did not fail");
  v.require(single.json["result"]["draws"].size() == 10, "expected 10 matrix-check draws");
  for (const auto& d : single.json["result"]["draws"]) {
    const double x = d["report"].value("max_violation", 0.0);
    v.require(!d["report"].value("passed", true) && std::abs(x - 1.0) <= 1e-12, "matrix-check violation " + fmt(x));
  }
  if (v.ok) v.detail = "210 draws, all |tau(u)| = 1";
  return v;
}

// 8. Median violation falls with the dimension.
Verdict dimension_trend() {
  Verdict v;
  auto t0 = Clock::now();
  auto r = run_cli({"sweep", "--dims", "4,8,16,32,64", "--N", "2", "--eps", "0.25", "--samples", "100", "--seed", "7",
                    "--family", "diag"});
  const double secs = seconds_since(t0);
  std::vector<double> medians;
  for (const auto& row : r.json["result"]["rows"]) medians.push_back(row["median_violation"].get<double>());
  v.require(medians.size() == 5, "expected 5 rows");
  std::string shown;
  for (std::size_t i = 0; i < medians.size(); ++i) {
    shown += (i ? " " : "") + fmt(medians[i]);
    if (i > 0) v.require(medians[i] < medians[i - 1], "not decreasing: " + shown);
  }
  v.require(secs < 120.0, "runtime " + fmt(secs) + " s");
  if (v.ok) v.detail = "medians " + shown;
  return v;
}

// 9. Eight stages of the diagonal sequence with the axial witness.
Verdict diagonal_stages() {
  Verdict v;
  std::vector<std::string> args{"diagonal", "--group", "F2", "--enum",
                                "a,b,a b,a^2 b^-1,b a,a^-1 b^2,a b a,b^2 a^-1", "--witness", "a^n b a^n",
                                "--stages", "8", "--ingredients", "a,b,a b,b^-1 a^-1,a^2 b^-1"};
  for (const char* t : {"Y0 U1", "U2 Y1 U-1", "Y2 U-3 Y3", "Y4 U1 Y1 U-2", "U1 Y0 U1 Y2 U-1", "Y3 U4 Y0 U-4 Y1 U2"}) {
    args.push_back("--trajectory");
    args.push_back(t);
  }
  for (int k : {-8, -3, 1, 2, 5, 8}) {
    args.push_back("--power=" + std::to_string(k));
  }
  auto r = run_cli(args);
  v.require(r.status == cli::kPass, "diagonal exited " + std::to_string(r.status));
  const auto& res = r.json["result"];
  int stages = 0;
  for (const auto& s : res["stages"]) {
    ++stages;
    v.require(s["report"].value("passed", false) && s["report"].value("max_violation", -1.0) == 0.0,
              "stage " + s["stage"].dump() + " not exactly 0");
  }
  v.require(stages == 8, "expected 8 stages");
  int trajectories = 0;
  for (const auto& t : res["trajectories"]) {
    ++trajectories;
    v.require(!t["enrollment_stage"].is_null(), t["slots"].get<std::string>() + " never enrolled");
    if (t["enrollment_stage"].is_null()) continue;
    const int from = t["enrollment_stage"].get<int>();
    const auto& mags = t["magnitudes"];
    for (int m = from; m <= static_cast<int>(mags.size()); ++m) {
      v.require(mags[static_cast<std::size_t>(m - 1)].get<double>() == 0.0,
                t["slots"].get<std::string>() + " nonzero at stage " + std::to_string(m));
    }
  }
  v.require(trajectories == 12, "expected 12 trajectories");
  if (v.ok) v.detail = "8 stages, " + std::to_string(trajectories) + " trajectories, all exactly 0";
  return v;
}

// 10. Trace, adjoint and centering identities on random exact elements.
Verdict algebra_axioms() {
  Verdict v;
  testing::Generator gen(10);
  auto p = parse_presentation("F2");
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    auto x = gen.element(p), y = gen.element(p);
    if (trace(x * y) != trace(y * x)) ++bad;
    if (trace(adjoint(x)) != trace(x).conj()) ++bad;
    if (!trace(center(x)).is_zero()) ++bad;
    if (GaussianRational(two_norm_squared(x)) != trace(adjoint(x) * x)) ++bad;
    auto cs = centered_set({x, y});
    for (const auto& c : cs.centered) {
      if (std::find(cs.centered.begin(), cs.centered.end(), adjoint(c)) == cs.centered.end()) ++bad;
    }
  }
  v.require(bad == 0, std::to_string(bad) + " violations");
  if (v.ok) v.detail = "500 elements, 0 violations";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"exact check, u = a, F = {b, ab}, N = 6", free_group_generator},
      {"axial search a^n b a^n, N = 5", axial_search_exact},
      {"free product extension is free", free_product_freeness},
      {"template enumeration oracle", enumeration_oracle},
      {"perturbation radius and transfer", perturbation_constants},
      {"telescoping estimate trials", estimate_trials},
      {"1x1 matrices always fail", one_by_one},
      {"median violation decreasing in k", dimension_trend},
      {"diagonal stages and trajectories", diagonal_stages},
      {"trace and adjoint identities", algebra_axioms},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.ok) ++failed;
    std::printf("[%s] %2d %s (%.2fs): %s\n", v.ok ? "PASS" : "FAIL", index, name.c_str(), seconds_since(t0),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
