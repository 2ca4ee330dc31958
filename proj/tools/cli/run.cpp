#include "run.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "selfless/checker.hpp"
#include "selfless/diagonal.hpp"
#include "selfless/numeric.hpp"
#include "selfless/text.hpp"

namespace selfless::cli {

namespace {

using nlohmann::json;

const std::map<std::string, std::vector<std::string>>& relevant_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"enumerate", {"p", "N", "strict_exponents"}},
      {"check", {"group", "F", "u", "N", "epsilon", "strict_exponents", "strategy", "max_listed"}},
      {"axial-search",
       {"group", "F", "family", "n_min", "n_max", "N", "epsilon", "strict_exponents", "strategy", "max_listed"}},
      {"free-product-check", {"group", "F", "N", "epsilon", "strict_exponents", "strategy", "max_listed"}},
      {"matrix-check",
       {"k", "N", "epsilon", "strict_exponents", "samples", "seed", "matrix_family", "family_count", "matrix_file",
        "max_listed"}},
      {"search-unitary",
       {"k", "N", "epsilon", "strict_exponents", "samples", "seed", "matrix_family", "family_count", "matrix_file",
        "max_listed"}},
      {"sweep", {"dims", "N", "epsilon", "strict_exponents", "samples", "seed", "matrix_family", "family_count"}},
      {"delta", {"epsilon", "N", "M"}},
      {"verify-estimate", {"k", "p", "trials", "seed", "max_exponent"}},
      {"diagonal",
       {"group", "enumeration", "family", "stages", "window", "trajectories", "ingredients", "power_trajectories",
        "k", "samples", "seed", "matrix_family", "family_count", "matrix_file", "strict_exponents", "strategy",
        "max_listed"}},
  };
  return keys;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const PresentationMismatch*>(&e)) return "presentation_mismatch";
  if (dynamic_cast<const InvalidUnitary*>(&e)) return "invalid_unitary";
  if (dynamic_cast<const WitnessNotFound*>(&e)) return "witness_not_found";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  return "error";
}

CheckParams check_params(const RunConfig& c) {
  CheckParams p;
  p.N = c.N;
  p.epsilon = c.epsilon;
  p.strict_exponents = c.strict_exponents;
  p.threads = c.threads;
  p.max_listed = c.max_listed;
  if (c.strategy == "auto") {
    p.strategy = ScanStrategy::automatic;
  } else if (c.strategy == "exhaustive") {
    p.strategy = ScanStrategy::exhaustive;
  } else if (c.strategy == "meet-in-middle") {
    p.strategy = ScanStrategy::meet_in_middle;
  } else {
    throw InvalidArgument("unknown strategy '" + c.strategy + "'");
  }
  return p;
}

Matrix matrix_from_json(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw InvalidArgument("matrix rows must be square");
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& entry = row.at(static_cast<std::size_t>(j));
      m(i, j) = entry.is_array() ? Complex(entry.at(0).get<double>(), entry.at(1).get<double>())
                                 : Complex(entry.get<double>(), 0.0);
    }
  }
  return m;
}

// The F set of a matrix run: from a file, the diagonal phase family, Haar
// unitaries, or nothing.
std::vector<MatrixElement> matrix_family(const RunConfig& c, std::size_t k) {
  if (!c.matrix_file.empty()) {
    std::ifstream in(c.matrix_file);
    if (!in) throw InvalidArgument("cannot open matrix file '" + c.matrix_file + "'");
    const json doc = json::parse(in);
    std::vector<MatrixElement> out;
    for (const auto& m : doc) {
      out.emplace_back(matrix_from_json(m));
      if (out.back().dim() != k) throw InvalidArgument("matrix file dimension does not match --k");
    }
    return out;
  }
  if (c.matrix_family == "none") return {};
  if (c.matrix_family == "diag") return diagonal_phase_family(k);
  if (c.matrix_family == "random") {
    std::vector<MatrixElement> out;
    const std::uint64_t stream = derive_seed(c.seed, 0xF0F0F0F0ULL);
    for (std::size_t i = 0; i < c.family_count; ++i) out.push_back(haar_unitary(k, derive_seed(stream, i)));
    return out;
  }
  throw InvalidArgument("unknown matrix family '" + c.matrix_family + "'");
}

json sweep_json_clean(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Outcome run_enumerate(const RunConfig& c) {
  if (c.N < 1) throw InvalidArgument("N must be >= 1");
  json list = json::array();
  for_each_template(c.p, c.N, c.strict_exponents, [&list](const AlternatingTemplate& t) { list.push_back(to_json(t)); });
  return {{{"count", list.size()}, {"templates", std::move(list)}}, kPass, std::nullopt};
}

Outcome run_check(const RunConfig& c) {
  const auto p = parse_presentation(c.group);
  const auto f = parse_element_list(c.elements, p);
  const auto u = parse_word(c.unitary, p);
  const CheckReport report = check_algebra(f, u, check_params(c));
  return {to_json(report), report.passed ? kPass : kFail, std::nullopt};
}

Outcome run_axial(const RunConfig& c) {
  const auto p = parse_presentation(c.group);
  const auto f = parse_word_list(c.elements, p);
  const auto cand = parse_family(c.family, p, c.n_min, c.n_max);
  const AxialSearchResult r = axial_search(p, f, cand, check_params(c));
  json result = {{"found", r.n.has_value()},
                 {"n", r.n ? json(*r.n) : json(nullptr)},
                 {"reported_n", r.reported_n},
                 {"z_n", to_string(cand.at(r.reported_n))},
                 {"candidates_tried", r.candidates_tried},
                 {"report", to_json(r.report)}};
  return {std::move(result), r.n ? kPass : kFail, std::nullopt};
}

Outcome run_free_product(const RunConfig& c) {
  const auto p = parse_presentation(c.group);
  const auto f = parse_word_list(c.elements, p);
  const CheckReport report = check_freeness_in_free_product(p, f, check_params(c));
  return {to_json(report), report.passed ? kPass : kFail, std::nullopt};
}

Outcome run_matrix_check(const RunConfig& c) {
  if (c.samples == 0) throw InvalidArgument("samples must be >= 1");
  const MatrixSpace space(c.k);
  const auto f = matrix_family(c, c.k);
  const CheckParams params = check_params(c);
  json draws = json::array();
  bool all = true;
  for (std::size_t i = 0; i < c.samples; ++i) {
    const std::uint64_t s = derive_seed(c.seed, i);
    const CheckReport r = check_matrix(space, f, haar_unitary(c.k, s), params);
    all = all && r.passed;
    draws.push_back({{"index", i}, {"seed", s}, {"report", to_json(r)}});
  }
  return {{{"all_passed", all}, {"draws", std::move(draws)}}, all ? kPass : kFail, std::nullopt};
}

Outcome run_search(const RunConfig& c) {
  const MatrixSpace space(c.k);
  const auto f = matrix_family(c, c.k);
  const UnitarySearch s = search_unitary(space, f, check_params(c), c.samples, c.seed);
  json result = {{"best_index", s.best_index},
                 {"best_seed", derive_seed(c.seed, s.best_index)},
                 {"violations", s.violations},
                 {"report", to_json(s.report)}};
  return {std::move(result), s.report.passed ? kPass : kFail, std::nullopt};
}

Outcome run_sweep(const RunConfig& c) {
  if (c.dims.empty()) throw InvalidArgument("--dims must list at least one dimension");
  const FamilyGenerator gen = [&c](std::size_t k) { return matrix_family(c, k); };
  const SweepResult r = dimension_sweep(c.dims, gen, check_params(c), c.samples, c.seed);
  Outcome out{to_json(r), kPass, std::nullopt};
  if (!c.csv.empty()) out.csv = to_csv(r);
  return out;
}

Outcome run_delta(const RunConfig& c) {
  const double delta = delta_for(c.epsilon, c.N, c.M);
  const double spent = c.N * 2.0 * delta * std::pow(c.M, c.N - 1);
  json result = {{"delta", delta}, {"perturbation_budget", spent}, {"half_epsilon", c.epsilon / 2.0},
                 {"satisfied", spent < c.epsilon / 2.0 && delta <= 1.0}};
  return {std::move(result), kPass, std::nullopt};
}

Outcome run_verify(const RunConfig& c) {
  const MatrixSpace space(c.k);
  const EstimateResult r = verify_estimate(space, c.p, c.trials, c.seed, c.max_exponent);
  json result = {{"trials", r.trials},
                 {"failures", r.failures},
                 {"worst_ratio", sweep_json_clean(r.worst_ratio)},
                 {"largest_gap", r.largest_gap},
                 {"slack", kEstimateSlack}};
  return {std::move(result), r.failures == 0 ? kPass : kFail, std::nullopt};
}

Outcome run_diagonal(const RunConfig& c) {
  std::vector<AlternatingTemplate> templates;
  for (const auto& t : c.trajectories) templates.push_back(parse_template(t));
  const CheckParams base = check_params(c);
  json stages = json::array();
  json trajectories = json::array();

  if (!c.enumeration.empty()) {
    const auto p = parse_presentation(c.group);
    const auto enumeration = parse_element_list(c.enumeration, p);
    const auto cand = parse_family(c.family, p);
    const auto built = build_group_sequence(enumeration, c.stages, {cand.formula, c.window}, base);
    for (const auto& s : built) {
      stages.push_back({{"stage", s.stage}, {"enrolled", s.stage}, {"family_index", s.family_index},
                        {"unitary", to_string(s.unitary)}, {"report", to_json(s.report)}});
    }
    std::vector<AlgebraElement> ingredients;
    for (const auto& x : c.ingredients.empty() ? enumeration : parse_element_list(c.ingredients, p)) {
      ingredients.push_back(center(x));
    }
    for (const auto& t : templates) trajectories.push_back(to_json(moment_trajectory(built, t, ingredients)));
    for (int k : c.power_trajectories) trajectories.push_back(to_json(power_trajectory(built, k)));
  } else {
    const MatrixSpace space(c.k);
    const auto enumeration = matrix_family(c, c.k);
    const auto built = build_matrix_sequence(space, enumeration, c.stages, {c.samples, c.seed}, base);
    for (const auto& s : built) {
      stages.push_back({{"stage", s.stage}, {"enrolled", s.stage}, {"report", to_json(s.report)}});
    }
    std::vector<Matrix> ingredients = centered_matrices(space, enumeration);
    for (const auto& t : templates) trajectories.push_back(to_json(moment_trajectory(space, built, t, ingredients)));
  }
  return {{{"stages", std::move(stages)}, {"trajectories", std::move(trajectories)}}, kPass, std::nullopt};
}

}  // namespace

json RunConfig::to_json() const {
  const json all = {
      {"subcommand", subcommand},
      {"group", group},
      {"F", elements},
      {"u", unitary},
      {"family", family},
      {"n_min", n_min},
      {"n_max", n_max},
      {"p", p},
      {"N", N},
      {"epsilon", epsilon},
      {"strict_exponents", strict_exponents},
      {"strategy", strategy},
      {"max_listed", max_listed},
      {"k", k},
      {"samples", samples},
      {"seed", seed},
      {"dims", dims},
      {"matrix_family", matrix_family},
      {"family_count", family_count},
      {"matrix_file", matrix_file},
      {"M", M},
      {"trials", trials},
      {"max_exponent", max_exponent},
      {"enumeration", enumeration},
      {"stages", stages},
      {"window", window},
      {"trajectories", trajectories},
      {"ingredients", ingredients},
      {"power_trajectories", power_trajectories},
  };
  json out = {{"subcommand", subcommand}};
  const auto it = relevant_keys().find(subcommand);
  if (it == relevant_keys().end()) return all;
  for (const auto& key : it->second) out[key] = all.at(key);
  return out;
}

Outcome run(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Outcome out;
  try {
    const std::string& s = config.subcommand;
    if (s == "enumerate") out = run_enumerate(config);
    else if (s == "check") out = run_check(config);
    else if (s == "axial-search") out = run_axial(config);
    else if (s == "free-product-check") out = run_free_product(config);
    else if (s == "matrix-check") out = run_matrix_check(config);
    else if (s == "search-unitary") out = run_search(config);
    else if (s == "sweep") out = run_sweep(config);
    else if (s == "delta") out = run_delta(config);
    else if (s == "verify-estimate") out = run_verify(config);
    else if (s == "diagonal") out = run_diagonal(config);
    else throw InvalidArgument("unknown subcommand '" + s + "'");
    out.envelope = json{{"result", std::move(out.envelope)}};
  } catch (const WitnessNotFound& e) {
    out.envelope = json{{"error", {{"type", error_type(e)}, {"message", e.what()}, {"stage", e.stage()},
                                   {"best_violation", e.best_violation()}}}};
    out.status = kFail;
  } catch (const std::exception& e) {
    out.envelope = json{{"error", {{"type", error_type(e)}, {"message", e.what()}}}};
    out.status = kUsage;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  out.envelope["tool"] = kToolName;
  out.envelope["version"] = kToolVersion;
  out.envelope["config"] = config.to_json();
  out.envelope["duration_ms"] = elapsed.count();
  return out;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& status) {
  RunConfig c;
  if (const char* env = std::getenv("SELFLESS_THREADS")) {
    try {
      c.threads = std::stoul(env);
    } catch (const std::exception&) {
      err << "ignoring malformed SELFLESS_THREADS='" << env << "'\n";
    }
  }

  CLI::App app{"Certify approximate-selflessness witnesses for group and matrix algebras", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("-o,--output", c.output, "Write the JSON report here instead of stdout");

  auto check_opts = [&c](CLI::App* sub) {
    sub->add_option("--N", c.N, "Length and exponent bound")->check(CLI::PositiveNumber);
    sub->add_option("--eps", c.epsilon, "Tolerance (0 demands exact vanishing)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--strict-exponents", c.strict_exponents, "Also require sum |n_i| <= N");
    sub->add_option("--max-listed", c.max_listed, "Word violations listed per report");
  };
  auto group_opts = [&c](CLI::App* sub) {
    sub->add_option("--group", c.group, "Presentation: F2, Z2*Z3, a:Z*s:Z2");
    sub->add_option("--F", c.elements, "Comma-separated elements");
    sub->add_option("--strategy", c.strategy, "auto | exhaustive | meet-in-middle")
        ->check(CLI::IsMember({"auto", "exhaustive", "meet-in-middle"}));
  };
  auto matrix_opts = [&c](CLI::App* sub) {
    sub->add_option("--k", c.k, "Matrix dimension")->check(CLI::PositiveNumber);
    sub->add_option("--samples", c.samples, "Haar draws")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--family", c.matrix_family, "F set: none | diag | random")
        ->check(CLI::IsMember({"none", "diag", "random"}));
    sub->add_option("--F-count", c.family_count, "Number of random F elements");
    sub->add_option("--F-file", c.matrix_file, "JSON file with F matrices ([[re,im],...] rows)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "List alternating templates");
  enumerate->add_option("--p", c.p, "Size of the centered set");
  enumerate->add_option("--N", c.N, "Length and exponent bound")->check(CLI::PositiveNumber);
  enumerate->add_flag("--strict-exponents", c.strict_exponents, "Also require sum |n_i| <= N");

  auto* check = app.add_subcommand("check", "Exact check of a group unitary");
  group_opts(check);
  check_opts(check);
  check->add_option("--u", c.unitary, "Unitary word")->required();

  auto* axial = app.add_subcommand("axial-search", "Smallest n with z_n passing exactly");
  group_opts(axial);
  check_opts(axial);
  axial->add_option("--family", c.family, "Word with exponents affine in n, e.g. 'a^n b a^n'")->required();
  axial->add_option("--n-min", c.n_min, "First n");
  axial->add_option("--n-max", c.n_max, "Last n");

  auto* freeness = app.add_subcommand("free-product-check", "Check u = z inside Gamma * <z>");
  group_opts(freeness);
  check_opts(freeness);

  auto* mcheck = app.add_subcommand("matrix-check", "Check Haar draws in M_k");
  matrix_opts(mcheck);
  check_opts(mcheck);

  auto* search = app.add_subcommand("search-unitary", "Best of several Haar draws in M_k");
  matrix_opts(search);
  check_opts(search);

  auto* sweep = app.add_subcommand("sweep", "Best and median violation across dimensions");
  matrix_opts(sweep);
  check_opts(sweep);
  sweep->add_option("--dims", c.dims, "Dimensions")->delimiter(',')->required();
  sweep->add_option("--csv", c.csv, "Also write the sweep table as CSV");

  auto* delta = app.add_subcommand("delta", "Perturbation radius for (eps, N, M)");
  delta->add_option("--eps", c.epsilon, "Tolerance")->required();
  delta->add_option("--N", c.N, "Length bound")->required();
  delta->add_option("--M", c.M, "Norm bound")->required();

  auto* verify = app.add_subcommand("verify-estimate", "Random trials of the perturbation estimate");
  verify->add_option("--k", c.k, "Matrix dimension")->check(CLI::PositiveNumber);
  verify->add_option("--p", c.p, "Centered factors per word")->check(CLI::PositiveNumber);
  verify->add_option("--trials", c.trials, "Trials");
  verify->add_option("--seed", c.seed, "Master seed");
  verify->add_option("--max-exponent", c.max_exponent, "Largest |n| in trial words")->check(CLI::PositiveNumber);

  auto* diagonal = app.add_subcommand("diagonal", "Build stages (F_m, m, 1/m) and moment trajectories");
  group_opts(diagonal);
  matrix_opts(diagonal);
  diagonal->remove_option(diagonal->get_option("--family"));
  diagonal->add_option("--enum", c.enumeration, "Comma-separated group elements x_1, x_2, ...");
  diagonal->add_option("--witness", c.family, "Group witness family, e.g. 'a^n b a^n'");
  diagonal->add_option("--matrix-family", c.matrix_family, "Matrix enumeration: diag | random")
      ->check(CLI::IsMember({"none", "diag", "random"}));
  diagonal->add_option("--stages", c.stages, "Number of stages")->check(CLI::PositiveNumber);
  diagonal->add_option("--window", c.window, "Extra family indices tried per stage");
  diagonal->add_option("--trajectory", c.trajectories, "Template such as 'Y0 U1' (repeatable)");
  diagonal->add_option("--ingredients", c.ingredients, "Elements the trajectory Y slots refer to");
  diagonal->add_option("--power", c.power_trajectories, "k for a tau(u_m^k) trajectory (repeatable)");
  diagonal->add_flag("--strict-exponents", c.strict_exponents, "Also require sum |n_i| <= N");
  diagonal->add_option("--max-listed", c.max_listed, "Word violations listed per report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    status = app.exit(e, out, err) == 0 ? kPass : kUsage;
    return std::nullopt;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (c.subcommand == "diagonal" && c.enumeration.empty() && c.matrix_family == "none" && c.matrix_file.empty()) {
    err << "diagonal needs --enum (group mode) or --matrix-family/--F-file (matrix mode)\n";
    status = kUsage;
    return std::nullopt;
  }
  if (c.subcommand == "diagonal" && !c.enumeration.empty() && c.family.empty()) {
    err << "diagonal in group mode needs --witness\n";
    status = kUsage;
    return std::nullopt;
  }
  status = kPass;
  return c;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto config = parse_args(argc, argv, out, err, status);
  if (!config) return status;
  Outcome outcome = run(*config);
  const std::string text = outcome.envelope.dump(2) + "\n";
  if (config->output.empty()) {
    out << text;
  } else {
    std::ofstream file(config->output);
    if (!file) {
      err << "cannot write '" << config->output << "'\n";
      return kUsage;
    }
    file << text;
  }
  if (outcome.csv) {
    std::ofstream file(config->csv);
    if (!file) {
      err << "cannot write '" << config->csv << "'\n";
      return kUsage;
    }
    file << *outcome.csv;
  }
  return outcome.status;
}

}  // namespace selfless::cli
