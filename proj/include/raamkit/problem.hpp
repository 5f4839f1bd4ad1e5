#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "raamkit/fock.hpp"

namespace raamkit {

struct ProblemOptions {
  int truncation = 4;
  std::vector<double> r_grid{0.5, 0.9, 0.99};
  double tol = 1e-9;
  std::size_t guard = kDefaultBallGuard;
};

/// A self-contained batch problem: graph, optional family, run options.
struct ProblemSpec {
  GraphPtr graph;
  std::optional<GammaFamily> family;
  ProblemOptions options;
  std::vector<VnTerm> vn_terms;
};

/// Throws ParseError (malformed JSON or wrong field types, with the line or
/// field path) and ValidationError (invariant breaches).
ProblemSpec parse_problem(std::string_view text);
ProblemSpec parse_problem_file(const std::filesystem::path& path);

Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
GammaFamily family_from_json(GraphPtr g, const nlohmann::json& j);
nlohmann::json family_to_json(const GammaFamily& f);

/// RAAMKIT_GUARD, when set to a positive integer.
std::optional<std::size_t> guard_from_env();

enum class Suite { Graph, Identities, Brehmer, PropertyP, Cauchy, Poisson, Fixtures, All };

Suite parse_suite(std::string_view name);
const char* to_string(Suite s);

struct RunReport {
  std::string suite;
  std::vector<CheckReport> reports;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  /// 0 if everything passed, 1 if anything failed, 2 if the only
  /// non-passing outcomes are inconclusive.
  int exit_code() const;
  nlohmann::ordered_json to_json() const;
  /// One line per report.
  std::string to_text() const;
};

nlohmann::ordered_json to_json(const CheckReport& r);

RunReport run_report(const ProblemSpec& spec, Suite suite);

}  // namespace raamkit
