// Scenario documents: parsing, running and rendering reports.
//
// A scenario names one space (builtin or inline simplices), a default
// resolution and window, and a list of tasks.  Unknown fields are rejected.
// Every size that drives memory (resolution depth, dimension of the largest
// L degree) is estimated while parsing and checked against the budgets.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eqw/spaces.hpp"

namespace eqw::scenario {

inline constexpr int kSchemaVersion = 1;

struct Issue {
  std::string path;  // JSON pointer into the document, "" for the root
  std::string message;
};

struct ResolutionSpec {
  std::string kind;  // bar | periodic | trivial
  int depth = 0;     // resolved; explicit or the smallest certifying depth
};

struct Budgets {
  int max_depth = 64;
  std::size_t max_hom_dim = 20000;
};

enum class TaskKind { cohomology, homology, hs, weight_ss, kunneth, cup, cap, identity, duality };

struct VertexMapSpec {
  SimplicialGSet source;
  std::vector<int> vertex_map;
};

struct Task {
  TaskKind kind = TaskKind::cohomology;
  ResolutionSpec resolution;
  int window = 0;
  std::string which = "first";       // hs
  std::string variance = "cochain";  // weight_ss
  std::vector<int> pages;            // hs, weight_ss; kInfinity for "inf"
  int page = 2;                      // duality
  int max_degree = 0;                // kunneth, cup, cap
  std::optional<SimplicialGSet> other;  // kunneth
  ResolutionSpec other_resolution;      // kunneth
  std::vector<std::string> identities;  // identity
  std::optional<VertexMapSpec> map;     // identity
};

struct Scenario {
  std::string name;
  nlohmann::json document;
  std::uint64_t digest = 0;  // FNV-1a 64 of the canonical document
  SimplicialGSet space;
  Budgets budgets;
  bool timing = false;
  std::vector<Task> tasks;
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<Issue> issues;
  bool ok() const { return scenario.has_value(); }
};

ParseResult parse(const nlohmann::json& document);
ParseResult parse_text(std::string_view text);
ParseResult parse_file(const std::string& path);

std::string task_kind_name(TaskKind k);
std::vector<std::string> identity_names();

struct Report {
  nlohmann::json json;
  bool ok = true;  // every task ran and every check passed
};

// jobs > 1 runs tasks on that many threads; the report does not depend on it.
Report run(const Scenario& s, int jobs = 1);

enum class Format { json, table };
std::string render(const Report& r, Format f);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace eqw::scenario
