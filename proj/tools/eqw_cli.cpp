// eqw: run, validate and list scenario inputs.
//
// Exit codes: 0 success, 1 a task failed, 2 the scenario did not parse.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "eqw/scenario.hpp"
#include "eqw/spaces.hpp"

namespace sc = eqw::scenario;

namespace {

void print_issues(const std::string& file, const std::vector<sc::Issue>& issues) {
  for (const auto& i : issues)
    std::cerr << file << ": " << (i.path.empty() ? "/" : i.path) << ": " << i.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant weight spectral sequences over GF(2)"};
  app.require_subcommand(1);

  std::string file, format = "table", out_path;
  int jobs = 1;
  bool timing = false;
  auto* run = app.add_subcommand("run", "run every task of a scenario");
  run->add_option("scenario", file, "scenario JSON")->required();
  run->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_option("--jobs", jobs, "tasks run concurrently")->check(CLI::Range(1, 256));
  run->add_flag("--timing", timing, "include per-task wall time");

  auto* validate = app.add_subcommand("validate", "parse a scenario and report problems");
  validate->add_option("scenario", file, "scenario JSON")->required();

  app.add_subcommand("list-builtins", "names of the built-in spaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list-builtins")) {
    for (const auto& name : eqw::builtin_names()) {
      const eqw::SimplicialGSet x = eqw::builtin(name);
      std::cout << name << "  |G|=" << x.group().order() << "  dim=" << x.dimension() << "\n";
    }
    return 0;
  }

  const sc::ParseResult parsed = sc::parse_file(file);
  if (!parsed.ok()) {
    print_issues(file, parsed.issues);
    return 2;
  }
  const sc::Scenario& s = *parsed.scenario;

  if (app.got_subcommand("validate")) {
    std::cout << file << ": ok, scenario " << s.name << ", " << s.tasks.size() << " tasks, digest "
              << sc::hex64(s.digest) << "\n";
    return 0;
  }

  sc::Scenario copy = s;
  copy.timing = copy.timing || timing;
  const sc::Report report = sc::run(copy, jobs);
  const std::string text = sc::render(report, format == "json" ? sc::Format::json : sc::Format::table);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return report.ok ? 0 : 1;
}
