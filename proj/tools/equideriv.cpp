#include <CLI11.hpp>

#include <iostream>

#include "equideriv/errors.hpp"
#include "equideriv/problem.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equivariant modules over polynomial rings and descent to quotients"};
  app.set_version_flag("--version", std::string(equideriv::version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the tasks of a JSON problem file");
  std::string file;
  std::optional<std::string> task, json_out, space;
  std::optional<std::size_t> bound;
  run->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
  run->add_option("--task", task, "Only run tasks with this name or type");
  run->add_option("--json", json_out, "Write the JSON report here");
  run->add_option("--degree-bound", bound, "Degree bound for the invariant oracle");
  run->add_option("--space", space, "Space for descent and oracle tasks")
      ->check(CLI::IsMember({"affine", "projective"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : equideriv::kExitInvalid;
  }

  equideriv::RunOptions options;
  options.task = task;
  options.degree_bound = bound;
  if (space) options.space = equideriv::parse_space(*space);
  return equideriv::run_file(file, options, json_out, std::cout, std::cerr);
}
