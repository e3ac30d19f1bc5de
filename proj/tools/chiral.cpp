#include <iostream>

#include <CLI11.hpp>

#include "chiral/cli.hpp"

namespace {

std::vector<std::uint64_t> parse_type(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(chiral::cli::detail::parse_uint(s.substr(start, comma - start), "--type entry"));
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chiral::cli;
  CLI::App app{"Rotation groups of chiral and directly regular polytopes"};
  app.require_subcommand(1);

  JobSpec job;
  bool as_json = false;
  std::size_t max_cosets = 0;
  std::uint64_t max_enum = 0, max_lattice = 0;
  std::string type_text;
  app.add_flag("--json", as_json, "Emit the report as JSON");
  app.add_option("--max-cosets", max_cosets, "Coset enumeration cap (default 1000000, env MAX_COSETS)");
  app.add_option("--max-enum", max_enum, "Element enumeration cap (default 1000000, env MAX_ENUM)");
  app.add_option("--max-lattice", max_lattice, "Face lattice cap (default 10000, env MAX_LATTICE)");

  auto* check = app.add_subcommand("check", "Analyse the rotation group given by a presentation file");
  check->add_option("file", job.inputs, "Presentation file")->required()->expected(1);
  auto* mix = app.add_subcommand("mix", "Analyse the mix of two presentation files");
  mix->add_option("files", job.inputs, "Two presentation files")->required()->expected(2);
  auto* catalog = app.add_subcommand("catalog", "Analyse a named construction");
  catalog->add_option("entry", job.params,
                      "Entry and parameters: torus44 b c | torus36 b c | torus63 b c | string p1 ... | "
                      "toroid4334 s | a named entry")
      ->required();
  auto* search = app.add_subcommand("search", "List generating rotation tuples of a group");
  search->add_option("group", job.params, "l2 p | sym n | alt n")->required()->expected(2);
  search->add_option("--type", type_text, "Comma-separated generator orders")->required();
  search->add_option("--limit", job.limit, "Maximum number of tuples");
  auto* replay = app.add_subcommand("replay", "Re-run the job recorded in a JSON report");
  replay->add_option("report", job.inputs, "JSON report")->required()->expected(1);

  for (auto* sub : {check, mix, catalog, search, replay}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    job.limits = chiral::Limits::from_env();
    if (max_cosets) job.limits.max_cosets = max_cosets;
    if (max_enum) job.limits.max_enum = max_enum;
    if (max_lattice) job.limits.max_lattice = max_lattice;
    if (!type_text.empty()) job.type = parse_type(type_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  job.command = app.get_subcommands().front()->get_name();
  job.format = as_json ? Format::json : Format::text;
  return run_job(job, std::cout, std::cerr);
}
