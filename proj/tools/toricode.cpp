#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toric/cli.hpp"

namespace {

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  toric::cli::RunConfig config;
  if (const char* env = std::getenv("TORICODE_THREADS")) {
    try {
      config.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: TORICODE_THREADS must be a nonnegative integer\n";
      return toric::cli::kInputError;
    }
  }

  CLI::App app{"Toric surface codes: parameters, bounds and exhaustive distance search"};
  app.require_subcommand(1);
  std::string modulus;
  std::uint32_t q = 0;
  double deadline = 0;
  std::size_t budget = 0;

  for (const char* name : {"info", "code", "mindist", "bounds", "decompose", "reproduce"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--polygon", config.polygon_path, "polygon JSON file {\"vertices\": [[x,y], ...]}");
    sub->add_option("--q", q, "field size");
    sub->add_option("--modulus", modulus, "ascending coefficients c0,c1,...,ce of the field modulus");
    sub->add_option("--threads", config.threads, "worker threads (0: all cores)");
    sub->add_option("--deadline", deadline, "seconds before the search stops");
    sub->add_option("--budget", budget, "subpolygon enumeration budget");
    sub->add_option("--output", config.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--long", config.long_tests, "include long runs");
    sub->add_flag("--exact", config.exact, "add the exhaustive distance");
    sub->add_option("--checkpoint", config.checkpoint, "resumable progress file");
    sub->add_option("--dump", config.dump, "write the codeword or generator matrix here");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : toric::cli::kInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--q")) config.q = q;
  if (sub->count("--deadline")) config.deadline_s = deadline;
  if (sub->count("--budget")) config.budget = budget;
  if (sub->count("--modulus")) {
    try {
      config.modulus = parse_modulus(modulus);
    } catch (const std::exception&) {
      std::cerr << "error: --modulus expects comma-separated integers\n";
      return toric::cli::kInputError;
    }
  }

  const auto result = toric::cli::run(config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
