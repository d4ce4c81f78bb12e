#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "hypergpd/cli/run.hpp"

#ifndef HYPERGPD_FIXTURE_DIR
#define HYPERGPD_FIXTURE_DIR "fixtures"
#endif

namespace {

std::pair<long, long> parse_weights(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--weights", "expected MIN:MAX");
  try {
    std::size_t a = 0, b = 0;
    long lo = std::stol(s.substr(0, colon), &a), hi = std::stol(s.substr(colon + 1), &b);
    if (a != colon || b != s.size() - colon - 1) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--weights", "expected MIN:MAX with integer bounds, got " + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using hypergpd::cli::Job;
  CLI::App app{"Hypergroupoid checks and computations on finite presentations"};
  app.require_subcommand(1, 1);
  std::string weights;
  Job job;
  const char* env_dir = std::getenv("HYPERGPD_FIXTURES");
  job.fixture_dir = env_dir ? env_dir : HYPERGPD_FIXTURE_DIR;

  int n = 0, max_degree = 0;
  std::string mode, sheaf;
  for (const auto& name : hypergpd::cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("input", job.input, "input presentation (JSON)");
    sub->add_option("--fixture", job.fixture, "bundled fixture name");
    sub->add_option("--n", n, "hypergroupoid dimension, truncation degree or level count");
    sub->add_option("--mode", mode, "command-specific mode");
    sub->add_option("--max-degree", max_degree, "top cohomological degree or form weight bound");
    sub->add_option("--weights", weights, "weight window MIN:MAX");
    sub->add_option("--sheaf", sheaf, "coefficient sheaf: O, O(d) or 0");
    sub->add_option("--format", job.format, "text or records")->check(CLI::IsMember({"text", "records"}));
  }
  try {
    app.parse(argc, argv);
    auto* sub = app.get_subcommands().front();
    job.command = sub->get_name();
    if (sub->count("--n")) job.n = n;
    if (sub->count("--mode")) job.mode = mode;
    if (sub->count("--max-degree")) job.max_degree = max_degree;
    if (sub->count("--sheaf")) job.sheaf = sheaf;
    if (sub->count("--weights")) job.weights = parse_weights(weights);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; usage errors count as input errors
    return app.exit(e) == 0 ? 0 : 2;
  }
  return hypergpd::cli::run(job, std::cout, std::cerr);
}
