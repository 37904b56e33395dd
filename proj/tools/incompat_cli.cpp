// incompat: operational incompatibility Q of quantum observables.
//
//   incompat q FILE            optimal intercept-resend fidelity and Q
//   incompat mub --dim D --count N [--out FILE]
//   incompat bounds --count N --dim D
//   incompat entropic FILE     entropic bound vs Q for a pair
//   incompat verify [--suite NAME] [--samples K]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "incompat/commands.hpp"

namespace {

struct Flags {
  incompat::OptimizerConfig cfg;
  std::string format = "json";
  std::string out;
};

void add_optimizer_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--seed", flags.cfg.seed, "RNG seed (u64)");
  cmd->add_option("--restarts", flags.cfg.restarts, "random POVM restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--outcomes", flags.cfg.outcomes, "outcomes per random POVM (default d^2)");
  cmd->add_option("--tol", flags.cfg.commutation_tol, "commutation tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", flags.cfg.max_iters, "see-saw sweep cap")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, Flags& flags, bool with_out = true) {
  cmd->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  if (with_out) cmd->add_option("--out", flags.out, "write the report here instead of stdout");
}

int emit(const incompat::CommandOutput& result, const Flags& flags) {
  const std::string text = flags.format == "csv" ? incompat::to_csv(result.document) : result.document.dump(2) + "\n";
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.out);
    if (!out) {
      std::cerr << "error: cannot write " << flags.out << '\n';
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational incompatibility of quantum observables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", incompat::kToolVersion);

  Flags flags;
  std::string input;
  long dim = 0, count = 0;
  std::string mub_out;
  incompat::VerifyOptions verify;
  long samples = 0;

  auto* q = app.add_subcommand("q", "compute Q for the observables in FILE");
  q->add_option("input", input, "input document")->required()->check(CLI::ExistingFile);
  add_optimizer_flags(q, flags);
  add_output_flags(q, flags);

  auto* mub = app.add_subcommand("mub", "write N mutually unbiased bases in prime dimension D");
  mub->add_option("--dim,-d", dim, "prime dimension")->required();
  mub->add_option("--count,-n", count, "number of bases (<= d+1)")->required();
  mub->add_option("--out", mub_out, "write the basis document here");
  add_output_flags(mub, flags, false);

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds for N observables in dimension D");
  bounds->add_option("--count,-n", count, "number of observables")->required();
  bounds->add_option("--dim,-d", dim, "dimension")->required();
  add_output_flags(bounds, flags);

  auto* entropic = app.add_subcommand("entropic", "entropic bound vs Q for the two items in FILE");
  entropic->add_option("input", input, "input document")->required()->check(CLI::ExistingFile);
  add_optimizer_flags(entropic, flags);
  add_output_flags(entropic, flags);

  auto* ver = app.add_subcommand("verify", "run the invariant suites");
  ver->add_option("--suite", verify.suite, "suite to run")
      ->check(CLI::IsMember({"all", "lemma1", "theorem2", "phi", "bounds"}));
  auto* samples_opt = ver->add_option("--samples", samples, "samples per suite")->check(CLI::PositiveNumber);
  add_optimizer_flags(ver, flags);
  add_output_flags(ver, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    incompat::CommandOutput result;
    if (*q) {
      result = incompat::cmd_q(input, flags.cfg);
    } else if (*mub) {
      result = incompat::cmd_mub(dim, count, mub_out.empty() ? std::nullopt : std::optional<std::string>(mub_out));
    } else if (*bounds) {
      result = incompat::cmd_bounds(count, dim);
    } else if (*entropic) {
      result = incompat::cmd_entropic(input, flags.cfg);
    } else {
      verify.cfg = flags.cfg;
      if (samples_opt->count() > 0) verify.samples = samples;
      result = incompat::cmd_verify(verify);
    }
    return emit(result, flags);
  } catch (const incompat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return incompat::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
