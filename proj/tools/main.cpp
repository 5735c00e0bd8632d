#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using gdaha::cli::RunConfig;
  RunConfig config;
  std::string alpha, base;

  CLI::App app{"gdaha: generalized DAHA representations, monodromy and Deligne-Simpson tuples"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--params", config.params_path, "Parameter file (JSON: legs, gamma, nu)");
  app.add_option("--input", config.input_path, "Upstream artifact (DS solution or representation JSON)");
  app.add_option("--out", config.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--tol-solver", config.tol.solver, "DS solver residual target")->capture_default_str();
  app.add_option("--tol-transport", config.tol.transport, "Parallel transport tolerance")->capture_default_str();
  app.add_option("--tol-rank", config.tol.rank, "Relative singular value cut for ranks")->capture_default_str();
  app.add_option("--tol-cert", config.tol.cert, "Tolerance for certified properties")->capture_default_str();
  app.add_option("--alpha", alpha, "Punctures, comma separated reals");
  app.add_option("--base", base, "Base points, comma separated reals");
  app.add_option("--delta", config.delta, "Loop radius (default: a quarter of the smallest gap)");
  app.add_option("--n", config.n, "Rank n")->capture_default_str();
  app.add_option("--kind", config.kind, "additive or multiplicative")->capture_default_str();
  app.add_option("--lambda", config.lambda, "Cyclotomic eigenvalues (exact, e.g. 1/5 -2/7)");
  app.add_option("--nu", config.nu, "Coupling nu for algebra/cherednik runs")->capture_default_str();
  app.add_flag("--cherednik", config.cherednik, "Monodromy of Cherednik's system on the regular module");
  app.add_option("--modules", config.modules, "Number of random modules in the diagram check")->capture_default_str();
  app.add_option("--kappa-path", config.kappa_path, "arc:cre,cim,r,deg0,deg1,N | line:re0,im0,re1,im1,N | const:re,im,N")
      ->capture_default_str();
  app.add_option("--surrogate", config.surrogate, "Position of the fourth puncture")->capture_default_str();
  app.add_option("--word-length", config.word_length, "Longest word whose trace the flow corrector holds fixed")
      ->capture_default_str();
  app.add_option("--check-length", config.check_word_length, "Longest word in the reported drift")->capture_default_str();
  app.add_option("--nu-target", config.nu_target, "Target nu of continue-rep")->capture_default_str();

  app.add_subcommand("params", "Parameter report: mu, xi, hbar, u, t, q and diagnostics");
  app.add_subcommand("algebra", "Regular module of the cyclotomic degenerate algebra and its spectral check");
  app.add_subcommand("solve-ds", "Solve an additive or multiplicative Deligne-Simpson problem");
  app.add_subcommand("monodromy", "Monodromy of the KZ-type or Cherednik connection");
  app.add_subcommand("rh", "Riemann-Hilbert map of an additive tuple");
  app.add_subcommand("diagram", "Commutativity of the functor, Phi and RH on random n = 1 modules");
  app.add_subcommand("pipeline", "Alias of diagram");
  app.add_subcommand("flow", "Isomonodromic flow of a D4 tuple along a cross-ratio path");
  app.add_subcommand("continue-rep", "Continue an induced B_n-module from nu = 0");

  try {
    app.parse(argc, argv);
    if (!alpha.empty()) config.alpha = gdaha::cli::parse_reals(alpha);
    if (!base.empty()) config.base = gdaha::cli::parse_reals(base);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  gdaha::cli::DirectorySink sink(config.out_dir);
  std::string summary;
  int code = gdaha::cli::run(config, sink, &summary);
  fmt::print(code == 0 ? stdout : stderr, "{}", summary);
  return code;
}
