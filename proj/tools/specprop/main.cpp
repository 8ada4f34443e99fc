#include <fmt/format.h>

#include <cstdio>

#include <specprop/errors.hpp>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace specprop;
using namespace specprop::cli;

constexpr int kValidation = 2;
constexpr int kNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specprop: spectra and spectral-propinquity bounds for Dirac operators on tori"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<int> trunc;
  std::optional<double> lambda, cluster_tol;
  int threads = 1;
  bool timestamp = false;
  app.add_option("--config", config, "experiment config (JSON)");
  app.add_option("--out", out, "output directory (overrides the config)");
  app.add_option("--trunc", trunc, "truncation N (overrides the config)");
  app.add_option("--lambda", lambda, "spectral window half-width (overrides the config)");
  app.add_option("--cluster-tol", cluster_tol, "eigenvalue clustering tolerance");
  app.add_option("--threads", threads, "worker threads for sweep steps")->capture_default_str();
  app.add_flag("--timestamp", timestamp, "add a generation timestamp to spectrum CSV headers");

  auto* spectrum = app.add_subcommand("spectrum", "spectrum of the base model");
  auto* converge = app.add_subcommand("converge", "spectral convergence along the configured sequence");
  auto* product = app.add_subcommand("product", "product triple spectrum against the closed-form oracle");
  auto* bound = app.add_subcommand("bound", "propinquity upper bounds along the configured sequence");
  auto* c1dist = app.add_subcommand("c1dist", "C1 distance between two symmetric field files");
  std::string g_file, h_file;
  c1dist->add_option("G", g_file, "first field file")->required();
  c1dist->add_option("H", h_file, "second field file")->required();
  for (auto* s : {spectrum, converge, product, bound, c1dist}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (c1dist->parsed()) {
      fmt::print("{:.12g}\n", run_c1dist(g_file, h_file));
      return 0;
    }
    if (config.empty()) throw ValidationError("--config is required");
    RunOptions opts;
    opts.truncation = trunc;
    opts.lambda = lambda;
    opts.cluster_tol = cluster_tol;
    if (!out.empty()) opts.out = out;
    opts.threads = threads;
    opts.timestamp = timestamp;

    ExperimentConfig cfg = load_config(config);
    apply_overrides(cfg, opts);
    std::vector<std::filesystem::path> written;
    if (spectrum->parsed()) written = run_spectrum(cfg, opts);
    else if (converge->parsed()) written = run_converge(cfg, opts);
    else if (product->parsed()) written = run_product(cfg, opts);
    else written = run_bound(cfg, opts);
    for (const auto& p : written) fmt::print("{}\n", p.string());
    return 0;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "specprop: validation error: {}\n", e.what());
    return kValidation;
  } catch (const NumericalRegimeError& e) {
    fmt::print(stderr, "specprop: numerical regime error: {}\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    fmt::print(stderr, "specprop: error: {}\n", e.what());
    return 1;
  }
}
