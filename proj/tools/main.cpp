#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qsym/error.hpp"

using namespace qsym::cli;

int main(int argc, char** argv) {
  CLI::App app{"q-deformed symmetry toolkit"};
  app.require_subcommand(1);

  std::string config_file, out_file;
  std::optional<int> order;
  std::optional<double> tolerance;

  using Handler = int (*)(const Config&, const RunOptions&, std::ostream&, std::ostream&);
  const std::pair<const char*, Handler> commands[] = {
      {"deform-potential", cmd_deform_potential}, {"invariant-solve", cmd_invariant_solve},
      {"partition-solve", cmd_partition_solve},   {"verify", cmd_verify},
      {"ncplane-check", cmd_ncplane_check},       {"phase-demo", cmd_phase_demo},
  };
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "JSON config file");
    sub->add_option("--out", out_file, "output file (default stdout)");
    sub->add_option("--order", order, "truncation order");
    sub->add_option("--tolerance", tolerance, "acceptance tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  Handler handler = nullptr;
  for (const auto& [name, fn] : commands)
    if (app.got_subcommand(name)) handler = fn;

  std::ostringstream out;
  int code = kExitOk;
  try {
    const Config cfg = config_file.empty() ? Config(json::object()) : load_config(config_file);
    code = handler(cfg, RunOptions{order, tolerance}, out, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsym::SingularMode& e) {
    std::cerr << "singular mode: " << e.what() << "\n";
    for (const auto& m : e.modes()) std::cerr << "  k = " << m.k << ": " << m.reason << "\n";
    return kExitSingular;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }

  if (out_file.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_file << "\n";
      return kExitConfig;
    }
    f << out.str();
  }
  return code;
}
