#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nullboot/cli.hpp"
#include "nullboot/error.hpp"

namespace {

int emit(const nullboot::RunOutcome& outcome, const std::string& out_path, bool as_latex) {
  const std::string text = as_latex ? nullboot::render_latex(outcome) : nullboot::render_json(outcome);
  if (out_path.empty()) {
    std::cout << text;
    return outcome.exit_code;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "nullboot: cannot write " << out_path << "\n";
    return 1;
  }
  f << text;
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact null-bootstrap solver for anharmonic oscillators"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool as_latex = false;
  for (const char* name : {"solve", "verify", "compare"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " a configured problem");
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_path, "write the report here instead of standard output");
    sub->add_flag("--latex", as_latex, "render energies and ladder operators as LaTeX");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    auto outcome = nullboot::config_error(
        nullboot::Error(nullboot::ErrorCode::ParseError, "cannot read configuration " + config_path));
    return emit(outcome, out_path, false);
  }
  std::ostringstream text;
  text << in.rdbuf();

  nullboot::RunConfig config;
  try {
    config = nullboot::parse_config(text.str());
  } catch (const nullboot::Error& e) {
    return emit(nullboot::config_error(e), out_path, as_latex);
  }
  if (out_path.empty()) out_path = config.output_path;
  // The subcommand always decides the mode.
  return emit(nullboot::run(config, nullboot::mode_from_string(command)), out_path, as_latex);
}
