#include "nullboot/cli.hpp"

#include <set>
#include <sstream>

#include "nullboot/error.hpp"

namespace nullboot {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Solve: return "solve";
    case Mode::Verify: return "verify";
    case Mode::Compare: return "compare";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "solve") return Mode::Solve;
  if (s == "verify") return Mode::Verify;
  if (s == "compare") return Mode::Compare;
  throw Error(ErrorCode::ValidationError, "mode: expected solve, verify or compare, got '" + s + "'");
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

void only_keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) invalid(path.empty() ? key : path + "." + key, "unknown field");
}

bool required_bool(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) invalid(path + "." + key, "required");
  if (!obj.at(key).is_boolean()) invalid(path + "." + key, "must be true or false");
  return obj.at(key).get<bool>();
}

CustomProblem parse_custom(const Json& j) {
  if (!j.is_object()) invalid("custom", "must be an object");
  only_keys(j, "custom", {"label", "perturbation", "symmetry", "parity_even"});
  CustomProblem c;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) invalid("custom.label", "must be a string");
    c.label = j.at("label").get<std::string>();
  }
  if (!j.contains("perturbation")) invalid("custom.perturbation", "required");
  try {
    c.perturbation = op_poly_from_json(j.at("perturbation"));
  } catch (const Error& e) {
    invalid("custom.perturbation", e.what());
  }
  if (!j.contains("symmetry")) invalid("custom.symmetry", "required (\"hermitian\" or \"pt\")");
  const Json& sym = j.at("symmetry");
  if (sym == "hermitian")
    c.hermitian = true;
  else if (sym == "pt")
    c.hermitian = false;
  else
    invalid("custom.symmetry", "expected \"hermitian\" or \"pt\"");
  c.parity_even = required_bool(j, "custom", "parity_even");
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "configuration must be a JSON object");
  only_keys(j, "", {"problem", "custom", "max_order", "K_schedule", "output_path", "mode"});

  RunConfig cfg;
  if (!j.contains("problem")) invalid("problem", "required");
  if (!j.at("problem").is_string()) invalid("problem", "must be a string");
  cfg.problem = j.at("problem").get<std::string>();
  if (cfg.problem != "sextic" && cfg.problem != "shifted" && cfg.problem != "cubic" && cfg.problem != "custom")
    invalid("problem", "expected sextic, shifted, cubic or custom, got '" + cfg.problem + "'");
  if (cfg.problem == "custom") {
    if (!j.contains("custom")) invalid("custom", "required when problem is custom");
    cfg.custom = parse_custom(j.at("custom"));
  } else if (j.contains("custom")) {
    invalid("custom", "only allowed when problem is custom");
  }

  if (j.contains("max_order")) {
    const Json& m = j.at("max_order");
    if (!m.is_number_integer()) invalid("max_order", "must be an integer");
    if (m.get<long>() < 0) invalid("max_order", "must be non-negative");
    if (m.get<long>() > 16) invalid("max_order", "must be at most 16");
    cfg.max_order = static_cast<int>(m.get<long>());
  }
  if (j.contains("K_schedule")) {
    const Json& ks = j.at("K_schedule");
    if (!ks.is_array()) invalid("K_schedule", "must be an array of positive integers");
    for (std::size_t k = 0; k < ks.size(); ++k) {
      const std::string path = "K_schedule[" + std::to_string(k) + "]";
      if (!ks[k].is_number_integer() || ks[k].get<long>() < 1 || ks[k].get<long>() > 64)
        invalid(path, "must be an integer between 1 and 64");
      cfg.K_schedule.push_back(static_cast<unsigned>(ks[k].get<long>()));
    }
  }
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) invalid("output_path", "must be a string");
    cfg.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) invalid("mode", "must be a string");
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
  }
  problem_from_config(cfg);
  return cfg;
}

ProblemSpec problem_from_config(const RunConfig& config) {
  if (config.problem == "sextic") return ProblemSpec::sextic();
  if (config.problem == "shifted") return ProblemSpec::shifted();
  if (config.problem == "cubic") return ProblemSpec::cubic();
  if (config.problem != "custom" || !config.custom) invalid("problem", "unknown problem '" + config.problem + "'");
  ProblemSpec s;
  s.label = config.custom->label;
  s.potential_base = OpPoly::x(2) * ParamPoly(FieldElem::rational(1, 2));
  s.perturbation = config.custom->perturbation;
  s.hermitian = config.custom->hermitian;
  s.parity_even = config.custom->parity_even;
  try {
    s.validate();
  } catch (const Error& e) {
    invalid("custom", e.what());
  }
  return s;
}

namespace {

Json config_json(const RunConfig& c) {
  Json j{{"problem", c.problem}, {"max_order", c.max_order}, {"K_schedule", c.K_schedule}};
  if (c.custom)
    j["custom"] = {{"label", c.custom->label},
                   {"perturbation", to_json(c.custom->perturbation)},
                   {"symmetry", c.custom->hermitian ? "hermitian" : "pt"},
                   {"parity_even", c.custom->parity_even}};
  return j;
}

Json error_json(const Error& e) { return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

// ⟨H⟩ = E through the run's order, from an independent table.
ResidualItem expectation_check(const ProblemSpec& problem, int order) {
  MomentTable table = build_moment_table(problem, order, default_table_degrees(problem, order));
  GSeries diff = evaluate_expectation(problem.hamiltonian(), table, order) - energy_series(order);
  return {"expectation_of_H", order, Branch::Lower, diff.is_zero(), true, diff.is_zero() ? "" : diff.str()};
}

}  // namespace

RunOutcome run(const RunConfig& config, Mode mode) {
  RunOutcome out;
  out.report = {{"mode", to_string(mode)}, {"config", config_json(config)}};
  try {
    ProblemSpec problem = problem_from_config(config);
    BootstrapConfig bc;
    bc.max_order = config.max_order;
    bc.ansatz_degrees = config.K_schedule;
    BootstrapSolution sol = bootstrap(problem, bc);
    bool ok = sol.diagnostics.all_required_ok();

    switch (mode) {
      case Mode::Solve:
        out.report["solution"] = to_json(sol);
        break;
      case Mode::Verify: {
        ResidualReport rep = sol.diagnostics;
        rep.items.push_back(expectation_check(problem, config.max_order));
        ok = rep.all_required_ok();
        out.report["residuals"] = to_json(rep);
        break;
      }
      case Mode::Compare: {
        ComparisonReport cmp = compare_with_oracle(sol);
        ok = ok && cmp.all_match();
        out.report["comparison"] = to_json(cmp);
        out.report["diagnostics_ok"] = sol.diagnostics.all_required_ok();
        out.comparison = std::move(cmp);
        break;
      }
    }
    out.solution = std::move(sol);
    out.exit_code = ok ? 0 : 1;
  } catch (const Error& e) {
    out.report["error"] = error_json(e);
    out.exit_code = e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError ? 2 : 1;
  }
  out.report["ok"] = out.exit_code == 0;
  return out;
}

RunOutcome config_error(const Error& err) {
  RunOutcome out;
  out.report = {{"error", error_json(err)}, {"ok", false}};
  out.exit_code = 2;
  return out;
}

std::string render_json(const RunOutcome& outcome) { return outcome.report.dump(2) + "\n"; }

std::string render_latex(const RunOutcome& outcome) {
  std::ostringstream os;
  if (outcome.report.contains("error")) {
    os << "% error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
    return os.str();
  }
  if (outcome.solution) os << latex(*outcome.solution);
  if (outcome.comparison) {
    os << "\\begin{tabular}{llll}\n";
    os << "quantity & order & oracle & match\\\\\n\\hline\n";
    for (const auto& it : outcome.comparison->items) {
      std::string value = std::visit([](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return "$" + latex(v) + "$";
      }, it.oracle);
      std::string name = it.quantity;
      for (std::size_t k = name.find('_'); k != std::string::npos; k = name.find('_', k + 2)) name.replace(k, 1, "\\_");
      os << name << " & " << it.order << " & " << value << " & " << (it.match ? "yes" : "no") << "\\\\\n";
    }
    os << "\\end{tabular}\n";
  }
  return os.str();
}

}  // namespace nullboot
