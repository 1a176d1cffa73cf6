#include "doctest.h"
#include "nullboot/cli.hpp"
#include "reference_values.hpp"

using namespace nullboot;

namespace {

template <class Fn>
std::pair<ErrorCode, std::string> failure_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return {err.code(), err.what()};
  }
  FAIL("expected an error");
  return {ErrorCode::ValidationError, ""};
}

bool mentions(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("field elements serialize as four rational strings") {
  FieldElem z(Rat(1, 2), Rat(-3), Rat(0), Rat(5, 7));
  Json j = to_json(z);
  CHECK(j.dump() == R"({"a":"1/2","b":"-3","c":"0","d":"5/7"})");
  CHECK(field_from_json(j) == z);
  CHECK(field_from_json(Json("-15/8")) == FieldElem::rational(-15, 8));
  CHECK(field_from_json(Json(4)) == FieldElem(4L));
  CHECK(field_from_json(Json::parse(R"({"c":"1"})")) == FieldElem::imag());
  CHECK(failure_of([] { field_from_json(Json::parse(R"({"e":"1"})")); }).first == ErrorCode::ParseError);
  CHECK(failure_of([] { field_from_json(Json(0.5)); }).first == ErrorCode::ParseError);
  CHECK(failure_of([] { field_from_json(Json("1/0")); }).first == ErrorCode::DivisionByZero);
}

TEST_CASE("polynomials and operators round trip") {
  ParamPoly p = ParamPoly(Sym::energy(0)).pow(2) * ParamPoly(FieldElem::sqrt2()) +
                ParamPoly(Sym::ansatz(1, 2, 3)) * ParamPoly(Sym::level()) - ParamPoly(FieldElem::rational(3, 4));
  CHECK(param_poly_from_json(to_json(p)) == p);
  OpPoly op = ref::xp_poly(ref::sextic_ladder2, true);
  CHECK(op_poly_from_json(to_json(op)) == op);
  CHECK(to_json(op).size() == 30);
  CHECK(to_json(op)[0]["m"] == 0);
  CHECK(to_json(op)[0]["n"] == 1);

  for (Sym s : {Sym::level(), Sym::full_energy(), Sym::energy(3), Sym::shifted_energy(2), Sym::ground_energy(1),
                Sym::basis_coeff(4, 2), Sym::moment(2), Sym::ansatz(2, 0, 9), Sym::aux(-1)})
    CHECK(sym_from_name(s.name()) == s);
  CHECK(failure_of([] { sym_from_name("Q1"); }).first == ErrorCode::ParseError);
  CHECK(failure_of([] { sym_from_name("A1_2"); }).first == ErrorCode::ParseError);
}

TEST_CASE("moment table export lists the basis and every series") {
  MomentTable t = build_moment_table(ProblemSpec::sextic(), 1, default_table_degrees(ProblemSpec::sextic(), 1));
  Json j = to_json(t);
  CHECK(j["basis"].size() == 2);
  CHECK(j["basis"][0]["m"] == 2);
  CHECK(j["basis"][1]["m"] == 4);
  CHECK(j["entries"].size() == t.entries().size());
  const Json& first = j["entries"][0];
  CHECK(first["m"] == 0);
  CHECK(first["n"] == 0);
  CHECK(first["series"][0]["g_power"] == 0);
}

TEST_CASE("configuration defaults and schedules") {
  RunConfig c = parse_config(R"({"problem":"sextic"})");
  CHECK(c.max_order == 2);
  CHECK(c.K_schedule.empty());
  ProblemSpec s = problem_from_config(c);
  CHECK(s.ansatz_degree(0) == 1);
  CHECK(s.ansatz_degree(1) == 5);
  CHECK(s.ansatz_degree(2) == 9);

  RunConfig sh = parse_config(R"({"problem":"shifted","max_order":2,"mode":"verify","output_path":"out.json"})");
  CHECK(sh.mode == Mode::Verify);
  CHECK(sh.output_path == "out.json");
  CHECK(problem_from_config(sh).ansatz_degree(2) == 3);
  CHECK(problem_from_config(parse_config(R"({"problem":"cubic"})")).ansatz_degree(2) == 5);

  RunConfig k = parse_config(R"({"problem":"cubic","K_schedule":[1,3]})");
  CHECK(k.K_schedule == std::vector<unsigned>{1, 3});
}

TEST_CASE("configuration errors name the field") {
  auto [code, msg] = failure_of([] { parse_config(R"({"problem":"sextic","max_order":-1})"); });
  CHECK(code == ErrorCode::ValidationError);
  CHECK(mentions(msg, "max_order"));

  CHECK(failure_of([] { parse_config("{\"problem\":"); }).first == ErrorCode::ParseError);
  CHECK(failure_of([] { parse_config("[1]"); }).first == ErrorCode::ParseError);
  CHECK(mentions(failure_of([] { parse_config("{}"); }).second, "problem"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"octic"})"); }).second, "problem"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"sextic","colour":1})"); }).second, "colour"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"sextic","K_schedule":[1,0]})"); }).second,
                 "K_schedule[1]"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"sextic","mode":"plot"})"); }).second, "mode"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"custom"})"); }).second, "custom"));
  CHECK(mentions(failure_of([] {
                   parse_config(R"({"problem":"custom","custom":{"perturbation":[{"m":4,"coeff":"1"}],
                                    "parity_even":true}})");
                 }).second,
                 "custom.symmetry"));
  CHECK(mentions(failure_of([] {
                   parse_config(R"({"problem":"custom","custom":{"perturbation":[{"m":4,"coeff":"1"}],
                                    "symmetry":"hermitian"}})");
                 }).second,
                 "custom.parity_even"));
  // i x^2 is not PT-invariant.
  CHECK(mentions(failure_of([] {
                   parse_config(R"({"problem":"custom","custom":{"perturbation":[{"m":2,"coeff":{"c":"1"}}],
                                    "symmetry":"pt","parity_even":true}})");
                 }).second,
                 "PT"));
  CHECK(mentions(failure_of([] { parse_config(R"({"problem":"sextic","custom":{}})"); }).second, "custom"));
}

TEST_CASE("solve the shifted oscillator") {
  RunOutcome out = run(parse_config(R"({"problem":"shifted","max_order":2})"), Mode::Solve);
  CHECK(out.exit_code == 0);
  const Json& sol = out.report["solution"];
  CHECK(sol["energies"][0]["coeffs_in_n"] == Json::parse(R"(["1/2","1"])"));
  CHECK(sol["energies"][1]["coeffs_in_n"] == Json::parse(R"(["0"])"));
  CHECK(sol["energies"][2]["coeffs_in_n"] == Json::parse(R"(["1/2"])"));
  CHECK(sol["lower"][2].empty());
  CHECK(sol["raiser"][2].empty());
  CHECK(render_json(out) == render_json(run(parse_config(R"({"problem":"shifted","max_order":2})"), Mode::Solve)));
}

TEST_CASE("verify the cubic oscillator") {
  RunOutcome out = run(parse_config(R"({"problem":"cubic","max_order":2})"), Mode::Verify);
  CHECK(out.exit_code == 0);
  bool noted = false, expectation = false;
  for (const Json& it : out.report["residuals"]["items"]) {
    if (it["check"] == "null") CHECK(it["ok"] == true);
    if (it["check"] == "raiser_is_adjoint" && it["order"] == 1)
      noted = it["ok"] == false && it["required"] == false;
    if (it["check"] == "expectation_of_H") expectation = it["ok"] == true;
  }
  CHECK(noted);
  CHECK(expectation);
}

TEST_CASE("compare against the oracles") {
  RunOutcome sx = run(parse_config(R"({"problem":"sextic","max_order":1})"), Mode::Compare);
  CHECK(sx.exit_code == 0);
  CHECK(sx.report["comparison"]["all_match"] == true);
  CHECK(sx.report["comparison"]["items"].size() == 3);

  RunOutcome cu = run(parse_config(R"({"problem":"cubic","max_order":2})"), Mode::Compare);
  CHECK(cu.exit_code == 0);
  CHECK(cu.comparison->all_match());
  CHECK(cu.comparison->items.size() == 4);

  RunOutcome quartic = run(parse_config(R"({"problem":"custom","max_order":2,"custom":{"label":"quartic",
      "perturbation":[{"m":4,"coeff":"1"}],"symmetry":"hermitian","parity_even":true}})"),
                           Mode::Compare);
  CHECK(quartic.exit_code == 0);
  CHECK(quartic.comparison->items.size() == 6);
}

TEST_CASE("engine failures become report entries") {
  RunOutcome out = run(parse_config(R"({"problem":"sextic","max_order":0,"K_schedule":[2]})"), Mode::Solve);
  CHECK(out.exit_code == 1);
  CHECK(out.report["error"]["code"] == "BranchAmbiguity");
  CHECK(out.report["ok"] == false);

  RunOutcome bad = config_error(Error(ErrorCode::ValidationError, "max_order: must be non-negative"));
  CHECK(bad.exit_code == 2);
  CHECK(mentions(render_json(bad), "max_order"));
}

TEST_CASE("latex rendering") {
  CHECK(latex(FieldElem::rational(-15, 8)) == "-\\frac{15}{8}");
  CHECK(latex(FieldElem(0, 0, 0, Rat(1, 2))) == "\\frac{i}{\\sqrt{2}}");
  CHECK(latex(ref::sextic_e1()) == "\\frac{15}{8} + 5 n + \\frac{15}{4} n^{2} + \\frac{5}{2} n^{3}");
  CHECK(latex(OpPoly::x(2) - OpPoly::p()) == "-p + x^{2}");
  RunOutcome out = run(parse_config(R"({"problem":"shifted","max_order":1})"), Mode::Solve);
  std::string tex = render_latex(out);
  CHECK(mentions(tex, "E_n^{(0)} &= \\frac{1}{2} + n"));
  CHECK(mentions(tex, "L_-^{(1)} &= \\frac{i}{\\sqrt{2}}"));
}
