#include "nullboot/serialize.hpp"

#include <regex>
#include <sstream>

#include "nullboot/error.hpp"

namespace nullboot {

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const FieldElem& z) {
  return Json{{"a", to_json(z.a())}, {"b", to_json(z.b())}, {"c", to_json(z.c())}, {"d", to_json(z.d())}};
}

Json to_json(const ParamPoly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json vars = Json::object();
    for (const auto& v : mono.vars()) vars[v.sym.name()] = v.exp;
    out.push_back({{"vars", std::move(vars)}, {"coeff", to_json(c)}});
  }
  return out;
}

Json to_json(const OpPoly& op) {
  Json out = Json::array();
  for (const auto& [mono, c] : op.terms()) out.push_back({{"m", mono.m}, {"n", mono.n}, {"coeff", to_json(c)}});
  return out;
}

Json to_json(const GradedOp& op) {
  Json out = Json::array();
  for (const auto& [k, part] : op.terms()) out.push_back({{"g_power", k}, {"op", to_json(part)}});
  return out;
}

Json to_json(const MomentTable& table) {
  Json basis = Json::array();
  for (MomentKey k : table.basis()) basis.push_back({{"m", k.m}, {"n", k.n}});
  Json entries = Json::array();
  for (const auto& [key, entry] : table.entries()) {
    Json series = Json::array();
    for (std::size_t j = 0; j < entry.coeffs.size(); ++j)
      series.push_back({{"g_power", j}, {"poly", to_json(entry.coeffs[j])}});
    entries.push_back({{"m", key.m}, {"n", key.n}, {"series", std::move(series)}});
  }
  return {{"problem", table.problem().label}, {"order", table.order()}, {"basis", std::move(basis)},
          {"entries", std::move(entries)}};
}

Json to_json(const ResidualReport& report) {
  Json items = Json::array();
  for (const auto& it : report.items)
    items.push_back({{"check", it.check},
                     {"order", it.order},
                     {"branch", to_string(it.branch)},
                     {"ok", it.ok},
                     {"required", it.required},
                     {"detail", it.detail}});
  return {{"all_required_ok", report.all_required_ok()}, {"items", std::move(items)}};
}

Json level_coeffs_json(const ParamPoly& p) {
  Json out = Json::array();
  for (const FieldElem& c : univariate_coeffs(p, Sym::level())) {
    if (!c.is_rational()) throw Error(ErrorCode::ValidationError, "energy coefficient is not rational: " + c.str());
    out.push_back(to_json(c.a()));
  }
  return out;
}

Json to_json(const BootstrapSolution& s) {
  Json energies = Json::array();
  for (std::size_t i = 0; i < s.energies.orders.size(); ++i)
    energies.push_back({{"order", i}, {"coeffs_in_n", level_coeffs_json(s.energies.orders[i])}});
  Json lower = Json::array(), raiser = Json::array();
  for (const auto& l : s.lower) lower.push_back(to_json(l));
  for (const auto& r : s.raiser) raiser.push_back(to_json(r));
  return {{"problem", s.problem.label},
          {"max_order", s.max_order},
          {"ansatz_degrees", s.ansatz_degrees},
          {"test_degrees", s.test_degrees},
          {"energies", std::move(energies)},
          {"lower", std::move(lower)},
          {"raiser", std::move(raiser)},
          {"diagnostics", to_json(s.diagnostics)}};
}

namespace {

Json value_json(const ComparisonItem::Value& v) {
  return std::visit([](const auto& x) -> Json {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, bool>)
      return x;
    else
      return to_json(x);
  }, v);
}

std::string value_text(const ComparisonItem::Value& v) {
  return std::visit([](const auto& x) -> std::string {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, bool>)
      return x ? "true" : "false";
    else
      return x.str();
  }, v);
}

}  // namespace

Json to_json(const ComparisonReport& report) {
  Json items = Json::array();
  for (const auto& it : report.items)
    items.push_back({{"quantity", it.quantity},
                     {"order", it.order},
                     {"oracle", value_json(it.oracle)},
                     {"bootstrap", value_json(it.bootstrap)},
                     {"oracle_text", value_text(it.oracle)},
                     {"bootstrap_text", value_text(it.bootstrap)},
                     {"match", it.match}});
  return {{"problem", report.problem},
          {"max_order", report.max_order},
          {"all_match", report.all_match()},
          {"items", std::move(items)},
          {"skipped", report.skipped}};
}

// ---------------------------------------------------------------- parsing

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected a rational string, got " + j.dump());
}

FieldElem field_from_json(const Json& j) {
  if (!j.is_object()) return FieldElem(rat_from_json(j));
  Rat part[4];
  const char* names[4] = {"a", "b", "c", "d"};
  for (const auto& [key, value] : j.items()) {
    int k = 0;
    while (k < 4 && key != names[k]) ++k;
    if (k == 4) throw Error(ErrorCode::ParseError, "unknown field element component '" + key + "'");
    part[k] = rat_from_json(value);
  }
  return FieldElem(part[0], part[1], part[2], part[3]);
}

Sym sym_from_name(const std::string& name) {
  static const std::regex re(R"((n|E|Es|Eg|B|X|A|c)(-?\d+)?(?:_(-?\d+))?(?:_(-?\d+))?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw Error(ErrorCode::ParseError, "unknown symbol '" + name + "'");
  const std::string head = m[1];
  auto num = [&](int g) {
    if (!m[g].matched) throw Error(ErrorCode::ParseError, "incomplete symbol '" + name + "'");
    return std::stoi(m[g]);
  };
  const int groups = m[2].matched + m[3].matched + m[4].matched;
  auto expect = [&](int count) {
    if (groups != count) throw Error(ErrorCode::ParseError, "malformed symbol '" + name + "'");
  };
  if (head == "n") return expect(0), Sym::level();
  if (head == "E" && groups == 0) return Sym::full_energy();
  if (head == "E") return expect(1), Sym::energy(num(2));
  if (head == "Es") return expect(1), Sym::shifted_energy(num(2));
  if (head == "Eg") return expect(1), Sym::ground_energy(num(2));
  if (head == "B") return expect(2), Sym::basis_coeff(num(2), num(3));
  if (head == "X") return expect(1), Sym::moment(num(2));
  if (head == "A") return expect(3), Sym::ansatz(num(2), num(3), num(4));
  return expect(1), Sym::aux(num(2));
}

ParamPoly param_poly_from_json(const Json& j) {
  if (!j.is_array()) return ParamPoly(field_from_json(j));
  ParamPoly out;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff")) throw Error(ErrorCode::ParseError, "bad polynomial term " + term.dump());
    Monomial mono;
    if (term.contains("vars"))
      for (const auto& [name, e] : term.at("vars").items()) {
        if (!e.is_number_unsigned()) throw Error(ErrorCode::ParseError, "exponent of " + name + " must be a natural number");
        mono = mono * Monomial(sym_from_name(name), e.get<unsigned>());
      }
    out += ParamPoly(mono, field_from_json(term.at("coeff")));
  }
  return out;
}

OpPoly op_poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "operator polynomial must be an array of terms");
  OpPoly out;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff")) throw Error(ErrorCode::ParseError, "bad operator term " + term.dump());
    auto power = [&](const char* key) -> unsigned {
      if (!term.contains(key)) return 0;
      const Json& v = term.at(key);
      if (!v.is_number_unsigned()) throw Error(ErrorCode::ParseError, std::string(key) + " must be a natural number");
      return v.get<unsigned>();
    };
    out += OpPoly(OpMonomial{power("m"), power("n")}, param_poly_from_json(term.at("coeff")));
  }
  return out;
}

// ---------------------------------------------------------------- LaTeX

namespace {

std::string latex_rat(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

// Signed components, each as (negative, magnitude text).
std::vector<std::pair<bool, std::string>> latex_parts(const FieldElem& z) {
  std::vector<std::pair<bool, std::string>> out;
  auto add = [&](const Rat& q, const std::string& unit) {
    if (sgn(q) == 0) return;
    Rat mag = abs(q);
    std::string body = mag == 1 && !unit.empty() ? unit : latex_rat(mag) + unit;
    out.emplace_back(sgn(q) < 0, body);
  };
  // q√2 with an even denominator reads better as (2q)/√2.
  auto add_root = [&](const Rat& q, const std::string& unit) {
    if (sgn(q) == 0) return;
    Rat twice = 2 * abs(q);
    twice.canonicalize();
    if (q.get_den() % 2 != 0) return add(q, unit + "\\sqrt{2}");
    std::string den = twice.get_den() == 1 ? "" : twice.get_den().get_str();
    std::string num = twice.get_num() == 1 && !unit.empty() ? unit : twice.get_num().get_str() + unit;
    out.emplace_back(sgn(q) < 0, "\\frac{" + num + "}{" + den + "\\sqrt{2}}");
  };
  add(z.a(), "");
  add_root(z.b(), "");
  add(z.c(), "i");
  add_root(z.d(), "i");
  return out;
}

std::string joined(const std::vector<std::pair<bool, std::string>>& parts) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0)
      s += parts[k].first ? "-" : "";
    else
      s += parts[k].first ? " - " : " + ";
    s += parts[k].second;
  }
  return s.empty() ? "0" : s;
}

std::string power(const std::string& base, unsigned e) {
  if (e == 0) return "";
  return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
}

std::string latex_sym(Sym s) {
  switch (s.kind()) {
    case SymKind::Level: return "n";
    case SymKind::FullEnergy: return "E";
    case SymKind::Energy: return "E^{(" + std::to_string(s.i()) + ")}";
    default: return s.name();
  }
}

// Coefficient times a monomial text, as a signed term.
void append_term(std::vector<std::pair<bool, std::string>>& out, const FieldElem& c, const std::string& mono) {
  auto parts = latex_parts(c);
  if (parts.size() == 1) {
    const auto& [neg, mag] = parts[0];
    if (mono.empty()) out.emplace_back(neg, mag);
    else out.emplace_back(neg, mag == "1" ? mono : mag + " " + mono);
    return;
  }
  out.emplace_back(false, "\\left(" + joined(parts) + "\\right)" + (mono.empty() ? "" : " " + mono));
}

}  // namespace

std::string latex(const FieldElem& z) { return joined(latex_parts(z)); }

std::string latex(const ParamPoly& p) {
  std::vector<std::pair<bool, std::string>> terms;
  for (const auto& [mono, c] : p.terms()) {
    std::string m;
    for (const auto& v : mono.vars()) m += (m.empty() ? "" : " ") + power(latex_sym(v.sym), v.exp);
    append_term(terms, c, m);
  }
  return joined(terms);
}

std::string latex(const OpPoly& op) {
  std::vector<std::pair<bool, std::string>> terms;
  for (const auto& [mono, c] : op.terms()) {
    std::string m = power("x", mono.m);
    if (mono.n > 0) m += (m.empty() ? "" : " ") + power("p", mono.n);
    if (c.is_constant()) {
      append_term(terms, c.constant_term(), m);
    } else {
      terms.emplace_back(false, "\\left(" + latex(c) + "\\right)" + (m.empty() ? "" : " " + m));
    }
  }
  return joined(terms);
}

std::string latex(const BootstrapSolution& s) {
  std::ostringstream os;
  os << "% " << s.problem.label << ", orders 0 to " << s.max_order << "\n";
  os << "\\begin{align}\n";
  for (std::size_t i = 0; i < s.energies.orders.size(); ++i)
    os << "E_n^{(" << i << ")} &= " << latex(s.energies.orders[i]) << "\\\\\n";
  for (std::size_t i = 0; i < s.lower.size(); ++i) {
    os << "L_-^{(" << i << ")} &= " << latex(s.lower[i]) << "\\\\\n";
    os << "L_+^{(" << i << ")} &= " << latex(s.raiser[i]) << (i + 1 < s.lower.size() ? "\\\\\n" : "\n");
  }
  os << "\\end{align}\n";
  return os.str();
}

}  // namespace nullboot
