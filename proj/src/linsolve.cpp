#include "nullboot/linsolve.hpp"

#include <optional>

#include "nullboot/error.hpp"

namespace nullboot {

bool LinSolution::determined(Sym u) const {
  auto it = solution.find(u);
  if (it == solution.end()) return false;
  for (Sym s : it->second.symbols())
    if (free.count(s)) return false;
  return true;
}

LinSys linear_system(const std::vector<ParamPoly>& exprs, const std::vector<Sym>& unknowns) {
  LinSys sys;
  sys.unknowns = unknowns;
  const std::set<Sym> uset(unknowns.begin(), unknowns.end());
  for (const auto& e : exprs) {
    if (e.is_zero()) continue;
    LinEq eq;
    for (const auto& [m, c] : e.terms()) {
      std::optional<Sym> hit;
      for (const auto& v : m.vars()) {
        if (!uset.count(v.sym)) continue;
        if (hit || v.exp != 1) throw Error(ErrorCode::ValidationError, "expression not linear in unknowns: " + e.str());
        hit = v.sym;
      }
      if (hit) {
        eq.coeffs[*hit].add_term(m.without(*hit), c);
      } else {
        eq.constant.add_term(m, c);
      }
    }
    for (auto it = eq.coeffs.begin(); it != eq.coeffs.end();) {
      it = it->second.is_zero() ? eq.coeffs.erase(it) : std::next(it);
    }
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

// ---------------------------------------------------------------- univariate gcd

namespace {

void strip(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a divided by b (b nonzero, stripped).
UPoly upoly_rem(UPoly a, const UPoly& b) {
  strip(a);
  const FieldElem lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const FieldElem q = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    a.pop_back();
    strip(a);
  }
  return a;
}

UPoly make_monic(UPoly p) {
  strip(p);
  if (p.empty()) return p;
  const FieldElem inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

std::optional<Sym> sole_symbol(const ParamPoly& p) {
  auto syms = p.symbols();
  if (syms.size() != 1) return std::nullopt;
  return *syms.begin();
}

ParamPoly from_upoly(const UPoly& p, Sym s) {
  ParamPoly r;
  for (std::size_t k = 0; k < p.size(); ++k) r.add_term(Monomial(s, static_cast<unsigned>(k)), p[k]);
  return r;
}

}  // namespace

UPoly upoly_gcd(UPoly a, UPoly b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

ParamPoly univariate_gcd(const ParamPoly& a, const ParamPoly& b, Sym s) {
  return from_upoly(upoly_gcd(univariate_coeffs(a, s), univariate_coeffs(b, s)), s);
}

// ---------------------------------------------------------------- elimination

namespace {

using Row = std::vector<ParamPoly>;  // unknown coefficients, then the constant

class Eliminator {
 public:
  explicit Eliminator(const LinSys& sys) : n_(sys.unknowns.size()), unknowns_(sys.unknowns) {
    std::map<Sym, std::size_t> index;
    for (std::size_t k = 0; k < n_; ++k) index.emplace(unknowns_[k], k);
    for (const auto& eq : sys.equations) {
      Row row(n_ + 1);
      for (const auto& [u, c] : eq.coeffs) {
        auto it = index.find(u);
        if (it == index.end()) throw Error(ErrorCode::ValidationError, "equation references unknown " + u.name() + " not listed");
        row[it->second] = c;
      }
      row[n_] = eq.constant;
      rows_.push_back(std::move(row));
    }
    pivot_of_row_.assign(rows_.size(), -1);
    row_of_col_.assign(n_, -1);
  }

  LinSolution run() {
    reduce();
    check_consistency();
    return back_divide();
  }

 private:
  bool free_row(std::size_t r) const { return pivot_of_row_[r] < 0; }
  bool free_col(std::size_t c) const { return row_of_col_[c] < 0; }

  void assign_pivot(std::size_t r, std::size_t c) {
    pivot_of_row_[r] = static_cast<int>(c);
    row_of_col_[c] = static_cast<int>(r);
  }

  // Pivot with a constant coefficient: normalize the row and clear the column elsewhere.
  void constant_pivot(std::size_t r, std::size_t c) {
    const FieldElem inv = rows_[r][c].constant_term().inverse();
    for (auto& e : rows_[r]) e *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (k == r || rows_[k][c].is_zero()) continue;
      const ParamPoly f = rows_[k][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (!rows_[r][j].is_zero()) rows_[k][j] -= f * rows_[r][j];
    }
    assign_pivot(r, c);
  }

  // Fraction-free pivot: row_k <- piv·row_k − row_k[c]·row_r.
  void general_pivot(std::size_t r, std::size_t c) {
    const ParamPoly piv = rows_[r][c];
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (k == r || rows_[k][c].is_zero()) continue;
      const ParamPoly f = rows_[k][c];
      for (std::size_t j = 0; j <= n_; ++j) {
        ParamPoly v = piv * rows_[k][j];
        if (!rows_[r][j].is_zero()) v -= f * rows_[r][j];
        rows_[k][j] = std::move(v);
      }
      remove_content(rows_[k]);
    }
    assign_pivot(r, c);
  }

  // Divides a row by the gcd of its unknown coefficients when they are all
  // univariate in one common parameter and the constant is divisible too.
  static void remove_content(Row& row) {
    std::optional<Sym> s;
    UPoly g;
    bool any = false;
    for (std::size_t j = 0; j + 1 < row.size(); ++j) {
      const auto& e = row[j];
      if (e.is_zero()) continue;
      auto sym = sole_symbol(e);
      if (!sym || (s && *s != *sym)) return;
      s = sym;
      g = any ? upoly_gcd(g, univariate_coeffs(e, *s)) : make_monic(univariate_coeffs(e, *s));
      any = true;
      if (g.size() <= 1) return;
    }
    if (!any) return;
    const ParamPoly div = from_upoly(g, *s);
    Row out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_zero()) continue;
      auto q = row[j].divide_exact(div);
      if (!q) return;
      out[j] = std::move(*q);
    }
    row = std::move(out);
  }

  bool try_constant_pivot() {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!free_col(c)) continue;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!free_row(r)) continue;
        const auto& e = rows_[r][c];
        if (!e.is_zero() && e.is_constant()) {
          constant_pivot(r, c);
          return true;
        }
      }
    }
    return false;
  }

  bool try_general_pivot() {
    std::optional<std::pair<std::size_t, std::size_t>> univariate;
    std::optional<std::pair<std::size_t, std::size_t>> any;
    unsigned best_degree = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!free_col(c)) continue;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!free_row(r)) continue;
        const auto& e = rows_[r][c];
        if (e.is_zero()) continue;
        if (!any) any = {r, c};
        if (sole_symbol(e) && (!univariate || e.total_degree() < best_degree)) {
          univariate = {r, c};
          best_degree = e.total_degree();
        }
      }
    }
    auto pick = univariate ? univariate : any;
    if (!pick) return false;
    general_pivot(pick->first, pick->second);
    return true;
  }

  void reduce() {
    while (try_constant_pivot() || try_general_pivot()) {
    }
  }

  void check_consistency() const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!free_row(r)) continue;
      if (!rows_[r][n_].is_zero())
        throw Error(ErrorCode::InconsistentSystem, "row reduces to 0 = " + rows_[r][n_].str());
    }
  }

  // Swaps the pivot of row r for a free column carrying a constant coefficient.
  bool exchange(std::size_t r) {
    for (std::size_t f = 0; f < n_; ++f) {
      if (!free_col(f)) continue;
      const auto& e = rows_[r][f];
      if (e.is_zero() || !e.is_constant()) continue;
      const auto old = static_cast<std::size_t>(pivot_of_row_[r]);
      row_of_col_[old] = -1;
      pivot_of_row_[r] = -1;
      constant_pivot(r, f);
      return true;
    }
    return false;
  }

  LinSolution back_divide() {
    for (;;) {
      LinSolution sol;
      std::optional<std::size_t> failed;
      for (std::size_t r = 0; r < rows_.size() && !failed; ++r) {
        if (free_row(r)) continue;
        remove_content(rows_[r]);
        const auto c = static_cast<std::size_t>(pivot_of_row_[r]);
        const ParamPoly& piv = rows_[r][c];
        ParamPoly value;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (j == c || rows_[r][j].is_zero()) continue;
          auto q = rows_[r][j].divide_exact(piv);
          if (!q) {
            failed = r;
            break;
          }
          value -= j == n_ ? *q : *q * ParamPoly(unknowns_[j]);
        }
        sol.solution.emplace(unknowns_[c], std::move(value));
      }
      if (!failed) {
        for (std::size_t c = 0; c < n_; ++c)
          if (free_col(c)) sol.free.insert(unknowns_[c]);
        return sol;
      }
      if (!exchange(*failed)) {
        const auto c = static_cast<std::size_t>(pivot_of_row_[*failed]);
        throw Error(ErrorCode::NonPolynomialSolution,
                    "solving for " + unknowns_[c].name() + " needs division by " + rows_[*failed][c].str());
      }
    }
  }

  std::size_t n_;
  std::vector<Sym> unknowns_;
  std::vector<Row> rows_;
  std::vector<int> pivot_of_row_;
  std::vector<int> row_of_col_;
};

}  // namespace

LinSolution linsolve(const LinSys& sys) { return Eliminator(sys).run(); }

}  // namespace nullboot
