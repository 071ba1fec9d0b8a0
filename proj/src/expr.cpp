#include "lieheat/expr.hpp"

#include "lieheat/errors.hpp"

#include <algorithm>
#include <vector>

namespace lieheat {

namespace {

constexpr std::array<std::string_view, kSymbolCount> kNames = {
    "x",     "t",         "T",   "T_x", "T_t",  "T_xx",  "T_xt",      "T_tt",
    "T_xxx", "alpha",     "alpha_inv",  "T_i",  "T_s",   "q0pp", "kcond",
    "kcond_inv", "k1",    "k2",  "k3",  "k4",   "k5",    "k6"};

// Cancels x*x_inv pairs for the declared reciprocal constants.
void cancel_reciprocals(Monomial& m) {
  auto cancel = [&m](Symbol a, Symbol b) {
    auto common = std::min(m[index(a)], m[index(b)]);
    m[index(a)] -= common;
    m[index(b)] -= common;
  };
  cancel(Symbol::alpha, Symbol::alpha_inv);
  cancel(Symbol::kcond, Symbol::kcond_inv);
}

std::optional<Symbol> successor(Symbol s, Direction dir) {
  if (dir == Direction::x) {
    switch (s) {
      case Symbol::T: return Symbol::T_x;
      case Symbol::T_x: return Symbol::T_xx;
      case Symbol::T_t: return Symbol::T_xt;
      case Symbol::T_xx: return Symbol::T_xxx;
      default: return std::nullopt;
    }
  }
  switch (s) {
    case Symbol::T: return Symbol::T_t;
    case Symbol::T_x: return Symbol::T_xt;
    case Symbol::T_t: return Symbol::T_tt;
    default: return std::nullopt;
  }
}

std::optional<Symbol> reciprocal(Symbol s) {
  switch (s) {
    case Symbol::alpha: return Symbol::alpha_inv;
    case Symbol::alpha_inv: return Symbol::alpha;
    case Symbol::kcond: return Symbol::kcond_inv;
    case Symbol::kcond_inv: return Symbol::kcond;
    default: return std::nullopt;
  }
}

}  // namespace

std::string_view name(Symbol s) { return kNames[index(s)]; }

std::optional<Symbol> symbol_from_name(std::string_view text) {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (kNames[i] == text) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol group_parameter(int i) {
  if (i < 0 || i > 5) throw Error("group parameter index out of range");
  return static_cast<Symbol>(index(Symbol::k1) + static_cast<std::size_t>(i));
}

Expr::Expr(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Expr Expr::symbol(Symbol s) {
  Monomial m{};
  m[index(s)] = 1;
  return term(Rational(1), m);
}

Expr Expr::term(const Rational& c, Monomial m) {
  Expr e;
  cancel_reciprocals(m);
  e.add_term(m, c);
  return e;
}

void Expr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<Rational> Expr::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first == Monomial{})
    return terms_.begin()->second;
  return std::nullopt;
}

bool Expr::depends_on(Symbol s) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [s](const auto& kv) { return kv.first[index(s)] != 0; });
}

int Expr::degree_in(Symbol s) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[index(s)]));
  return d;
}

bool Expr::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& m = terms_.begin()->first;
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (m[i] != 0 && !is_invertible_constant(static_cast<Symbol>(i))) return false;
  return true;
}

Expr Expr::unit_inverse() const {
  if (!is_unit()) throw Error("expression is not invertible: " + to_string(*this));
  const auto& [m, c] = *terms_.begin();
  Monomial inv{};
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (m[i] == 0) continue;
    inv[index(*reciprocal(static_cast<Symbol>(i)))] = m[i];
  }
  return term(Rational(1) / c, inv);
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m{};
      for (std::size_t i = 0; i < kSymbolCount; ++i) m[i] = ma[i] + mb[i];
      cancel_reciprocals(m);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Expr operator-(const Expr& a) {
  Expr out;
  for (const auto& [m, c] : a.terms_) out.add_term(m, -c);
  return out;
}

Expr pow(const Expr& base, unsigned exponent) {
  Expr result(1);
  Expr square = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1u;
    if (exponent != 0) square = square * square;
  }
  return result;
}

Expr differentiate(const Expr& e, Symbol v) {
  Expr out;
  const auto partner = reciprocal(v);
  for (const auto& [m, c] : e.terms()) {
    if (m[index(v)] != 0) {
      Monomial d = m;
      d[index(v)] -= 1;
      out += Expr::term(c * m[index(v)], d);
    }
    // d/dv (v_inv^p) = -p v_inv^(p+1)
    if (partner && m[index(*partner)] != 0) {
      Monomial d = m;
      const auto p = m[index(*partner)];
      d[index(*partner)] += 1;
      out += Expr::term(-c * p, d);
    }
  }
  return out;
}

Expr total_derivative(const Expr& e, Direction dir) {
  Expr out = differentiate(e, dir == Direction::x ? Symbol::x : Symbol::t);
  for (Symbol s : {Symbol::T, Symbol::T_x, Symbol::T_t, Symbol::T_xx, Symbol::T_xt,
                   Symbol::T_tt, Symbol::T_xxx}) {
    if (!e.depends_on(s)) continue;
    const auto next = successor(s, dir);
    if (!next) {
      throw JetOverflow("D_" + std::string(dir == Direction::x ? "x" : "t") + " of " +
                        std::string(name(s)) + " leaves the jet space");
    }
    out += sym(*next) * differentiate(e, s);
  }
  return out;
}

Expr substitute(const Expr& e, std::span<const Binding> bindings) {
  std::array<const Expr*, kSymbolCount> target{};
  for (const auto& [s, value] : bindings) {
    if (target[index(s)] != nullptr)
      throw Error("duplicate substitution target " + std::string(name(s)));
    target[index(s)] = &value;
  }
  // Powers of each bound value, built lazily.
  std::array<std::vector<Expr>, kSymbolCount> powers;
  auto power_of = [&](std::size_t i, unsigned p) -> const Expr& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= p) cache.push_back(cache.back() * *target[i]);
    return cache[p];
  };

  Expr out;
  for (const auto& [m, c] : e.terms()) {
    Monomial kept = m;
    Expr factor(1);
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (target[i] == nullptr || m[i] == 0) continue;
      kept[i] = 0;
      factor *= power_of(i, m[i]);
      if (factor.is_zero()) break;
    }
    if (!factor.is_zero()) out += Expr::term(c, kept) * factor;
  }
  return out;
}

Expr substitute(const Expr& e, std::initializer_list<Binding> bindings) {
  return substitute(e, std::span<const Binding>(bindings.begin(), bindings.size()));
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += kNames[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const std::string mono = to_string(m);
    std::string term;
    if (mono.empty())
      term = c.str();
    else if (c == 1)
      term = mono;
    else if (c == -1)
      term = "-" + mono;
    else
      term = c.str() + "*" + mono;

    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

}  // namespace lieheat
