#pragma once

#include "lieheat/rational.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace lieheat {

// Global symbol order. Canonical forms and printing follow this order, so
// reordering entries changes output text (never equality).
enum class Symbol : std::uint8_t {
  // jet coordinates
  x,
  t,
  T,
  T_x,
  T_t,
  T_xx,
  T_xt,
  T_tt,
  T_xxx,
  // commuting constants
  alpha,
  alpha_inv,
  T_i,
  T_s,
  q0pp,
  kcond,
  kcond_inv,
  k1,
  k2,
  k3,
  k4,
  k5,
  k6,
};

inline constexpr std::size_t kSymbolCount = 22;

constexpr std::size_t index(Symbol s) { return static_cast<std::size_t>(s); }

constexpr bool is_coordinate(Symbol s) { return index(s) <= index(Symbol::T_xxx); }
constexpr bool is_constant(Symbol s) { return !is_coordinate(s); }
/// x, t, T: the base (order zero) coordinates.
constexpr bool is_base_coordinate(Symbol s) { return index(s) <= index(Symbol::T); }
constexpr bool is_group_parameter(Symbol s) {
  return index(s) >= index(Symbol::k1) && index(s) <= index(Symbol::k6);
}
/// Constants carrying a declared reciprocal partner.
constexpr bool is_invertible_constant(Symbol s) {
  return s == Symbol::alpha || s == Symbol::alpha_inv || s == Symbol::kcond ||
         s == Symbol::kcond_inv;
}

std::string_view name(Symbol s);
std::optional<Symbol> symbol_from_name(std::string_view text);
/// k1..k6 by 0-based index.
Symbol group_parameter(int i);

using Monomial = std::array<std::uint16_t, kSymbolCount>;

/// Exact polynomial over jet coordinates and constants with rational
/// coefficients. Values are immutable from the outside; every operation
/// returns a new canonical Expr (no zero coefficients, alpha*alpha_inv and
/// kcond*kcond_inv cancelled).
class Expr {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long long c) : Expr(Rational(c)) {}  // NOLINT
  Expr(int c) : Expr(Rational(c)) {}        // NOLINT
  static Expr symbol(Symbol s);
  static Expr term(const Rational& c, Monomial m);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Value when the expression has no symbols at all.
  std::optional<Rational> as_rational() const;
  bool depends_on(Symbol s) const;
  int degree_in(Symbol s) const;
  /// A single term whose symbols are all invertible constants.
  bool is_unit() const;
  /// Reciprocal of a unit; throws Error otherwise.
  Expr unit_inverse() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend bool operator==(const Expr& a, const Expr& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

Expr pow(const Expr& base, unsigned exponent);

inline Expr sym(Symbol s) { return Expr::symbol(s); }

/// Formal partial derivative; alpha_inv and kcond_inv are differentiated as
/// reciprocals of their partners so the cancellation rule stays consistent.
Expr differentiate(const Expr& e, Symbol v);

enum class Direction { x, t };

/// Total derivative D_x or D_t on the truncated jet space. Throws JetOverflow
/// when e depends on a coordinate whose derivative in `dir` is not
/// representable.
Expr total_derivative(const Expr& e, Direction dir);

using Binding = std::pair<Symbol, Expr>;
/// Simultaneous substitution. Targets must be distinct.
Expr substitute(const Expr& e, std::span<const Binding> bindings);
Expr substitute(const Expr& e, std::initializer_list<Binding> bindings);

inline bool is_zero(const Expr& e) { return e.is_zero(); }

/// Splits e by the powers of the symbols selected by `pred`:
/// e = sum_m m * coeff[m], with coeff free of selected symbols.
template <typename Pred>
std::map<Monomial, Expr> collect(const Expr& e, Pred pred) {
  std::map<Monomial, Expr> out;
  for (const auto& [mono, coef] : e.terms()) {
    Monomial key{};
    Monomial rest{};
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (pred(static_cast<Symbol>(i)))
        key[i] = mono[i];
      else
        rest[i] = mono[i];
    }
    out[key] += Expr::term(coef, rest);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

/// Deterministic printer; output is accepted by parse_expr.
std::string to_string(const Expr& e);
std::string to_string(const Monomial& m);

}  // namespace lieheat
