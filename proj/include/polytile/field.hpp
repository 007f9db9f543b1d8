#pragma once

// Exact scalar fields: arbitrary-precision rationals and prime fields F_p.
//
// Elements carry their own arithmetic operators. A field object supplies the
// constants (zero, one), conversions from integers and "a/b" strings, and
// printing. Algorithms are templated on the field type and take the field
// object by const reference.

#include <concepts>
#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <string_view>

#include "polytile/error.hpp"

namespace polytile {

using Rational = mpq_class;

/// Residue modulo a prime p < 2^31. The modulus travels with the value so
/// that elements are self-contained; mixing moduli is a logic error.
class ModP {
public:
  ModP() = default;
  ModP(std::int64_t value, std::uint64_t p) : p_(p) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint64_t>(r);
  }

  [[nodiscard]] std::uint64_t value() const { return v_; }
  [[nodiscard]] std::uint64_t modulus() const { return p_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }

  ModP& operator+=(const ModP& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = (v_ * o.v_) % p_;
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const { return ModP(0, p_) - *this; }
  friend bool operator==(const ModP& a, const ModP& b) {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }

  [[nodiscard]] ModP inverse() const {
    if (v_ == 0) throw ArithmeticError("division by zero in F_p");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = (result * base) % p_;
      base = (base * base) % p_;
      e >>= 1;
    }
    ModP out;
    out.v_ = result;
    out.p_ = p_;
    return out;
  }

private:
  void check(const ModP& o) const {
    if (p_ != o.p_) throw ArithmeticError("mixed moduli in F_p arithmetic");
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a,
                              std::string_view s) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::value_type>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { a + a } -> std::convertible_to<typename F::value_type>;
  { a * a } -> std::convertible_to<typename F::value_type>;
  { a / a } -> std::convertible_to<typename F::value_type>;
};

namespace detail {

// Splits "a/b" or "a" into integer strings; rejects anything else.
inline std::pair<std::string, std::string> split_fraction(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num(s.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(s.substr(slash + 1));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!den.empty() && den[0] == '+') den.erase(0, 1);
  if (!valid_int(num) || !valid_int(den))
    throw ParseError("malformed scalar '" + std::string(s) + "'");
  return {num, den};
}

}  // namespace detail

class RationalField {
public:
  using value_type = Rational;

  [[nodiscard]] Rational zero() const { return Rational(0); }
  [[nodiscard]] Rational one() const { return Rational(1); }
  [[nodiscard]] Rational from_int(std::int64_t v) const {
    return Rational(mpz_class(std::to_string(v)));
  }
  [[nodiscard]] Rational parse(std::string_view s) const {
    auto [num, den] = detail::split_fraction(s);
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational q(mpz_class(num), d);
    q.canonicalize();
    return q;
  }
  [[nodiscard]] bool is_zero(const Rational& a) const { return sgn(a) == 0; }
  [[nodiscard]] std::string to_string(const Rational& a) const { return a.get_str(); }
  [[nodiscard]] std::string name() const { return "rational"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
public:
  using value_type = ModP;
  static constexpr std::uint64_t kDefaultPrime = 1000003;

  explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p < 2 || p >= (1ULL << 31)) throw InputError("prime modulus out of range");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InputError("modulus " + std::to_string(p) + " is not prime");
  }

  [[nodiscard]] std::uint64_t modulus() const { return p_; }
  [[nodiscard]] ModP zero() const { return ModP(0, p_); }
  [[nodiscard]] ModP one() const { return ModP(1, p_); }
  [[nodiscard]] ModP from_int(std::int64_t v) const { return ModP(v, p_); }
  [[nodiscard]] ModP parse(std::string_view s) const {
    auto [num, den] = detail::split_fraction(s);
    auto reduce = [&](const std::string& t) {
      mpz_class z(t);
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p_));
      return ModP(static_cast<std::int64_t>(r.get_ui()), p_);
    };
    ModP d = reduce(den);
    if (d.is_zero())
      throw ParseError("denominator vanishes mod " + std::to_string(p_) + " in '" +
                       std::string(s) + "'");
    return reduce(num) / d;
  }
  [[nodiscard]] bool is_zero(const ModP& a) const { return a.is_zero(); }
  [[nodiscard]] std::string to_string(const ModP& a) const { return std::to_string(a.value()); }
  [[nodiscard]] std::string name() const { return "prime:" + std::to_string(p_); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
  std::uint64_t p_;
};

static_assert(ExactField<RationalField>);
static_assert(ExactField<PrimeField>);

}  // namespace polytile
