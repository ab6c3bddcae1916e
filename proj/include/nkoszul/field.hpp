#pragma once

// Exact scalar fields. A field is a small value object that owns the
// arithmetic; elements are plain values (`mpq_class` or a residue) so
// that a runtime-chosen modulus does not have to live inside every entry.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nkoszul {

template <class F>
concept Field = std::equality_comparable<F> && std::copyable<F> &&
    requires(const F f, const typename F::value_type& a, const typename F::value_type& b,
             typename F::value_type& y, long n) {
      { f.zero() } -> std::same_as<typename F::value_type>;
      { f.one() } -> std::same_as<typename F::value_type>;
      { f.from_int(n) } -> std::same_as<typename F::value_type>;
      { f.add(a, b) } -> std::same_as<typename F::value_type>;
      { f.sub(a, b) } -> std::same_as<typename F::value_type>;
      { f.mul(a, b) } -> std::same_as<typename F::value_type>;
      { f.div(a, b) } -> std::same_as<typename F::value_type>;
      { f.neg(a) } -> std::same_as<typename F::value_type>;
      { f.inv(a) } -> std::same_as<typename F::value_type>;
      { f.is_zero(a) } -> std::same_as<bool>;
      { f.axpy(y, a, b) };  // y += a*b
      { f.to_string(a) } -> std::same_as<std::string>;
      { f.name() } -> std::same_as<std::string>;
    };

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The rational numbers, backed by GMP.
struct Rationals {
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long n) const { return value_type(n); }

  /// num/den in lowest terms; den must be nonzero.
  value_type from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    value_type q(num, den);
    q.canonicalize();
    return q;
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const {
    if (sgn(b) == 0) throw std::domain_error("division by zero");
    return a / b;
  }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return div(one(), a); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  void axpy(value_type& y, const value_type& a, const value_type& b) const {
    mpq_class t(a * b);
    y += t;
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "rational"; }

  bool operator==(const Rationals&) const = default;
};

/// Integers modulo a prime p < 2^32.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p > 0xffffffffULL || !is_prime(p))
      throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^32");
  }

  std::uint32_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  /// Reduction of num/den; throws when p divides den.
  value_type from_fraction(const mpz_class& num, const mpz_class& den) const {
    mpz_class pm(p_);
    mpz_class n = num % pm, d = den % pm;
    if (n < 0) n += pm;
    if (d < 0) d += pm;
    if (d == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
    return div(static_cast<value_type>(n.get_ui()), static_cast<value_type>(d.get_ui()));
  }

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t(a) + p_ - b);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  void axpy(value_type& y, value_type a, value_type b) const { y = add(y, mul(a, b)); }

  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "gf:" + std::to_string(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// Largest prime below 2^31; the default fast-mode modulus.
inline constexpr std::uint32_t kDefaultPrime = 2147483647u;

}  // namespace nkoszul
