#pragma once

// Scalar fields for exact linear algebra.
//
// Two field types are supported everywhere the library is templated on a
// scalar K:
//   * Rational — arbitrary-precision rationals (boost::multiprecision),
//     the default field; every computation over it is exact.
//   * Fp       — a prime field Z/q with a runtime modulus, set once per
//     process (NTL-style global modulus).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fermat {

// Plain value semantics (no expression templates): every operator returns the
// number type itself, which keeps template deduction simple throughout the
// library's generic linear algebra.
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline std::int64_t floor_rational(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return static_cast<std::int64_t>(q);
}

inline std::int64_t ceil_rational(const Rational& r) {
  return -floor_rational(-r);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) -> std::uint64_t {
    std::uint64_t acc = 1;
    a %= n;
    while (e) {
      if (e & 1) acc = mulmod(acc, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return acc;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Prime-field element. The modulus is a thread-local process setting: call
// Fp::set_modulus(q) once before constructing elements. Mixing values from
// different moduli within one thread is a usage error the class cannot see,
// so tests always set the modulus up front.
class Fp {
 public:
  Fp() : v_(0) {}
  explicit Fp(long long x) {
    require_modulus();
    long long q = static_cast<long long>(modulus_);
    long long r = x % q;
    if (r < 0) r += q;
    v_ = static_cast<std::uint64_t>(r);
  }
  explicit Fp(const Integer& x) {
    require_modulus();
    Integer q(modulus_);
    Integer r = x % q;
    if (r < 0) r += q;
    v_ = static_cast<std::uint64_t>(r);
  }

  static void set_modulus(std::uint64_t q) {
    if (!is_prime_u64(q))
      throw std::invalid_argument("Fp::set_modulus: modulus must be prime");
    modulus_ = q;
  }
  static std::uint64_t modulus() {
    require_modulus();
    return modulus_;
  }

  std::uint64_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return from_raw(add(a.v_, b.v_)); }
  friend Fp operator-(Fp a, Fp b) { return a + (-b); }
  friend Fp operator*(Fp a, Fp b) {
    return from_raw(static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.v_) * b.v_) % modulus_));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return from_raw(v_ == 0 ? 0 : modulus_ - v_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // Extended Euclid on (v, q).
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(modulus_),
              nr = static_cast<long long>(v_);
    while (nr != 0) {
      long long qq = r / nr;
      long long tmp = t - qq * nt;
      t = nt;
      nt = tmp;
      tmp = r - qq * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<long long>(modulus_);
    return from_raw(static_cast<std::uint64_t>(t));
  }

 private:
  static void require_modulus() {
    if (modulus_ == 0)
      throw std::logic_error("Fp: modulus not set (call Fp::set_modulus)");
  }
  static Fp from_raw(std::uint64_t v) {
    Fp x;
    x.v_ = v;
    return x;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;  // moduli fit in 63 bits in practice; guard anyway
    if (s >= modulus_ || s < a) s -= modulus_;
    return s;
  }

  std::uint64_t v_;
  inline static thread_local std::uint64_t modulus_ = 0;
};

template <class K>
struct field_info;

template <>
struct field_info<Rational> {
  static std::string name() { return "QQ"; }
  static std::uint64_t characteristic() { return 0; }
};

template <>
struct field_info<Fp> {
  static std::string name() { return "F_" + std::to_string(Fp::modulus()); }
  static std::uint64_t characteristic() { return Fp::modulus(); }
};

template <class K>
bool is_zero(const K& x) {
  return x == K(0);
}

inline std::string scalar_to_string(const Rational& r) { return r.str(); }
inline std::string scalar_to_string(const Fp& x) {
  return std::to_string(x.value());
}

}  // namespace fermat
