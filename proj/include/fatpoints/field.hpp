#pragma once

/**
 * @file field.hpp
 * @brief Exact coefficient fields: the rationals and prime fields F_p.
 *
 * A Scalar carries its field with it, so mixing elements of different
 * fields is detected at runtime (FieldMismatch) instead of silently
 * producing garbage.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace fatpoints {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CharacteristicTooSmall : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Modular inverse by extended Euclid; `a` must be nonzero mod `p`.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  if (new_r == 0) throw std::domain_error("division by zero in F_p");
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

/// Largest modulus accepted for F_p; keeps residue products inside 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 32) - 1;

class Field {
 public:
  enum class Kind { Rational, Prime };

  static Field rational() { return Field(Kind::Rational, 0); }

  static Field prime(std::uint64_t p) {
    if (p > kMaxPrime || !is_prime(p)) {
      throw std::invalid_argument("F_p requires a prime p < 2^32, got " + std::to_string(p));
    }
    return Field(Kind::Prime, p);
  }

  /// Parses "rational" or "prime:P".
  static Field parse(std::string_view spec) {
    if (spec == "rational" || spec == "Q") return rational();
    constexpr std::string_view prefix = "prime:";
    if (spec.substr(0, prefix.size()) == prefix) {
      std::string digits(spec.substr(prefix.size()));
      std::size_t used = 0;
      unsigned long long p = 0;
      try {
        p = std::stoull(digits, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != digits.size()) {
        throw std::invalid_argument("malformed field spec: " + std::string(spec));
      }
      return prime(p);
    }
    throw std::invalid_argument("unknown field spec: " + std::string(spec));
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_prime_field() const { return kind_ == Kind::Prime; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const {
    return is_rational() ? std::string("rational") : "prime:" + std::to_string(p_);
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;

  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  static Field trusted_prime(std::uint64_t p) { return Field(Kind::Prime, p); }

  Kind kind_;
  std::uint64_t p_;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("field mismatch: " + a.to_string() + " vs " + b.to_string());
}

/// Element of Q (canonical mpq) or of F_p (residue in [0, p)).
class Scalar {
 public:
  /// Zero of Q.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar zero(const Field& f) { return from_int(f, 0); }
  static Scalar one(const Field& f) { return from_int(f, 1); }

  static Scalar from_int(const Field& f, long long v) {
    if (f.is_rational()) return Scalar(mpq_class(mpz_class(std::to_string(v))));
    return Scalar(Residue{reduce(v, f.characteristic()), f.characteristic()});
  }

  static Scalar from_mpz(const Field& f, const mpz_class& v) {
    if (f.is_rational()) return Scalar(mpq_class(v));
    return Scalar(Residue{mpz_fdiv_ui(v.get_mpz_t(), f.characteristic()), f.characteristic()});
  }

  static Scalar rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return Scalar(std::move(c));
  }

  static Scalar residue(std::uint64_t r, std::uint64_t p) {
    if (!is_prime(p) || p > kMaxPrime) throw std::invalid_argument("residue modulus must be a prime < 2^32");
    return Scalar(Residue{r % p, p});
  }

  /// Maps a rational into `f`; fails when the denominator vanishes mod p.
  static Scalar from_rational(const Field& f, const mpq_class& q) {
    if (f.is_rational()) return rational(q);
    const std::uint64_t p = f.characteristic();
    const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) throw std::domain_error("denominator divisible by p");
    const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    return Scalar(Residue{detail::mulmod64(num, inverse_mod(den, p), p), p});
  }

  /// Parses "12", "-3/7" (ASCII or U+2212 minus). Q only unless `f` is F_p,
  /// where the rational is reduced mod p.
  static Scalar parse(const Field& f, std::string_view text) {
    std::string s(text);
    const std::string unicode_minus = "\xE2\x88\x92";
    if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    const auto slash = s.find('/');
    auto check_int = [&](const std::string& part, bool allow_sign) {
      if (part.empty()) throw std::invalid_argument("malformed scalar: " + std::string(text));
      std::size_t i = 0;
      if (allow_sign && part[0] == '-') i = 1;
      if (i == part.size()) throw std::invalid_argument("malformed scalar: " + std::string(text));
      for (; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed scalar: " + std::string(text));
      }
    };
    mpq_class q;
    if (slash == std::string::npos) {
      check_int(s, true);
      q = mpq_class(mpz_class(s));
    } else {
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      check_int(num, true);
      check_int(den, false);
      mpz_class d(den);
      if (d == 0) throw std::domain_error("zero denominator in scalar: " + std::string(text));
      q = mpq_class(mpz_class(num), d);
      q.canonicalize();
    }
    return from_rational(f, q);
  }

  Field field() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return Field::trusted_prime(r->p);
    return Field::rational();
  }

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  bool is_zero() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }

  const mpq_class& as_rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t as_residue() const { return std::get<Residue>(value_).r; }
  std::uint64_t modulus() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->p;
    return 0;
  }

  std::string to_string() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->r);
    return std::get<mpq_class>(value_).get_str();
  }

  Scalar operator-() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return Scalar(Residue{r->r == 0 ? 0 : r->p - r->r, r->p});
    return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check(b);
    if (const auto* x = std::get_if<Residue>(&a.value_)) {
      const auto& y = std::get<Residue>(b.value_);
      std::uint64_t s = x->r + y.r;
      if (s >= x->p) s -= x->p;
      return Scalar(Residue{s, x->p});
    }
    return Scalar(mpq_class(a.as_rational() + b.as_rational()));
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check(b);
    if (const auto* x = std::get_if<Residue>(&a.value_)) {
      const auto& y = std::get<Residue>(b.value_);
      return Scalar(Residue{detail::mulmod64(x->r, y.r, x->p), x->p});
    }
    return Scalar(mpq_class(a.as_rational() * b.as_rational()));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.check(b);
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (const auto* x = std::get_if<Residue>(&a.value_)) {
      const auto& y = std::get<Residue>(b.value_);
      return Scalar(Residue{detail::mulmod64(x->r, inverse_mod(y.r, y.p), x->p), x->p});
    }
    return Scalar(mpq_class(a.as_rational() / b.as_rational()));
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(unsigned e) const {
    Scalar result = one(field());
    Scalar base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return false;
    if (const auto* x = std::get_if<Residue>(&a.value_)) {
      const auto& y = std::get<Residue>(b.value_);
      return x->p == y.p && x->r == y.r;
    }
    return a.as_rational() == b.as_rational();
  }

 private:
  struct Residue {
    std::uint64_t r;
    std::uint64_t p;
  };

  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  static std::uint64_t reduce(long long v, std::uint64_t p) {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<std::uint64_t>(m);
  }

  void check(const Scalar& o) const {
    if (value_.index() != o.value_.index() || modulus() != o.modulus()) {
      throw FieldMismatch("scalar field mismatch: " + field().to_string() + " vs " + o.field().to_string());
    }
  }

  std::variant<mpq_class, Residue> value_;
};

}  // namespace fatpoints
