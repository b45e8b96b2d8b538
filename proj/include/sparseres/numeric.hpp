#pragma once

// Exact scalar types and small numeric helpers shared by every module.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace sparseres {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidInput = 2,
  kExtraction = 3,
  kInvariant = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r = 1;
  Integer b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    exp >>= 1u;
    if (exp) b *= b;
  }
  return r;
}

inline Rational rpow(const Rational& base, long exp) {
  if (exp < 0) return Rational(1) / rpow(base, -exp);
  Rational r = 1;
  Rational b = base;
  auto e = static_cast<unsigned long>(exp);
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

/// Natural log of a positive big integer, accurate to double precision even
/// when the value does not fit in a double.
inline double log_integer(const Integer& x) {
  if (x <= 0) throw std::domain_error("log_integer: non-positive argument");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  Integer top = x >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline Integer to_integer(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

/// Seeded generator with portable bounded draws. std::uniform_int_distribution
/// is implementation-defined, which would break byte-identical reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] (inclusive), rejection sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for a sub-task (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sparseres
