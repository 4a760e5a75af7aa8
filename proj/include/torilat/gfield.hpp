#pragma once

// Prime field F_q with a fixed primitive root and full discrete-log tables.

#include <cstdint>
#include <string>
#include <vector>

#include "torilat/errors.hpp"
#include "torilat/intlin.hpp"

namespace torilat {

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline Int pow_mod(Int base, Int exp, Int m) {
  base = checked::mod(base, m);
  Int result = 1 % m;
  while (exp > 0) {
    if (exp & 1) result = checked::mul(result, base) % m;
    base = checked::mul(base, base) % m;
    exp >>= 1;
  }
  return result;
}

/// Smallest positive integer of multiplicative order q-1 modulo the prime q.
inline Int primitive_root(Int q) {
  require(is_prime(q), "q = " + std::to_string(q) + " is not prime");
  if (q == 2) return 1;
  const auto ps = prime_divisors(q - 1);
  for (Int g = 2; g < q; ++g) {
    bool ok = true;
    for (Int p : ps)
      if (pow_mod(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InvariantError("no primitive root found");
}

/// Arithmetic in F_q, q prime. Elements are residues in [0, q).
class PrimeField {
 public:
  static constexpr Int kMaxOrder = 1'000'003;

  explicit PrimeField(Int q) : q_(q) {
    require(is_prime(q), "field size q = " + std::to_string(q) + " is not prime (only prime fields are supported)");
    require(q <= kMaxOrder, "field size q = " + std::to_string(q) + " exceeds the log-table limit");
    eta_ = primitive_root(q);
    exp_.resize(static_cast<std::size_t>(q - 1));
    log_.assign(static_cast<std::size_t>(q), -1);
    Int x = 1;
    for (Int e = 0; e < q - 1; ++e) {
      exp_[static_cast<std::size_t>(e)] = x;
      log_[static_cast<std::size_t>(x)] = e;
      x = x * eta_ % q;
    }
  }

  Int order() const { return q_; }
  /// Order of the multiplicative group, q - 1.
  Int unit_order() const { return q_ - 1; }
  Int generator() const { return eta_; }

  Int reduce(Int a) const { return checked::mod(a, q_); }
  Int add(Int a, Int b) const { return (a + b) % q_; }
  Int sub(Int a, Int b) const { return (a - b + q_) % q_; }
  Int mul(Int a, Int b) const { return a * b % q_; }
  Int neg(Int a) const { return a == 0 ? 0 : q_ - a; }

  Int inv(Int a) const {
    require(a % q_ != 0, "inverse of zero in F_q");
    return exp_[static_cast<std::size_t>((q_ - 1 - log_[static_cast<std::size_t>(a)]) % (q_ - 1))];
  }

  /// eta^e for any integer e.
  Int power_of_generator(Int e) const { return exp_[static_cast<std::size_t>(checked::mod(e, q_ - 1))]; }

  /// The exponent e in [0, q-1) with eta^e = x.
  Int discrete_log(Int x) const {
    x = reduce(x);
    require(x != 0, "discrete log of zero");
    return log_[static_cast<std::size_t>(x)];
  }

  Int pow(Int a, Int e) const {
    a = reduce(a);
    if (e < 0) return pow(inv(a), checked::neg(e));
    return pow_mod(a, e, q_);
  }

 private:
  Int q_;
  Int eta_;
  std::vector<Int> exp_;
  std::vector<Int> log_;
};

}  // namespace torilat
