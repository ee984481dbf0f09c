#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace modiso {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

/// p^k for an odd prime p, stored exactly.
class PrimePower {
 public:
  PrimePower(unsigned p, unsigned k);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  const BigInt& value() const { return value_; }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PrimePower& q) { return os << q.p_ << '^' << q.k_; }

 private:
  unsigned p_;
  unsigned k_;
  BigInt value_;
};

BigInt ipow(const BigInt& base, unsigned exponent);
inline BigInt ipow(unsigned base, unsigned exponent) { return ipow(BigInt(base), exponent); }

/// Least non-negative residue of x modulo m (m > 0).
BigInt mod(const BigInt& x, const BigInt& m);

/// s^n mod modulus, n >= 0.
BigInt modpow(const BigInt& s, const BigInt& n, const BigInt& modulus);
inline BigInt modpow(const BigInt& s, const BigInt& n, const PrimePower& modulus) {
  return modpow(s, n, modulus.value());
}

/// 1 + s + ... + s^{n-1} mod modulus. Uses doubling on n so it stays valid
/// when s - 1 is not invertible.
BigInt ese(const BigInt& s, const BigInt& n, const BigInt& modulus);
inline BigInt ese(const BigInt& s, const BigInt& n, const PrimePower& modulus) {
  return ese(s, n, modulus.value());
}

/// p-adic valuation; std::nullopt stands for +infinity (x == 0).
std::optional<unsigned> valuation(const BigInt& x, unsigned p);

/// The unique 1 <= delta <= p^o1 with ese(r2, delta p^{m-o1}, p^m) == -p^{m-o1}.
/// Throws NoSolution when the parameters admit none.
BigInt solve_delta(unsigned p, unsigned m, unsigned o1, const BigInt& r2);

/// Inverse of a unit modulo the prime p.
unsigned inverse_mod_prime(unsigned x, unsigned p);

std::string to_string(const BigInt& x);

}  // namespace modiso
