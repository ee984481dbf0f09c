#include "modiso/arith.hpp"

#include <stdexcept>

#include "modiso/errors.hpp"

namespace modiso {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimePower::PrimePower(unsigned p, unsigned k) : p_(p), k_(k), value_(ipow(p, k)) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("PrimePower: p must be an odd prime");
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

BigInt mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

BigInt modpow(const BigInt& s, const BigInt& n, const BigInt& modulus) {
  if (n < 0) throw std::invalid_argument("modpow: negative exponent");
  if (modulus == 1) return 0;
  BigInt result = 1;
  BigInt base = mod(s, modulus);
  const unsigned bits = n == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = result * result % modulus;
    if (boost::multiprecision::bit_test(n, i)) result = result * base % modulus;
  }
  return result;
}

BigInt ese(const BigInt& s, const BigInt& n, const BigInt& modulus) {
  if (n < 0) throw std::invalid_argument("ese: negative length");
  if (modulus == 1) return 0;
  // Invariant: sum == S_s^k and power == s^k for the prefix k of n's bits.
  BigInt sum = 0;
  BigInt power = 1;
  const BigInt base = mod(s, modulus);
  const unsigned bits = n == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    sum = sum * (1 + power) % modulus;
    power = power * power % modulus;
    if (boost::multiprecision::bit_test(n, i)) {
      sum = (sum + power) % modulus;
      power = power * base % modulus;
    }
  }
  return sum;
}

std::optional<unsigned> valuation(const BigInt& x, unsigned p) {
  if (x == 0) return std::nullopt;
  BigInt y = x < 0 ? BigInt(-x) : x;
  unsigned e = 0;
  while (y % p == 0) {
    y /= p;
    ++e;
  }
  return e;
}

BigInt solve_delta(unsigned p, unsigned m, unsigned o1, const BigInt& r2) {
  if (o1 > m) throw NoSolution("solve_delta: o1 > m");
  const BigInt modulus = ipow(p, m);
  const BigInt step = ipow(p, m - o1);
  const BigInt target = mod(-step, modulus);
  const BigInt limit = ipow(p, o1);
  // S_r^{(d+1)P} = S_r^{dP} + r^{dP} S_r^P
  const BigInt block = ese(r2, step, modulus);
  const BigInt block_power = modpow(r2, step, modulus);
  BigInt sum = 0;
  BigInt power = 1;
  for (BigInt delta = 1; delta <= limit; ++delta) {
    sum = (sum + power * block) % modulus;
    power = power * block_power % modulus;
    if (sum == target) return delta;
  }
  throw NoSolution("solve_delta: no delta in range");
}

unsigned inverse_mod_prime(unsigned x, unsigned p) {
  x %= p;
  if (x == 0) throw std::domain_error("inverse_mod_prime: zero has no inverse");
  unsigned result = 1;
  unsigned base = x;
  unsigned e = p - 2;
  while (e) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace modiso
