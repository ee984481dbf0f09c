#include "modiso/pgroup.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "modiso/errors.hpp"

namespace modiso {

namespace {

BigInt parse_nonneg(std::string_view field, std::string_view what) {
  if (field.empty()) throw ParseError(std::string("empty field in ") + std::string(what));
  for (char ch : field)
    if (ch < '0' || ch > '9') throw ParseError("bad digit in " + std::string(what) + ": " + std::string(field));
  return BigInt(std::string(field));
}

std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

}  // namespace

std::string to_string(const GroupElement& g) {
  return to_string(g.x1) + ":" + to_string(g.x2) + ":" + to_string(g.z);
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << to_string(g); }

GroupElement parse_element(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == text.npos) throw ParseError("element must be x1:x2:z");
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == text.npos || text.find(':', c2 + 1) != text.npos) throw ParseError("element must be x1:x2:z");
  return {parse_nonneg(text.substr(0, c1), "element"), parse_nonneg(text.substr(c1 + 1, c2 - c1 - 1), "element"),
          parse_nonneg(text.substr(c2 + 1), "element")};
}

PGroup::PGroup(const InvariantList& inv, std::optional<unsigned> m_eff) : inv_(inv) {
  const ValidationReport report = validate(inv);
  if (!report.valid) {
    std::string msg = "invalid invariant list " + to_string(inv) + ":";
    for (const auto& v : report.violations) msg += " " + v.tag;
    throw InvalidList(msg);
  }
  consts_ = derive_constants(inv);
  m_eff_ = m_eff.value_or(inv.m);
  if (m_eff_ > inv.m) throw std::invalid_argument("quotient exponent exceeds m");
  pa_ = ipow(inv.p, m_eff_);
  pn1_ = ipow(inv.p, inv.n1);
  pn2_ = ipow(inv.p, inv.n2);
  r1_ = mod(consts_.r1, pa_);
  r2_ = mod(consts_.r2, pa_);
  wrap1_ = mod(BigInt(inv.u1) * ipow(inv.p, inv.m - inv.o1p), pa_);
  wrap2_ = mod(BigInt(inv.u2) * ipow(inv.p, inv.m - inv.o2p), pa_);
}

std::string PGroup::descriptor() const {
  std::string s = to_string(inv_);
  if (is_quotient()) s += "/" + std::to_string(inv_.p) + "^" + std::to_string(m_eff_);
  return s;
}

GroupElement PGroup::make(const BigInt& x1, const BigInt& x2, const BigInt& z) const {
  return {mod(x1, pn1_), mod(x2, pn2_), mod(z, pa_)};
}

bool PGroup::contains(const GroupElement& g) const {
  return g.x1 >= 0 && g.x1 < pn1_ && g.x2 >= 0 && g.x2 < pn2_ && g.z >= 0 && g.z < pa_;
}

GroupElement PGroup::multiply(const GroupElement& g, const GroupElement& h) const {
  const BigInt& M = pa_;
  const BigInt Z0 =
      (ese(r1_, h.x1, M) * ese(r2_, g.x2, M) + g.z * modpow(r1_, h.x1, M)) * modpow(r2_, h.x2, M) + h.z;
  const BigInt X1 = g.x1 + h.x1;
  const BigInt X2 = g.x2 + h.x2;
  const BigInt k1 = X1 / pn1_;
  const BigInt k2 = X2 / pn2_;
  BigInt z = Z0;
  if (k1 != 0) z += k1 * wrap1_ * modpow(r2_, X2, M);
  if (k2 != 0) z += k2 * wrap2_;
  return {X1 - k1 * pn1_, X2 - k2 * pn2_, mod(z, M)};
}

GroupElement PGroup::rewriting_multiply(const GroupElement& g, const GroupElement& h,
                                        std::size_t max_letters) const {
  const BigInt letters = h.x1 + h.x2 + h.z;
  if (letters > max_letters)
    throw ResourceCap("rewriting oracle: " + to_string(letters) + " letters exceed the bound");
  if (pa_ > BigInt(1) << 32 || pn1_ > BigInt(1) << 32 || pn2_ > BigInt(1) << 32)
    throw ResourceCap("rewriting oracle: exponents too large");
  const std::uint64_t M = to_u64(pa_), P1 = to_u64(pn1_), P2 = to_u64(pn2_);
  const std::uint64_t r1 = to_u64(r1_), r2 = to_u64(r2_), w1 = to_u64(wrap1_), w2 = to_u64(wrap2_);
  std::uint64_t X1 = to_u64(g.x1), X2 = to_u64(g.x2), Z = to_u64(g.z);

  auto times_b1 = [&] {
    // b1^X1 b2^X2 a^Z b1 = b1^X1 b2^X2 b1 a^{Z r1}
    const std::uint64_t tail = mulmod(Z, r1, M);
    // b2^X2 b1 = b1 b2^X2 a^c, built one b2 at a time via b2 b1 = b1 b2 a
    std::uint64_t c = 0, rj = 1 % M;
    for (std::uint64_t j = 0; j < X2; ++j) {
      c = (c + rj) % M;
      rj = mulmod(rj, r2, M);
    }
    Z = (c + tail) % M;
    if (++X1 == P1) {
      X1 = 0;
      // a^{w1} b2^X2 = b2^X2 a^{w1 r2^X2}, one b2 at a time
      std::uint64_t moved = w1;
      for (std::uint64_t j = 0; j < X2; ++j) moved = mulmod(moved, r2, M);
      Z = (Z + moved) % M;
    }
  };
  auto times_b2 = [&] {
    Z = mulmod(Z, r2, M);
    if (++X2 == P2) {
      X2 = 0;
      Z = (Z + w2) % M;
    }
  };
  auto times_a = [&] { Z = (Z + 1) % M; };

  for (std::uint64_t i = 0, n = to_u64(h.x1); i < n; ++i) times_b1();
  for (std::uint64_t i = 0, n = to_u64(h.x2); i < n; ++i) times_b2();
  for (std::uint64_t i = 0, n = to_u64(h.z); i < n; ++i) times_a();
  return {X1, X2, Z};
}

GroupElement PGroup::power(const GroupElement& g, const BigInt& n) const {
  if (n < 0) return power(inverse(g), -n);
  GroupElement result = identity();
  GroupElement base = g;
  BigInt e = n;
  while (e > 0) {
    if (bit_test(e, 0)) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

GroupElement PGroup::inverse(const GroupElement& g) const { return power(g, order() - 1); }

GroupElement PGroup::commutator(const GroupElement& g, const GroupElement& h) const {
  return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

GroupElement PGroup::conjugate(const GroupElement& g, const GroupElement& h) const {
  return multiply(multiply(inverse(h), g), h);
}

PrimePower PGroup::element_order(const GroupElement& g) const {
  unsigned k = 0;
  GroupElement h = g;
  const GroupElement one = identity();
  while (h != one) {
    h = power(h, inv_.p);
    ++k;
  }
  return PrimePower(inv_.p, k);
}

GroupElement PGroup::central_c() const {
  const unsigned p = inv_.p, m = inv_.m;
  const BigInt& delta = consts_.delta;
  if (inv_.o1 == 0) return multiply(power(b1(), delta * ipow(p, m - inv_.o2)), a());
  return multiply(multiply(power(b1(), -delta * ipow(p, m - inv_.o2)), power(b2(), delta * ipow(p, m - inv_.o1))),
                  a());
}

GroupElement PGroup::element_d() const {
  if (inv_.o1 == 0) return power(b1(), inv_.p);
  return power(b2(), inv_.p);
}

GroupElement PGroup::element_e() const {
  const unsigned p = inv_.p;
  if (inv_.o1 == 0) return power(b2(), ipow(p, inv_.o2 + 1));
  if (inv_.o2 == 0 && inv_.o1p >= inv_.o2p) return power(b1(), ipow(p, inv_.o1 + 1));
  return power(b1(), ipow(p, inv_.n1 - inv_.n2 + 1));
}

PGroup PGroup::quotient_mod_derived_power(unsigned j) const {
  if (j > inv_.m) throw std::invalid_argument("quotient exponent exceeds m");
  return PGroup(inv_, j);
}

PGroup parse_group_descriptor(std::string_view text) {
  const auto slash = text.find('/');
  const InvariantList inv = parse_invariant_list(text.substr(0, slash));
  if (slash == text.npos) return PGroup(inv);
  const std::string_view suffix = text.substr(slash + 1);
  const auto caret = suffix.find('^');
  if (caret == suffix.npos) throw ParseError("quotient suffix must be /p^j");
  const BigInt base = parse_nonneg(suffix.substr(0, caret), "quotient suffix");
  const BigInt j = parse_nonneg(suffix.substr(caret + 1), "quotient suffix");
  if (base != inv.p) throw ParseError("quotient suffix prime differs from p");
  if (j > inv.m) throw ParseError("quotient exponent exceeds m");
  return PGroup(inv, j.convert_to<unsigned>());
}

}  // namespace modiso
