#include "modiso/invariants.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "modiso/errors.hpp"

namespace modiso {

namespace {

using Int = long long;

Int pow_small(Int base, Int e) {
  if (e < 0) return 0;
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

int compute_a1(const InvariantList& l) {
  const Int n1 = l.n1, n2 = l.n2, o1p = l.o1p, o2p = l.o2p, o2 = l.o2;
  return static_cast<int>(std::min<Int>(o1p, o2 + std::min<Int>(n1 - n2 + o1p - o2p, 0)));
}

int compute_a2(const InvariantList& l) {
  const Int n1 = l.n1, n2 = l.n2, o1 = l.o1, o2 = l.o2, o1p = l.o1p, o2p = l.o2p;
  if (o1 == 0) return 0;
  if (o2 == 0) return static_cast<int>(std::min({o1, o2p, o2p - o1p + std::max<Int>(0, o1 + n2 - n1)}));
  return static_cast<int>(std::min(o1 - o2, o2p - o1p));
}

}  // namespace

bool InvariantList::same_prefix(const InvariantList& other) const {
  return p == other.p && m == other.m && n1 == other.n1 && n2 == other.n2 && o1 == other.o1 &&
         o2 == other.o2 && o1p == other.o1p && o2p == other.o2p;
}

std::string to_string(const InvariantList& l) {
  std::ostringstream os;
  os << l.p << ',' << l.m << ',' << l.n1 << ',' << l.n2 << ',' << l.o1 << ',' << l.o2 << ','
     << l.o1p << ',' << l.o2p << ',' << l.u1 << ',' << l.u2;
  return os.str();
}

std::string prefix_string(const InvariantList& l) {
  std::ostringstream os;
  os << l.p << ',' << l.m << ',' << l.n1 << ',' << l.n2 << ',' << l.o1 << ',' << l.o2 << ','
     << l.o1p << ',' << l.o2p;
  return os.str();
}

InvariantList parse_invariant_list(std::string_view text) {
  std::vector<long long> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    if (field.empty()) throw ParseError("invariant list: empty field");
    long long v = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || end != field.data() + field.size())
      throw ParseError("invariant list: bad integer '" + std::string(field) + "'");
    if (v < 0) throw ParseError("invariant list: negative entry");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (values.size() != 10)
    throw ParseError("invariant list: expected 10 entries, got " + std::to_string(values.size()));
  for (std::size_t i = 0; i < 8; ++i)
    if (values[i] > 1000000) throw ParseError("invariant list: entry out of range");
  InvariantList l;
  l.p = static_cast<unsigned>(values[0]);
  l.m = static_cast<unsigned>(values[1]);
  l.n1 = static_cast<unsigned>(values[2]);
  l.n2 = static_cast<unsigned>(values[3]);
  l.o1 = static_cast<unsigned>(values[4]);
  l.o2 = static_cast<unsigned>(values[5]);
  l.o1p = static_cast<unsigned>(values[6]);
  l.o2p = static_cast<unsigned>(values[7]);
  l.u1 = values[8];
  l.u2 = values[9];
  return l;
}

void to_json(nlohmann::json& j, const InvariantList& l) {
  j = nlohmann::json{{"p", l.p},     {"m", l.m},     {"n1", l.n1},   {"n2", l.n2}, {"o1", l.o1},
                     {"o2", l.o2},   {"o1p", l.o1p}, {"o2p", l.o2p}, {"u1", l.u1}, {"u2", l.u2}};
}

void from_json(const nlohmann::json& j, InvariantList& l) {
  try {
    j.at("p").get_to(l.p);
    j.at("m").get_to(l.m);
    j.at("n1").get_to(l.n1);
    j.at("n2").get_to(l.n2);
    j.at("o1").get_to(l.o1);
    j.at("o2").get_to(l.o2);
    j.at("o1p").get_to(l.o1p);
    j.at("o2p").get_to(l.o2p);
    j.at("u1").get_to(l.u1);
    j.at("u2").get_to(l.u2);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invariant list JSON: ") + e.what());
  }
}

DerivedConstants derive_constants(const InvariantList& l) {
  DerivedConstants c;
  const BigInt pm = ipow(l.p, l.m);
  c.o = std::max(l.o1, l.o2);
  c.a1 = compute_a1(l);
  c.a2 = compute_a2(l);
  c.order = l.order();
  if (l.o1 > l.m || l.o2 > l.m) return c;
  c.r1 = mod(1 + ipow(l.p, l.m - l.o1), pm);
  if (l.o2 > l.o1)
    c.r2 = mod(1 + ipow(l.p, l.m - l.o2), pm);
  else
    c.r2 = modpow(c.r1, ipow(l.p, l.o1 - l.o2), pm);
  try {
    c.delta = solve_delta(l.p, l.m, l.o1, c.r2);
  } catch (const NoSolution&) {
    c.delta = 0;
  }
  return c;
}

ValidationReport validate(const InvariantList& l) {
  ValidationReport report;
  auto fail = [&](std::string tag, std::string detail) {
    report.violations.push_back({std::move(tag), std::move(detail)});
  };
  const Int p = l.p, m = l.m, n1 = l.n1, n2 = l.n2, o1 = l.o1, o2 = l.o2, o1p = l.o1p, o2p = l.o2p;
  const Int u1 = l.u1, u2 = l.u2;

  if (p < 3 || !is_prime(l.p)) fail("I", "p must be an odd prime");
  if (!(n1 >= n2 && n2 >= 1)) fail("I", "need n1 >= n2 >= 1");

  if (!(o1 < std::min(m, n1))) fail("II", "need 0 <= o1 < min(m, n1)");
  if (!(o2 < std::min(m, n2))) fail("II", "need 0 <= o2 < min(m, n2)");
  if (!(o1p <= m - o1)) fail("II", "need o1' <= m - o1");
  if (!(o2p <= m - o2)) fail("II", "need o2' <= m - o2");
  if (p >= 2 && (u1 % p == 0 || u2 % p == 0)) fail("II", "p must not divide u1 or u2");

  const bool iii_a = o1 == 0 && o1p <= o2p && o2p <= o1p + o2 + n1 - n2;
  const bool iii_b = o2 == 0 && 0 < o1 && n2 < n1 && o1p + std::min<Int>(0, n1 - n2 - o1) <= o2p &&
                     o2p <= o1p + n1 - n2;
  const bool iii_c = 0 < o2 && o2 < o1 && o1 < o2 + n1 - n2 && o1p <= o2p && o2p <= o1p + n1 - n2;
  if (!(iii_a || iii_b || iii_c)) {
    fail("IIIa", "o1 = 0 and o1' <= o2' <= o1' + o2 + n1 - n2 fails");
    fail("IIIb", "o2 = 0 < o1, n2 < n1 and o1' + min(0, n1-n2-o1) <= o2' <= o1' + n1 - n2 fails");
    fail("IIIc", "0 < o2 < o1 < o2 + n1 - n2 and o1' <= o2' <= o1' + n1 - n2 fails");
  }

  const bool iv_common = o2 + o1p <= m && m <= n1;
  const bool iv_a = o1 + o2p <= m && m <= n2;
  const bool iv_b = 2 * m - o1 - o2p == n2 && n2 < m && m >= n2 &&
                    ((u2 - 1) % pow_small(p, m - n2) == 0);
  if (!iv_common) {
    fail("IVa", "o2 + o1' <= m <= n1 fails");
    fail("IVb", "o2 + o1' <= m <= n1 fails");
  } else if (!(iv_a || iv_b)) {
    fail("IVa", "o1 + o2' <= m <= n2 fails");
    fail("IVb", "2m - o1 - o2' = n2 < m with u2 = 1 mod p^(m-n2) fails");
  }

  const int a1 = compute_a1(l);
  const int a2 = compute_a2(l);
  if (!(a1 >= 0 && 1 <= u1 && u1 <= pow_small(p, a1))) fail("V", "need 1 <= u1 <= p^a1");

  const bool vi_a = a2 >= 0 && 1 <= u2 && u2 <= pow_small(p, a2);
  const bool vi_b = o1 * o2 != 0 && n1 - n2 + o1p - o2p == 0 && 0 < a1 && a2 >= 0 &&
                    1 + pow_small(p, a2) <= u2 && u2 <= 2 * pow_small(p, a2) && (u1 - 1) % p == 0;
  if (!(vi_a || vi_b)) {
    fail("VIa", "need 1 <= u2 <= p^a2");
    fail("VIb", "o1 o2 != 0, n1-n2+o1'-o2' = 0 < a1, 1+p^a2 <= u2 <= 2p^a2, u1 = 1 mod p fails");
  }

  report.valid = report.violations.empty();
  return report;
}

void to_json(nlohmann::json& j, const ValidationReport& r) {
  j = nlohmann::json{{"valid", r.valid}, {"violations", nlohmann::json::array()}};
  for (const auto& v : r.violations) j["violations"].push_back({{"tag", v.tag}, {"detail", v.detail}});
}

void for_each_list(unsigned p, unsigned e, const std::function<void(const InvariantList&)>& emit) {
  if (p < 3 || !is_prime(p) || e < 3) return;
  InvariantList l;
  l.p = p;
  for (unsigned m = 1; m + 2 <= e; ++m) {
    for (unsigned n1 = 1; m + n1 + 1 <= e; ++n1) {
      const unsigned n2 = e - m - n1;
      if (n2 > n1) continue;
      l.m = m;
      l.n1 = n1;
      l.n2 = n2;
      for (unsigned o1 = 0; o1 < std::min(m, n1); ++o1)
        for (unsigned o2 = 0; o2 < std::min(m, n2); ++o2)
          for (unsigned o1p = 0; o1p <= m - o1; ++o1p)
            for (unsigned o2p = 0; o2p <= m - o2; ++o2p) {
              l.o1 = o1;
              l.o2 = o2;
              l.o1p = o1p;
              l.o2p = o2p;
              const int a1 = compute_a1(l);
              const int a2 = compute_a2(l);
              if (a1 < 0 || a2 < 0) continue;
              const Int u1_max = pow_small(p, a1);
              const Int u2_max = 2 * pow_small(p, a2);
              for (Int u1 = 1; u1 <= u1_max; ++u1) {
                if (u1 % p == 0) continue;
                for (Int u2 = 1; u2 <= u2_max; ++u2) {
                  if (u2 % p == 0) continue;
                  l.u1 = u1;
                  l.u2 = u2;
                  if (validate(l).valid) emit(l);
                }
              }
            }
    }
  }
}

std::vector<InvariantList> enumerate(unsigned p, unsigned e) {
  std::vector<InvariantList> out;
  for_each_list(p, e, [&](const InvariantList& l) { out.push_back(l); });
  return out;
}

ReductionFlags reduction_flags(const InvariantList& l) {
  ReductionFlags f;
  f.metacyclic = std::max(l.o1, l.o2) == 0;
  f.class_at_most_2 = std::max(l.o1p, l.o2p) >= l.m;
  f.assumptions_hold = l.o1 != l.o2 && std::max(l.o1p, l.o2p) > 0 && std::max(l.o1p, l.o2p) < l.m &&
                       l.n2 >= 2;
  return f;
}

}  // namespace modiso
