#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modiso/arith.hpp"

namespace modiso {

/// The ten numerical invariants (p, m, n1, n2, o1, o2, o1', o2', u1, u2) of a
/// 2-generated non-abelian p-group with cyclic derived subgroup, p odd.
struct InvariantList {
  unsigned p = 3;
  unsigned m = 1;
  unsigned n1 = 1;
  unsigned n2 = 1;
  unsigned o1 = 0;
  unsigned o2 = 0;
  unsigned o1p = 0;
  unsigned o2p = 0;
  std::int64_t u1 = 1;
  std::int64_t u2 = 1;

  friend bool operator==(const InvariantList&, const InvariantList&) = default;
  friend auto operator<=>(const InvariantList&, const InvariantList&) = default;

  unsigned order_exponent() const { return m + n1 + n2; }
  BigInt order() const { return ipow(p, order_exponent()); }

  /// True when the first eight entries agree.
  bool same_prefix(const InvariantList& other) const;
};

/// "p,m,n1,n2,o1,o2,o1p,o2p,u1,u2"
std::string to_string(const InvariantList& list);
std::string prefix_string(const InvariantList& list);
/// Throws ParseError on anything but ten comma-separated base-10 integers.
InvariantList parse_invariant_list(std::string_view text);

void to_json(nlohmann::json& j, const InvariantList& list);
void from_json(const nlohmann::json& j, InvariantList& list);

struct DerivedConstants {
  BigInt r1;  // residues mod p^m
  BigInt r2;
  unsigned o = 0;  // max(o1, o2)
  int a1 = 0;  // may be negative for invalid lists
  int a2 = 0;
  BigInt delta;
  BigInt order;
};

/// Evaluates r1, r2, o, a1, a2, delta and the order. Ranges must be sane
/// (o_i <= m) but the list need not be valid; delta is 0 if none exists.
DerivedConstants derive_constants(const InvariantList& list);

struct Violation {
  std::string tag;  // I, II, IIIa, IIIb, IIIc, IVa, IVb, V, VIa, VIb
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

ValidationReport validate(const InvariantList& list);
inline bool is_valid(const InvariantList& list) { return validate(list).valid; }

void to_json(nlohmann::json& j, const ValidationReport& report);

/// Calls `emit` on every valid list of order p^e, in lexicographic order.
void for_each_list(unsigned p, unsigned e, const std::function<void(const InvariantList&)>& emit);
std::vector<InvariantList> enumerate(unsigned p, unsigned e);

struct ReductionFlags {
  bool metacyclic = false;
  bool class_at_most_2 = false;
  bool assumptions_hold = false;
};

ReductionFlags reduction_flags(const InvariantList& list);

}  // namespace modiso
