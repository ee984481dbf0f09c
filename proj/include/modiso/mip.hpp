#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "modiso/invariants.hpp"

namespace modiso {

/// Outcome of the mod-p congruence test on the u-values of two lists with a common prefix.
struct Compatibility {
  enum class Kind { MustDiffer, Compatible };
  Kind kind = Kind::Compatible;
  /// Compatible: 1 when u1 agrees mod p, 2 when only the escape clause allows a difference.
  int which_case = 1;
  std::string reason;
};

/// u2 must agree mod p; u1 must agree mod p unless o1 o2 > 0, n1+o1' = n2+o2' and one of
/// "u2 ≡ u2' ≡ 1 mod p^{o1+1-o2}", "n2+o2' = 2m-o1" fails. Throws PrefixMismatch.
Compatibility u_congruences_compatible(const InvariantList& a, const InvariantList& b);

struct RuleStep {
  std::string rule;    // R0 .. R5
  std::string detail;
  bool decisive = false;
};

struct PairVerdict {
  enum class Status { AlgebrasDistinct, GroupsEqual, Unresolved };
  Status status = Status::Unresolved;
  std::string rule;  // deciding rule, empty when unresolved
  std::vector<RuleStep> applied_rules;
};

std::string to_string(PairVerdict::Status s);

/// Runs the rule ledger in order:
///   R0 identical lists; R1 prefix mismatch; R2 reductions to known positive cases
///   (metacyclic, class <= 2, n2 <= 2, m <= 3, max(o1,o2) <= 1); R3 mod-p congruences of u1, u2;
///   R4 higher-power refinements; R5 center exponents.
PairVerdict decide_pair(const InvariantList& a, const InvariantList& b);

struct CensusFamily {
  InvariantList prefix;  // u1, u2 unused
  std::vector<std::pair<std::int64_t, std::int64_t>> members;  // (u1, u2), ascending
  std::size_t unresolved_pairs = 0;
};

struct CensusReport {
  unsigned p = 3;
  unsigned e = 3;
  std::size_t class_count = 0;
  std::size_t pair_count = 0;
  std::size_t resolved_pair_count = 0;
  std::vector<CensusFamily> families;
};

/// decide_pair over all unordered pairs of valid lists of order p^e with a common prefix.
/// Families are the connected components of the unresolved pairs.
CensusReport census(unsigned p, unsigned e, unsigned threads = 1);

void to_json(nlohmann::json& j, const CensusReport& r);
void to_json(nlohmann::json& j, const PairVerdict& v);
/// Header plus one row per family member.
void write_csv(std::ostream& os, const CensusReport& r);

}  // namespace modiso
