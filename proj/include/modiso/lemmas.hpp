#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modiso/algebra.hpp"
#include "modiso/invariants.hpp"

namespace modiso {

struct LemmaSuite {
  std::string name;
  std::string statement;
};

/// Property suites checked on each group, in run order.
const std::vector<LemmaSuite>& lemma_suites();

struct LemmaCheck {
  enum class Outcome { Pass, Fail, Skipped };
  std::string suite;
  InvariantList group;
  Outcome outcome = Outcome::Pass;
  std::size_t assertions = 0;
  std::string detail;  // first failure, or why the suite does not apply
};

std::string to_string(LemmaCheck::Outcome o);

struct LemmaOptions {
  /// Suite names to run; all when empty. Unknown names throw std::invalid_argument.
  std::vector<std::string> suites;
  std::size_t element_cap = kDefaultElementCap;
  std::size_t algebra_cap = kDefaultAlgebraCap;
  unsigned threads = 1;
};

/// Runs the selected suites on one group. ResourceCap propagates.
std::vector<LemmaCheck> verify_group(const InvariantList& l, const LemmaOptions& opts = {});

struct LemmaReport {
  unsigned p = 3;
  unsigned max_order_exp = 3;
  std::size_t groups = 0;
  std::vector<LemmaCheck> checks;  // by group, then suite

  std::size_t count(LemmaCheck::Outcome o) const;
  bool all_passed() const { return count(LemmaCheck::Outcome::Fail) == 0; }
};

/// All valid lists of order p^3 .. p^max_order_exp.
LemmaReport verify_lemmas(unsigned p, unsigned max_order_exp, const LemmaOptions& opts = {});

void to_json(nlohmann::json& j, const LemmaReport& r);

}  // namespace modiso
