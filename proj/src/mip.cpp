#include "modiso/mip.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

#include "modiso/errors.hpp"
#include "modiso/pgroup.hpp"
#include "modiso/structure.hpp"

namespace modiso {

namespace {

bool congruent(std::int64_t x, std::int64_t y, unsigned p, unsigned k) {
  return mod(BigInt(x) - y, ipow(p, k)) == 0;
}

std::string pair_text(std::int64_t x, std::int64_t y) { return std::to_string(x) + " vs " + std::to_string(y); }

}  // namespace

Compatibility u_congruences_compatible(const InvariantList& a, const InvariantList& b) {
  if (!a.same_prefix(b)) throw PrefixMismatch("lists differ before u1: " + prefix_string(a) + " / " + prefix_string(b));
  const unsigned p = a.p;
  if (!congruent(a.u2, b.u2, p, 1))
    return {Compatibility::Kind::MustDiffer, 0, "u2 differs mod p: " + pair_text(a.u2, b.u2)};
  if (congruent(a.u1, b.u1, p, 1)) return {Compatibility::Kind::Compatible, 1, "u1 and u2 agree mod p"};
  const bool shape = a.o1 > 0 && a.o2 > 0 && a.n1 + a.o1p == a.n2 + a.o2p;
  const unsigned k = a.o1 + 1 > a.o2 ? a.o1 + 1 - a.o2 : 0;
  const bool u2_unit = congruent(a.u2, 1, p, k) && congruent(b.u2, 1, p, k);
  const bool top = a.n2 + a.o2p == 2 * a.m - a.o1;
  if (shape && (!u2_unit || !top))
    return {Compatibility::Kind::Compatible, 2, "u1 differs mod p but the escape clause holds"};
  return {Compatibility::Kind::MustDiffer, 0, "u1 differs mod p: " + pair_text(a.u1, b.u1)};
}

std::string to_string(PairVerdict::Status s) {
  switch (s) {
    case PairVerdict::Status::AlgebrasDistinct:
      return "AlgebrasDistinct";
    case PairVerdict::Status::GroupsEqual:
      return "GroupsEqual";
    case PairVerdict::Status::Unresolved:
      return "Unresolved";
  }
  return "?";
}

PairVerdict decide_pair(const InvariantList& a, const InvariantList& b) {
  PairVerdict v;
  auto decide = [&v](PairVerdict::Status s, std::string rule, std::string detail) {
    v.status = s;
    v.rule = rule;
    v.applied_rules.push_back({std::move(rule), std::move(detail), true});
    return v;
  };
  auto note = [&v](std::string rule, std::string detail) {
    v.applied_rules.push_back({std::move(rule), std::move(detail), false});
  };

  if (a == b) return decide(PairVerdict::Status::GroupsEqual, "R0", "identical lists");
  note("R0", "lists differ");

  if (!a.same_prefix(b))
    return decide(PairVerdict::Status::AlgebrasDistinct, "R1", "first eight entries differ");
  note("R1", "common prefix " + prefix_string(a));

  const ReductionFlags f = reduction_flags(a);
  const unsigned o = std::max(a.o1, a.o2);
  std::string reduced;
  if (f.metacyclic) reduced = "metacyclic";
  else if (f.class_at_most_2) reduced = "class at most 2";
  else if (a.n2 <= 2) reduced = "n2 <= 2";
  else if (a.m <= 3) reduced = "m <= 3";
  else if (o <= 1) reduced = "max(o1, o2) <= 1";
  if (!reduced.empty()) return decide(PairVerdict::Status::AlgebrasDistinct, "R2", reduced);
  note("R2", "no reduction applies");

  const Compatibility c = u_congruences_compatible(a, b);
  if (c.kind == Compatibility::Kind::MustDiffer) return decide(PairVerdict::Status::AlgebrasDistinct, "R3", c.reason);
  note("R3", c.reason);

  const unsigned p = a.p;
  const int tmax = 2 * static_cast<int>(a.m) - 1 - static_cast<int>(q_formula(a));
  const int m2 = 2 * static_cast<int>(a.m);
  const bool part1 = a.o1 == 0 && static_cast<int>(a.n1) == m2 - static_cast<int>(a.o2 + a.o1p);
  const bool part2 = a.o2 == 0 && static_cast<int>(a.n2) == m2 - static_cast<int>(a.o1 + a.o2p);
  struct Part {
    bool applies;
    std::int64_t x, y, base;
    const char* name;
  };
  for (const Part& part : {Part{part1, a.u1, b.u1, -1, "u1"}, Part{part2, a.u2, b.u2, 1, "u2"}}) {
    if (!part.applies) continue;
    for (int t = 1; t <= tmax; ++t) {
      const unsigned ut = static_cast<unsigned>(t);
      if (!congruent(part.x, part.base, p, ut) || !congruent(part.y, part.base, p, ut)) break;
      const std::string what = std::string(part.name) + " mod p^" + std::to_string(t + 1) + " with t=" + std::to_string(t);
      if (!congruent(part.x, part.y, p, ut + 1))
        return decide(PairVerdict::Status::AlgebrasDistinct, "R4", what + ": " + pair_text(part.x, part.y));
      note("R4", what + " agrees");
    }
  }

  const PrimePower ea = center_exponent(PGroup(a));
  const PrimePower eb = center_exponent(PGroup(b));
  const std::string exps = "center exponents p^" + std::to_string(ea.k()) + " and p^" + std::to_string(eb.k());
  if (ea.k() != eb.k()) return decide(PairVerdict::Status::AlgebrasDistinct, "R5", exps);
  note("R5", exps);
  v.status = PairVerdict::Status::Unresolved;
  return v;
}

CensusReport census(unsigned p, unsigned e, unsigned threads) {
  CensusReport r;
  r.p = p;
  r.e = e;
  std::map<std::string, std::vector<InvariantList>> groups;
  for_each_list(p, e, [&](const InvariantList& l) {
    ++r.class_count;
    groups[prefix_string(l)].push_back(l);
  });
  std::vector<const std::vector<InvariantList>*> work;
  for (const auto& [key, lists] : groups)
    if (lists.size() > 1) work.push_back(&lists);

  struct Result {
    std::size_t pairs = 0;
    std::size_t resolved = 0;
    std::vector<CensusFamily> families;
  };
  std::vector<Result> results(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t w = next++; w < work.size(); w = next++) {
      const auto& lists = *work[w];
      const std::size_t n = lists.size();
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::vector<std::size_t> edges(n, 0);
      Result& res = results[w];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          ++res.pairs;
          if (decide_pair(lists[i], lists[j]).status != PairVerdict::Status::Unresolved) {
            ++res.resolved;
            continue;
          }
          parent[find(i)] = find(j);
          ++edges[i];
        }
      std::map<std::size_t, CensusFamily> comps;
      for (std::size_t i = 0; i < n; ++i) {
        CensusFamily& fam = comps[find(i)];
        fam.prefix = lists[i];
        fam.prefix.u1 = fam.prefix.u2 = 0;
        fam.members.emplace_back(lists[i].u1, lists[i].u2);
        fam.unresolved_pairs += edges[i];
      }
      for (auto& [root, fam] : comps)
        if (fam.members.size() > 1) {
          std::sort(fam.members.begin(), fam.members.end());
          res.families.push_back(std::move(fam));
        }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(work.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& res : results) {
    r.pair_count += res.pairs;
    r.resolved_pair_count += res.resolved;
    for (auto& fam : res.families) r.families.push_back(std::move(fam));
  }
  return r;
}

void to_json(nlohmann::json& j, const CensusReport& r) {
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : r.families) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& [u1, u2] : f.members) members.push_back({u1, u2});
    fams.push_back({{"prefix", prefix_string(f.prefix)}, {"members", members}, {"unresolved_pairs", f.unresolved_pairs}});
  }
  j = {{"p", r.p},
       {"e", r.e},
       {"class_count", r.class_count},
       {"pair_count", r.pair_count},
       {"resolved_pair_count", r.resolved_pair_count},
       {"unresolved_pair_count", r.pair_count - r.resolved_pair_count},
       {"families", fams}};
}

void to_json(nlohmann::json& j, const PairVerdict& v) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : v.applied_rules) steps.push_back({{"rule", s.rule}, {"detail", s.detail}, {"decisive", s.decisive}});
  j = {{"status", to_string(v.status)}, {"rule", v.rule}, {"applied_rules", steps}};
}

void write_csv(std::ostream& os, const CensusReport& r) {
  os << "p,e,family,m,n1,n2,o1,o2,o1p,o2p,u1,u2\n";
  for (std::size_t i = 0; i < r.families.size(); ++i) {
    const InvariantList& l = r.families[i].prefix;
    for (const auto& [u1, u2] : r.families[i].members)
      os << r.p << ',' << r.e << ',' << i << ',' << l.m << ',' << l.n1 << ',' << l.n2 << ',' << l.o1 << ',' << l.o2
         << ',' << l.o1p << ',' << l.o2p << ',' << u1 << ',' << u2 << '\n';
  }
}

}  // namespace modiso
