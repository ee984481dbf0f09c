#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "modiso/canonical.hpp"
#include "modiso/errors.hpp"
#include "modiso/finite_group.hpp"
#include "modiso/invariants.hpp"
#include "modiso/lemmas.hpp"
#include "modiso/mip.hpp"
#include "modiso/pgroup.hpp"
#include "modiso/structure.hpp"

using namespace modiso;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;
constexpr int kResourceCap = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t element_cap = kDefaultElementCap;
  std::size_t algebra_cap = kDefaultAlgebraCap;
  std::uint64_t seed = 1;
  std::string format = "text";
  unsigned threads = 1;
};

void load_config_file(Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config file " + path + " is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "element_cap") c.element_cap = value.get<std::size_t>();
      else if (key == "algebra_cap") c.algebra_cap = value.get<std::size_t>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "format") c.format = value.get<std::string>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else throw InputError("config file " + path + ": unknown field " + key);
    } catch (const json::type_error&) {
      throw InputError("config file " + path + ": bad value for " + key);
    }
  }
}

void check_config(const Config& c) {
  if (c.element_cap == 0 || c.algebra_cap == 0) throw InputError("caps must be positive");
  if (c.threads == 0) throw InputError("threads must be positive");
  if (c.format != "text" && c.format != "json" && c.format != "csv") throw InputError("format must be text, json or csv");
}

InvariantList parse_list(const std::string& text) {
  try {
    return parse_invariant_list(text);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
}

PGroup make_group(const InvariantList& l, std::optional<unsigned> quotient = std::nullopt) {
  try {
    return PGroup(l, quotient);
  } catch (const InvalidList& e) {
    throw InputError(std::string("invalid list: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<GroupElement>& gens) {
  std::string out;
  for (const auto& g : gens) out += (out.empty() ? "" : " ") + to_string(g);
  return out.empty() ? "1" : out;
}

unsigned log_p(std::size_t n, unsigned p) {
  unsigned k = 0;
  for (; n > 1; n /= p) ++k;
  return k;
}

bool is_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// Commands

int cmd_validate(const Config& cfg, const std::string& inv) {
  const InvariantList l = parse_list(inv);
  const ValidationReport r = validate(l);
  if (cfg.format == "json") {
    json j = r;
    j["list"] = to_string(l);
    print_json(j);
  } else {
    std::cout << to_string(l) << ": " << (r.valid ? "valid" : "invalid") << '\n';
    for (const auto& v : r.violations) std::cout << "  condition " << v.tag << ": " << v.detail << '\n';
  }
  return r.valid ? kOk : kFailure;
}

int cmd_enumerate(const Config& cfg, unsigned p, unsigned e) {
  if (cfg.format == "json") {
    json arr = json::array();
    for_each_list(p, e, [&](const InvariantList& l) { arr.push_back(to_string(l)); });
    print_json({{"p", p}, {"order_exp", e}, {"count", arr.size()}, {"lists", arr}});
    return kOk;
  }
  if (cfg.format == "csv") std::cout << "p,m,n1,n2,o1,o2,o1p,o2p,u1,u2\n";
  for_each_list(p, e, [](const InvariantList& l) { std::cout << to_string(l) << '\n'; });
  return kOk;
}

void print_group_info(const json& j);

int cmd_group_info(const Config& cfg, const std::string& inv, std::optional<unsigned> quotient) {
  const InvariantList l = parse_list(inv);
  const PGroup g = make_group(l, quotient);
  json j = {{"group", g.descriptor()}, {"order", std::to_string(g.p()) + "^" + std::to_string(g.order_exponent())}};
  if (!g.is_quotient()) {
    json gamma = json::array();
    for (unsigned n = 2;; ++n) {
      const auto gens = gamma_generators(g, n);
      if (gens.empty()) break;
      gamma.push_back(join(gens));
    }
    j["gamma"] = gamma;
    j["center_generators"] = join(center_generators(g));
    std::ostringstream exp;
    exp << center_exponent(g);
    j["center_exponent"] = exp.str();
    j["q"] = q_formula(l);
  }
  std::string cap_message;
  try {
    const FiniteGroup fg = FiniteGroup::from_pgroup(g, cfg.element_cap);
    if (g.is_quotient()) {
      json gamma = json::array();
      const auto lcs = fg.lower_central_series();
      for (std::size_t i = 1; i + 1 < lcs.size(); ++i)
        gamma.push_back("order p^" + std::to_string(log_p(lcs[i].size(), g.p())));
      j["gamma"] = gamma;
      const Subgroup z = fg.center();
      std::uint64_t exponent = 1;
      for (Elem x : z.elements) exponent = std::max(exponent, fg.order_of(x));
      j["center_order"] = std::to_string(g.p()) + "^" + std::to_string(log_p(z.size(), g.p()));
      j["center_exponent"] = std::to_string(g.p()) + "^" + std::to_string(log_p(exponent, g.p()));
      j["q"] = q_value(fg, Mode::Bruteforce);
    }
    const auto d = fg.jennings_series();
    json layers = json::array();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) layers.push_back(log_p(d[i].size() / d[i + 1].size(), g.p()));
    j["jennings_layers"] = layers;
  } catch (const ResourceCap& e) {
    cap_message = e.what();
  }

  if (cfg.format == "json") {
    print_json(j);
  } else {
    print_group_info(j);
  }
  if (!cap_message.empty()) {
    std::cerr << "resource cap exceeded: " << cap_message << " (raise --element-cap)\n";
    return kResourceCap;
  }
  return kOk;
}

void print_group_info(const json& j) {
  std::cout << "group " << j["group"].get<std::string>() << '\n' << "order " << j["order"].get<std::string>() << '\n';
  if (j.contains("gamma"))
    for (std::size_t i = 0; i < j["gamma"].size(); ++i)
      std::cout << "gamma_" << i + 2 << ' ' << j["gamma"][i].get<std::string>() << '\n';
  if (j.contains("center_generators")) std::cout << "center " << j["center_generators"].get<std::string>() << '\n';
  if (j.contains("center_order")) std::cout << "center order " << j["center_order"].get<std::string>() << '\n';
  if (j.contains("center_exponent")) std::cout << "center exponent " << j["center_exponent"].get<std::string>() << '\n';
  if (j.contains("q")) std::cout << "q " << j["q"] << '\n';
  if (j.contains("jennings_layers")) {
    std::cout << "jennings layers";
    for (const auto& x : j["jennings_layers"]) std::cout << ' ' << x;
    std::cout << '\n';
  }
}

int cmd_census(const Config& cfg, unsigned p, unsigned e) {
  const CensusReport r = census(p, e, cfg.threads);
  if (cfg.format == "json") {
    print_json(r);
  } else if (cfg.format == "csv") {
    write_csv(std::cout, r);
  } else {
    std::cout << "order " << p << '^' << e << ": " << r.class_count << " groups, " << r.pair_count
              << " pairs with a common prefix, " << r.pair_count - r.resolved_pair_count << " unresolved\n";
    std::cout << r.families.size() << " unresolved " << (r.families.size() == 1 ? "family" : "families") << '\n';
    for (const auto& f : r.families) {
      std::cout << "  prefix " << prefix_string(f.prefix) << ", (u1,u2) in";
      for (const auto& [u1, u2] : f.members) std::cout << " (" << u1 << ',' << u2 << ')';
      std::cout << '\n';
    }
  }
  return kOk;
}

int cmd_decide(const Config& cfg, const std::vector<std::string>& invs) {
  const InvariantList a = parse_list(invs.at(0));
  const InvariantList b = parse_list(invs.at(1));
  make_group(a);
  make_group(b);
  PairVerdict v;
  try {
    v = decide_pair(a, b);
  } catch (const PrefixMismatch& e) {
    throw InputError(e.what());
  }
  if (cfg.format == "json") {
    json j = v;
    j["lists"] = {to_string(a), to_string(b)};
    print_json(j);
  } else {
    std::cout << to_string(v.status) << (v.rule.empty() ? "" : " by " + v.rule) << '\n';
    for (const auto& s : v.applied_rules) std::cout << "  " << s.rule << (s.decisive ? " * " : "   ") << s.detail << '\n';
  }
  return kOk;
}

int cmd_extract(const Config& cfg, const std::string& inv, const std::string& pipeline, unsigned t, unsigned part,
                unsigned samples) {
  const InvariantList l = parse_list(inv);
  const PGroup g = make_group(l);
  CanonicalOptions opts;
  opts.element_cap = cfg.element_cap;
  opts.algebra_cap = cfg.algebra_cap;
  opts.seed = cfg.seed;
  opts.check_samples = samples;
  unsigned got = 0;
  unsigned want = 0;
  std::string meaning;
  try {
    if (pipeline == "case1") {
      got = extract_u_case1(g, opts);
      want = predicted_scalar(l, Pipeline::Case1);
      meaning = "delta * u_t mod p";
    } else if (pipeline == "unequal") {
      got = extract_u1_unequal(g, opts);
      want = predicted_scalar(l, Pipeline::Unequal);
      meaning = "-delta * u1 mod p";
    } else if (pipeline == "special") {
      got = extract_u1_special(g, opts);
      want = predicted_scalar(l, Pipeline::Special);
      meaning = "-delta * u1 mod p";
    } else {
      got = extract_higher(g, t, part, opts);
      want = predicted_scalar(l, Pipeline::Higher, t, part);
      meaning = part == 1 ? "(u1 + 1) / p^t mod p" : "(u2 - 1) / p^t mod p";
    }
  } catch (const NotApplicable& e) {
    throw InputError(std::string("pipeline does not apply: ") + e.what());
  }
  const bool match = got == want;
  if (cfg.format == "json") {
    print_json({{"list", to_string(l)}, {"pipeline", pipeline}, {"scalar", got}, {"expected", want},
                {"expected_meaning", meaning}, {"match", match}});
  } else {
    std::cout << "scalar " << got << '\n'
              << "expected " << want << " (" << meaning << ")\n"
              << (match ? "oracle match" : "oracle MISMATCH") << '\n';
  }
  return match ? kOk : kFailure;
}

int cmd_verify_lemmas(const Config& cfg, unsigned p, unsigned max_e, const std::vector<std::string>& suites) {
  LemmaOptions opts;
  opts.suites = suites;
  opts.element_cap = cfg.element_cap;
  opts.algebra_cap = cfg.algebra_cap;
  opts.threads = cfg.threads;
  LemmaReport r;
  try {
    r = verify_lemmas(p, max_e, opts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (cfg.format == "json") {
    print_json(r);
  } else {
    for (const auto& c : r.checks) {
      std::cout << to_string(c.outcome) << ' ' << c.suite << ' ' << to_string(c.group);
      if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
      std::cout << '\n';
    }
    std::cout << r.groups << " groups: " << r.count(LemmaCheck::Outcome::Pass) << " passed, "
              << r.count(LemmaCheck::Outcome::Fail) << " failed, " << r.count(LemmaCheck::Outcome::Skipped)
              << " skipped\n";
  }
  return r.all_passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group invariants, group algebras and the modular isomorphism problem for 2-generated p-groups "
               "with cyclic derived subgroup"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::optional<std::size_t> element_cap, algebra_cap;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  app.add_option("--element-cap", element_cap, "Largest group order to materialize (default 6561)");
  app.add_option("--algebra-cap", algebra_cap, "Largest group algebra dimension (default 3000)");
  app.add_option("--seed", seed, "Random seed (default 1)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", threads, "Worker threads (default 1)");

  std::string inv;
  unsigned p = 3, e = 3;
  std::optional<unsigned> quotient;
  std::vector<std::string> pair;
  std::string pipeline;
  unsigned t = 1, part = 2, samples = 0;
  std::vector<std::string> suites;

  auto* validate_cmd = app.add_subcommand("validate", "Check an invariant list");
  validate_cmd->add_option("--inv", inv, "p,m,n1,n2,o1,o2,o1p,o2p,u1,u2")->required();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List all valid invariant lists of order p^E");
  enumerate_cmd->add_option("--p", p)->required();
  enumerate_cmd->add_option("--order-exp", e)->required();

  auto* info_cmd = app.add_subcommand("group-info", "Structure of one group");
  info_cmd->add_option("--inv", inv)->required();
  info_cmd->add_option("--quotient", quotient, "Work modulo (G')^{p^J}");

  auto* census_cmd = app.add_subcommand("census", "Pairs of groups of order p^E not separated by the known rules");
  census_cmd->add_option("--p", p)->required();
  census_cmd->add_option("--order-exp", e)->required();

  auto* decide_cmd = app.add_subcommand("decide", "Rule trace for two lists");
  decide_cmd->add_option("--inv", pair, "Two lists")->required()->expected(2);

  auto* extract_cmd = app.add_subcommand("extract", "Recover a unit from the group algebra");
  extract_cmd->add_option("--inv", inv)->required();
  extract_cmd->add_option("--pipeline", pipeline)->required()->check(
      CLI::IsMember({"case1", "unequal", "special", "higher"}));
  extract_cmd->add_option("--t", t, "Power for the higher pipeline (default 1)");
  extract_cmd->add_option("--part", part, "1 refines u1, 2 refines u2 (default 2)")->check(CLI::IsMember({1u, 2u}));
  extract_cmd->add_option("--check-samples", samples, "Well-definedness samples per map (default 0)");

  auto* lemmas_cmd = app.add_subcommand("verify-lemmas", "Run the property suites on every group up to order p^E");
  lemmas_cmd->add_option("--p", p)->required();
  lemmas_cmd->add_option("--max-order-exp", e)->required();
  lemmas_cmd->add_option("--suite", suites, "Suite name (repeatable; default all)");

  auto* suites_cmd = app.add_subcommand("list-suites", "Names of the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (const char* path = std::getenv("MODISO_CONFIG"); path && *path) load_config_file(cfg, path);
    if (element_cap) cfg.element_cap = *element_cap;
    if (algebra_cap) cfg.algebra_cap = *algebra_cap;
    if (seed) cfg.seed = *seed;
    if (format) cfg.format = *format;
    if (threads) cfg.threads = *threads;
    check_config(cfg);
    if ((*enumerate_cmd || *census_cmd || *lemmas_cmd) && !is_odd_prime(p)) throw InputError("p must be an odd prime");

    if (*validate_cmd) return cmd_validate(cfg, inv);
    if (*enumerate_cmd) return cmd_enumerate(cfg, p, e);
    if (*info_cmd) return cmd_group_info(cfg, inv, quotient);
    if (*census_cmd) return cmd_census(cfg, p, e);
    if (*decide_cmd) return cmd_decide(cfg, pair);
    if (*extract_cmd) return cmd_extract(cfg, inv, pipeline, t, part, samples);
    if (*lemmas_cmd) return cmd_verify_lemmas(cfg, p, e, suites);
    if (*suites_cmd) {
      for (const auto& s : lemma_suites()) std::cout << s.name << ": " << s.statement << '\n';
      return kOk;
    }
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInputError;
  } catch (const ResourceCap& err) {
    std::cerr << "resource cap exceeded: " << err.what() << " (raise --element-cap / --algebra-cap)\n";
    return kResourceCap;
  } catch (const std::exception& err) {
    std::cerr << "failure: " << err.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
