#include "modiso/finite_group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "modiso/errors.hpp"

namespace modiso {

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

unsigned log_p(std::size_t n, unsigned p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

}  // namespace

FiniteGroup FiniteGroup::from_pgroup(const PGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw ResourceCap("group " + g.descriptor() + " of order " + to_string(g.order()) + " exceeds element cap " +
                      std::to_string(cap));
  if (g.order() > std::numeric_limits<std::uint16_t>::max()) throw ResourceCap("group too large for a table");
  const std::uint64_t P1 = g.mod_b1().convert_to<std::uint64_t>();
  const std::uint64_t P2 = g.mod_b2().convert_to<std::uint64_t>();
  const std::uint64_t M = g.mod_a().convert_to<std::uint64_t>();
  const std::uint64_t r1 = g.r1().convert_to<std::uint64_t>(), r2 = g.r2().convert_to<std::uint64_t>();
  const std::uint64_t w1 = g.wrap1().convert_to<std::uint64_t>(), w2 = g.wrap2().convert_to<std::uint64_t>();

  // r^y and 1 + r + ... + r^{y-1} modulo M are periodic in y with period M.
  std::vector<std::uint64_t> rp1(M), s1(M), rp2(M), s2(M);
  std::uint64_t a1 = 1 % M, b1 = 0, a2 = 1 % M, b2 = 0;
  for (std::uint64_t y = 0; y < M; ++y) {
    rp1[y] = a1;
    s1[y] = b1;
    rp2[y] = a2;
    s2[y] = b2;
    b1 = (b1 + a1) % M;
    a1 = a1 * r1 % M;
    b2 = (b2 + a2) % M;
    a2 = a2 * r2 % M;
  }

  FiniteGroup fg;
  fg.p_ = g.p();
  fg.n_ = P1 * P2 * M;
  fg.table_.resize(fg.n_ * fg.n_);
  fg.identity_ = 0;
  fg.gens_ = {static_cast<Elem>(P2 * M), static_cast<Elem>(M)};
  fg.source_ = g;
  const std::size_t n = fg.n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t z = i % M, x2 = (i / M) % P2, x1 = i / (M * P2);
    std::uint16_t* row = &fg.table_[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t w = j % M, y2 = (j / M) % P2, y1 = j / (M * P2);
      std::uint64_t Z = ((s1[y1 % M] * s2[x2 % M] + z * rp1[y1 % M]) % M * rp2[y2 % M] + w) % M;
      std::uint64_t X1 = x1 + y1, X2 = x2 + y2;
      if (X1 >= P1) {
        X1 -= P1;
        Z = (Z + w1 * rp2[X2 % M]) % M;
      }
      if (X2 >= P2) {
        X2 -= P2;
        Z = (Z + w2) % M;
      }
      row[j] = static_cast<std::uint16_t>((X1 * P2 + X2) * M + Z);
    }
  }
  fg.finish();
  return fg;
}

FiniteGroup::FiniteGroup(unsigned p, std::size_t n, std::vector<std::uint16_t> table, Elem identity,
                         std::vector<Elem> gens)
    : p_(p), n_(n), table_(std::move(table)), identity_(identity), gens_(std::move(gens)) {
  if (table_.size() != n_ * n_) throw DimensionMismatch("multiplication table has the wrong size");
  finish();
}

void FiniteGroup::finish() {
  inv_.assign(n_, identity_);
  std::vector<char> done(n_, 0);
  std::vector<Elem> cyc;
  for (Elem g = 0; g < n_; ++g) {
    if (done[g]) continue;
    cyc.clear();
    Elem h = g;
    do {
      cyc.push_back(h);
      h = mul(h, g);
    } while (h != g);
    // cyc[k] = g^{k+1}; cyc.back() is the identity
    const std::size_t ord = cyc.size();
    for (std::size_t k = 0; k < ord; ++k) {
      const Elem x = cyc[k];
      const std::size_t e = k + 1;
      inv_[x] = e == ord ? identity_ : cyc[ord - e - 1];
      done[x] = 1;
    }
  }
}

unsigned FiniteGroup::order_exponent() const { return log_p(n_, p_); }

Elem FiniteGroup::pow(Elem g, std::uint64_t n) const {
  Elem r = identity_, b = g;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

std::uint64_t FiniteGroup::order_of(Elem g) const {
  std::uint64_t k = 1;
  while (g != identity_) {
    g = pow(g, p_);
    k *= p_;
  }
  return k;
}

GroupElement FiniteGroup::element(Elem i) const {
  if (!source_) throw std::logic_error("group has no normal-form labels");
  const std::uint64_t M = source_->mod_a().convert_to<std::uint64_t>();
  const std::uint64_t P2 = source_->mod_b2().convert_to<std::uint64_t>();
  if (!label_.empty()) i = label_[i];
  return {i / (M * P2), (i / M) % P2, i % M};
}

Elem FiniteGroup::index_of(const GroupElement& g) const {
  if (!source_) throw std::logic_error("group has no normal-form labels");
  if (!source_->contains(g)) throw std::out_of_range("element not in normal form: " + to_string(g));
  const std::uint64_t M = source_->mod_a().convert_to<std::uint64_t>();
  const std::uint64_t P2 = source_->mod_b2().convert_to<std::uint64_t>();
  const auto i = static_cast<Elem>((g.x1.convert_to<std::uint64_t>() * P2 + g.x2.convert_to<std::uint64_t>()) * M +
                                   g.z.convert_to<std::uint64_t>());
  return unlabel_.empty() ? i : unlabel_[i];
}

FiniteGroup FiniteGroup::relabeled(const std::vector<Elem>& perm) const {
  if (perm.size() != n_) throw DimensionMismatch("permutation has the wrong size");
  std::vector<Elem> back(n_, static_cast<Elem>(-1));
  for (Elem i = 0; i < n_; ++i) {
    if (perm[i] >= n_ || back[perm[i]] != static_cast<Elem>(-1)) throw std::invalid_argument("not a permutation");
    back[perm[i]] = i;
  }
  FiniteGroup fg;
  fg.p_ = p_;
  fg.n_ = n_;
  fg.table_.resize(n_ * n_);
  for (Elem i = 0; i < n_; ++i)
    for (Elem j = 0; j < n_; ++j) fg.table_[i * n_ + j] = static_cast<std::uint16_t>(back[mul(perm[i], perm[j])]);
  fg.identity_ = back[identity_];
  for (Elem g : gens_) fg.gens_.push_back(back[g]);
  fg.source_ = source_;
  if (source_) {
    fg.label_.resize(n_);
    fg.unlabel_.resize(n_);
    for (Elem i = 0; i < n_; ++i) {
      const Elem natural = label_.empty() ? perm[i] : label_[perm[i]];
      fg.label_[i] = natural;
      fg.unlabel_[natural] = i;
    }
  }
  fg.finish();
  return fg;
}

Subgroup FiniteGroup::closure(const std::vector<Elem>& gens) const {
  Subgroup h;
  h.mask.assign(n_, 0);
  h.elements.push_back(identity_);
  h.mask[identity_] = 1;
  for (Elem s : gens)
    if (s != identity_ && std::find(h.gens.begin(), h.gens.end(), s) == h.gens.end()) h.gens.push_back(s);
  for (std::size_t i = 0; i < h.elements.size(); ++i) {
    const Elem x = h.elements[i];
    for (Elem s : h.gens) {
      const Elem y = mul(x, s);
      if (!h.mask[y]) {
        h.mask[y] = 1;
        h.elements.push_back(y);
      }
    }
  }
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

namespace {

// Subgroup generated by `set`, choosing generators greedily.
Subgroup generated_by(const FiniteGroup& g, const std::vector<Elem>& set) {
  Subgroup h = g.trivial();
  std::vector<Elem> gens;
  for (Elem x : set) {
    if (h.contains(x)) continue;
    gens.push_back(x);
    h = g.closure(gens);
  }
  return h;
}

std::vector<Elem> mask_elements(const std::vector<char>& mask) {
  std::vector<Elem> out;
  for (Elem i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace

Subgroup FiniteGroup::normal_closure(const std::vector<Elem>& gens) const {
  Subgroup h = generated_by(*this, gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < h.gens.size() && !changed; ++i)
      for (Elem s : gens_) {
        const Elem c = conjugate(h.gens[i], s);
        if (!h.contains(c)) {
          std::vector<Elem> more = h.gens;
          more.push_back(c);
          h = closure(more);
          changed = true;
          break;
        }
      }
  }
  return h;
}

Subgroup FiniteGroup::whole() const { return closure(gens_); }

Subgroup FiniteGroup::trivial() const { return closure({}); }

Subgroup FiniteGroup::join(const Subgroup& a, const Subgroup& b) const {
  std::vector<Elem> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return generated_by(*this, gens);
}

Subgroup FiniteGroup::intersection(const Subgroup& a, const Subgroup& b) const {
  std::vector<Elem> common;
  for (Elem x : a.elements)
    if (b.contains(x)) common.push_back(x);
  return generated_by(*this, common);
}

Subgroup FiniteGroup::commutator_subgroup(const Subgroup& a, const Subgroup& b) const {
  std::vector<char> seen(n_, 0);
  std::vector<Elem> set;
  for (Elem x : a.elements)
    for (Elem y : b.gens) {
      const Elem c = commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        set.push_back(c);
      }
    }
  return normal_closure(generated_by(*this, set).gens);
}

Subgroup FiniteGroup::power_subgroup(const Subgroup& h, unsigned j) const {
  const std::uint64_t e = upow(p_, j);
  std::vector<char> seen(n_, 0);
  std::vector<Elem> set;
  for (Elem x : h.elements) {
    const Elem y = pow(x, e);
    if (!seen[y]) {
      seen[y] = 1;
      set.push_back(y);
    }
  }
  return generated_by(*this, set);
}

Subgroup FiniteGroup::omega(unsigned n, const Subgroup& normal) const {
  const std::uint64_t e = upow(p_, n);
  std::vector<Elem> set;
  for (Elem x = 0; x < n_; ++x)
    if (normal.contains(pow(x, e))) set.push_back(x);
  return generated_by(*this, set);
}

Subgroup FiniteGroup::center() const { return centralizer(gens_); }

Subgroup FiniteGroup::centralizer(const std::vector<Elem>& set) const {
  std::vector<char> mask(n_, 0);
  for (Elem x = 0; x < n_; ++x) {
    bool ok = true;
    for (Elem s : set)
      if (mul(x, s) != mul(s, x)) {
        ok = false;
        break;
      }
    mask[x] = ok;
  }
  return generated_by(*this, mask_elements(mask));
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
  for (Elem x : h.gens)
    for (Elem s : gens_)
      if (!h.contains(conjugate(x, s))) return false;
  return true;
}

std::vector<std::vector<Elem>> FiniteGroup::conjugacy_classes() const {
  std::vector<char> done(n_, 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem g = 0; g < n_; ++g) {
    if (done[g]) continue;
    std::vector<Elem> cls{g};
    done[g] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem s : gens_) {
        const Elem c = conjugate(cls[i], s);
        if (!done[c]) {
          done[c] = 1;
          cls.push_back(c);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Subgroup> FiniteGroup::lower_central_series() const {
  std::vector<Subgroup> series{whole()};
  const Subgroup g = series.front();
  while (!series.back().is_trivial()) {
    Subgroup next = commutator_subgroup(series.back(), g);
    if (next.size() == series.back().size()) throw std::logic_error("lower central series stalls: not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<Subgroup> FiniteGroup::relative_lower_central_series(const Subgroup& normal, std::size_t count) const {
  std::vector<Subgroup> series{whole()};
  while (series.size() < count && !series.back().is_trivial())
    series.push_back(commutator_subgroup(series.back(), normal));
  return series;
}

std::vector<Subgroup> FiniteGroup::jennings_series() const {
  // D_n = [D_{n-1}, G] D_{ceil(n/p)}^p
  std::vector<Subgroup> d{whole()};
  const Subgroup g = d.front();
  while (!d.back().is_trivial()) {
    const std::size_t n = d.size() + 1;
    const std::size_t c = (n + p_ - 1) / p_;
    d.push_back(join(commutator_subgroup(d.back(), g), power_subgroup(d[c - 1], 1)));
  }
  return d;
}

std::pair<FiniteGroup, std::vector<Elem>> FiniteGroup::quotient(const Subgroup& normal) const {
  std::vector<Elem> label(n_, std::numeric_limits<Elem>::max());
  std::vector<Elem> reps;
  for (Elem g = 0; g < n_; ++g) {
    if (label[g] != std::numeric_limits<Elem>::max()) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(g);
    for (Elem x : normal.elements) label[mul(g, x)] = id;
  }
  const std::size_t k = reps.size();
  std::vector<std::uint16_t> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = static_cast<std::uint16_t>(label[mul(reps[i], reps[j])]);
  std::vector<Elem> gens;
  for (Elem s : gens_)
    if (label[s] != label[identity_]) gens.push_back(label[s]);
  return {FiniteGroup(p_, k, std::move(table), label[identity_], std::move(gens)), std::move(label)};
}

std::pair<FiniteGroup, std::vector<Elem>> FiniteGroup::as_group(const Subgroup& h) const {
  std::vector<Elem> local(n_, 0);
  for (Elem i = 0; i < h.elements.size(); ++i) local[h.elements[i]] = i;
  const std::size_t k = h.elements.size();
  std::vector<std::uint16_t> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = static_cast<std::uint16_t>(local[mul(h.elements[i], h.elements[j])]);
  std::vector<Elem> gens;
  for (Elem s : h.gens) gens.push_back(local[s]);
  return {FiniteGroup(p_, k, std::move(table), local[identity_], std::move(gens)), h.elements};
}

namespace {

std::vector<unsigned> weights_from_series(const FiniteGroup& g, const std::vector<Subgroup>& d) {
  std::vector<unsigned> w(g.size(), 0);
  for (unsigned i = 0; i < d.size(); ++i)
    for (Elem x : d[i].elements) w[x] = i + 1;
  return w;
}

std::vector<Elem> order_or_default(const FiniteGroup& g, const std::vector<Elem>& priority) {
  if (!priority.empty()) return priority;
  std::vector<Elem> all(g.size());
  std::iota(all.begin(), all.end(), Elem{0});
  return all;
}

}  // namespace

JenningsSet jennings_set(const FiniteGroup& g, const std::vector<Elem>& priority) {
  const std::vector<Subgroup> d = g.jennings_series();
  const std::vector<Elem> order = order_or_default(g, priority);
  JenningsSet out;
  for (unsigned i = 0; i + 1 < d.size(); ++i) {
    if (d[i].size() == d[i + 1].size()) continue;
    Subgroup h = d[i + 1];
    std::vector<Elem> gens = h.gens;
    for (Elem x : order) {
      if (h.size() == d[i].size()) break;
      if (!d[i].contains(x) || h.contains(x)) continue;
      gens.push_back(x);
      h = g.closure(gens);
      out.elements.push_back(x);
      out.weights.push_back(i + 1);
    }
  }
  return out;
}

JenningsSet jennings_set_compatible(const FiniteGroup& g, const Subgroup& normal, const std::vector<Elem>& priority) {
  if (normal.is_trivial()) return jennings_set(g, priority);
  const std::vector<Elem> order = order_or_default(g, priority);
  const Subgroup z = g.center();
  Elem l = g.identity();
  for (Elem x : order)
    if (x != g.identity() && z.contains(x) && normal.contains(x)) {
      l = x;
      break;
    }
  if (l == g.identity()) throw std::logic_error("normal subgroup meets the center trivially");
  while (g.pow(l, g.p()) != g.identity()) l = g.pow(l, g.p());
  const Subgroup L = g.closure({l});

  auto [q, proj] = g.quotient(L);
  std::vector<char> seen(q.size(), 0);
  std::vector<Elem> qorder, ngens;
  for (Elem x : order)
    if (!seen[proj[x]]) {
      seen[proj[x]] = 1;
      qorder.push_back(proj[x]);
    }
  for (Elem x : normal.gens) ngens.push_back(proj[x]);
  const Subgroup qn = q.closure(ngens);
  const JenningsSet qs = jennings_set_compatible(q, qn, qorder);

  const std::vector<unsigned> wg = weights_from_series(g, g.jennings_series());
  auto [ng, emb] = g.as_group(normal);
  const std::vector<unsigned> wn_local = weights_from_series(ng, ng.jennings_series());
  std::vector<unsigned> wn(g.size(), 0);
  for (Elem i = 0; i < emb.size(); ++i) wn[emb[i]] = wn_local[i];

  // coset members of each quotient element, in priority order
  std::vector<std::vector<Elem>> members(q.size());
  for (Elem x : order) members[proj[x]].push_back(x);

  JenningsSet out;
  for (Elem s : qs.elements) {
    Elem best = members[s].front();
    for (Elem x : members[s]) {
      const bool in_n = normal.contains(x), best_in_n = normal.contains(best);
      if (std::tuple(in_n, wg[x], wn[x]) > std::tuple(best_in_n, wg[best], wn[best])) best = x;
    }
    out.elements.push_back(best);
  }
  out.elements.push_back(l);
  std::vector<std::size_t> idx(out.elements.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return wg[out.elements[i]] < wg[out.elements[j]]; });
  JenningsSet sorted;
  for (std::size_t i : idx) {
    sorted.elements.push_back(out.elements[i]);
    sorted.weights.push_back(wg[out.elements[i]]);
  }
  return sorted;
}

bool is_jennings_set(const FiniteGroup& g, const JenningsSet& set, const Subgroup* h) {
  if (h) {
    auto [hg, emb] = g.as_group(*h);
    std::vector<Elem> local(g.size(), 0);
    for (Elem i = 0; i < emb.size(); ++i) local[emb[i]] = i;
    JenningsSet restricted;
    for (Elem x : set.elements)
      if (h->contains(x)) {
        restricted.elements.push_back(local[x]);
        restricted.weights.push_back(0);
      }
    return is_jennings_set(hg, restricted, nullptr);
  }
  const std::vector<Subgroup> d = g.jennings_series();
  const std::vector<unsigned> w = weights_from_series(g, d);
  std::size_t total = 0;
  for (unsigned i = 0; i + 1 < d.size(); ++i) {
    std::vector<Elem> gens = d[i + 1].gens;
    std::size_t count = 0;
    for (Elem x : set.elements)
      if (w[x] == i + 1) {
        gens.push_back(x);
        ++count;
      }
    const unsigned layer = log_p(d[i].size() / d[i + 1].size(), g.p());
    if (count != layer) return false;
    if (g.closure(gens).size() != d[i].size()) return false;
    total += count;
  }
  return total == set.elements.size();
}

}  // namespace modiso
