#include "modiso/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "modiso/errors.hpp"

namespace modiso {

namespace {

template <unsigned P>
void axpy_fixed(std::uint8_t* a, const std::uint8_t* b, unsigned c, std::size_t len) {
  const std::uint16_t cc = static_cast<std::uint16_t>(c);
  for (std::size_t i = 0; i < len; ++i) a[i] = static_cast<std::uint8_t>((a[i] + cc * b[i]) % P);
}

void axpy_generic(std::uint8_t* a, const std::uint8_t* b, unsigned c, unsigned p, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) a[i] = static_cast<std::uint8_t>((a[i] + c * b[i]) % p);
}

unsigned inverse_mod(unsigned x, unsigned p) {
  for (unsigned y = 1; y < p; ++y)
    if (x * y % p == 1) return y;
  throw std::logic_error("no inverse mod p");
}

void scale_in_place(Vec& v, unsigned c, unsigned p, std::size_t from) {
  for (std::size_t i = from; i < v.size(); ++i) v[i] = static_cast<std::uint8_t>(v[i] * c % p);
}

std::size_t first_nonzero(const Vec& v, std::size_t from = 0) {
  for (std::size_t i = from; i < v.size(); ++i)
    if (v[i]) return i;
  return v.size();
}

}  // namespace

Subspace kernel_of(unsigned p, std::size_t len, const std::vector<Vec>& images) {
  const std::size_t k = images.size();
  EchelonBuilder b(p, len + k);
  for (std::size_t i = 0; i < k; ++i) {
    Vec row(len + k, 0);
    std::copy(images[i].begin(), images[i].end(), row.begin());
    row[len + i] = 1;
    b.add(std::move(row));
  }
  const Subspace all = std::move(b).finish();
  std::vector<Vec> tails;
  for (std::size_t r = 0; r < all.dim(); ++r)
    if (all.pivots()[r] >= len) tails.emplace_back(all.rows()[r].begin() + static_cast<std::ptrdiff_t>(len), all.rows()[r].end());
  return Subspace::from_rref(p, k, std::move(tails));
}

namespace {

std::vector<Elem> transversal_right(const FiniteGroup& g, const Subgroup& n) {
  // representatives of the right cosets N t
  std::vector<char> seen(g.size(), 0);
  std::vector<Elem> reps;
  for (Elem t = 0; t < g.size(); ++t) {
    if (seen[t]) continue;
    reps.push_back(t);
    for (Elem x : n.elements) seen[g.mul(x, t)] = 1;
  }
  return reps;
}

}  // namespace

void axpy(Vec& a, const Vec& b, unsigned c, unsigned p, std::size_t from) {
  c %= p;
  if (c == 0 || from >= a.size()) return;
  std::uint8_t* pa = a.data() + from;
  const std::uint8_t* pb = b.data() + from;
  const std::size_t len = a.size() - from;
  switch (p) {
    case 2: axpy_fixed<2>(pa, pb, c, len); break;
    case 3: axpy_fixed<3>(pa, pb, c, len); break;
    case 5: axpy_fixed<5>(pa, pb, c, len); break;
    case 7: axpy_fixed<7>(pa, pb, c, len); break;
    case 11: axpy_fixed<11>(pa, pb, c, len); break;
    case 13: axpy_fixed<13>(pa, pb, c, len); break;
    default: axpy_generic(pa, pb, c, p, len);
  }
}

// ---- EchelonBuilder ----

EchelonBuilder::EchelonBuilder(const Subspace& start) : p_(start.p_), n_(start.n_) {
  rows_ = start.rows_;
  lead_ = start.pivots_;
}

bool EchelonBuilder::add(Vec v) {
  if (v.size() != n_) throw DimensionMismatch("vector length differs from the ambient dimension");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t l = lead_[i];
    if (v[l]) axpy(v, rows_[i], p_ - v[l], p_, l);
  }
  const std::size_t l = first_nonzero(v);
  if (l == n_) return false;
  if (v[l] != 1) scale_in_place(v, inverse_mod(v[l], p_), p_, l);
  rows_.push_back(std::move(v));
  lead_.push_back(l);
  return true;
}

Subspace EchelonBuilder::finish() && {
  const std::size_t k = rows_.size();
  for (std::size_t j = k; j-- > 0;) {
    const std::size_t l = lead_[j];
    for (std::size_t i = 0; i < j; ++i)
      if (rows_[i][l]) axpy(rows_[i], rows_[j], p_ - rows_[i][l], p_, l);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lead_[a] < lead_[b]; });
  Subspace s(p_, n_);
  s.rows_.reserve(k);
  s.pivots_.reserve(k);
  for (std::size_t i : order) {
    s.rows_.push_back(std::move(rows_[i]));
    s.pivots_.push_back(lead_[i]);
  }
  rows_.clear();
  lead_.clear();
  return s;
}

// ---- Subspace ----

Subspace Subspace::span(unsigned p, std::size_t ambient, std::vector<Vec> vectors) {
  EchelonBuilder b(p, ambient);
  for (auto& v : vectors) b.add(std::move(v));
  return std::move(b).finish();
}

Subspace Subspace::full(unsigned p, std::size_t ambient) {
  Subspace s(p, ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vec v(ambient, 0);
    v[i] = 1;
    s.rows_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::from_rref(unsigned p, std::size_t ambient, std::vector<Vec> rows) {
  Subspace s(p, ambient);
  for (auto& r : rows) {
    if (r.size() != ambient) throw DimensionMismatch("row length differs from the ambient dimension");
    const std::size_t l = first_nonzero(r);
    assert(l < ambient && r[l] == 1);
    assert(s.pivots_.empty() || s.pivots_.back() < l);
    s.pivots_.push_back(l);
    s.rows_.push_back(std::move(r));
  }
  return s;
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != n_) throw DimensionMismatch("vector length differs from the ambient dimension");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t l = pivots_[i];
    if (v[l]) axpy(v, rows_[i], p_ - v[l], p_, l);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const {
  const Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& w) const {
  if (w.n_ != n_) throw DimensionMismatch("subspaces of different ambient spaces");
  if (w.dim() > dim()) return false;
  return std::all_of(w.rows_.begin(), w.rows_.end(), [&](const Vec& r) { return contains(r); });
}

std::vector<std::uint8_t> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw std::invalid_argument("vector not in subspace");
  std::vector<std::uint8_t> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::sum(const Subspace& w) const {
  if (w.n_ != n_) throw DimensionMismatch("subspaces of different ambient spaces");
  EchelonBuilder b(*this);
  for (const auto& r : w.rows_) b.add(r);
  return std::move(b).finish();
}

Subspace Subspace::intersect(const Subspace& w) const {
  if (w.n_ != n_) throw DimensionMismatch("subspaces of different ambient spaces");
  // remainders vanish on our pivot columns; keep only the others
  std::vector<char> is_pivot(n_, 0);
  for (auto l : pivots_) is_pivot[l] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t i = 0; i < n_; ++i)
    if (!is_pivot[i]) free_cols.push_back(i);
  std::vector<Vec> rem;
  rem.reserve(w.dim());
  for (const auto& r : w.rows_) {
    const Vec full = reduce(r);
    Vec short_row(free_cols.size());
    for (std::size_t i = 0; i < free_cols.size(); ++i) short_row[i] = full[free_cols[i]];
    rem.push_back(std::move(short_row));
  }
  const Subspace ker = kernel_of(p_, free_cols.size(), rem);
  std::vector<Vec> out;
  for (const auto& c : ker.rows()) {
    Vec v(n_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) axpy(v, w.rows_[i], c[i], p_);
    out.push_back(std::move(v));
  }
  return span(p_, n_, std::move(out));
}

std::string Subspace::dump() const {
  std::string s;
  s.reserve(rows_.size() * (n_ + 1));
  for (const auto& r : rows_) {
    for (auto x : r) s.push_back(static_cast<char>(x < 10 ? '0' + x : 'a' + x - 10));
    s.push_back('\n');
  }
  return s;
}

// ---- Subquotient ----

Subquotient::Subquotient(Subspace top, Subspace bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
  if (!top_.contains(bottom_)) throw std::invalid_argument("subquotient: bottom not contained in top");
  std::vector<Vec> rem;
  for (const auto& r : top_.rows()) rem.push_back(bottom_.reduce(r));
  Subspace c = Subspace::span(top_.p(), top_.ambient(), std::move(rem));
  complement_ = c.rows();
  complement_pivots_ = c.pivots();
}

std::vector<std::uint8_t> Subquotient::coordinates(const Vec& v) const {
  Vec r = bottom_.reduce(v);
  std::vector<std::uint8_t> c(complement_.size());
  const unsigned p = top_.p();
  for (std::size_t i = 0; i < complement_.size(); ++i) {
    c[i] = r[complement_pivots_[i]];
    if (c[i]) axpy(r, complement_[i], p - c[i], p);
  }
  if (std::any_of(r.begin(), r.end(), [](std::uint8_t x) { return x != 0; }))
    throw std::invalid_argument("vector not in the top of the subquotient");
  return c;
}

bool Subquotient::is_zero(const Vec& v) const { return bottom_.contains(v); }

// ---- GroupAlgebra ----

GroupAlgebra::GroupAlgebra(const FiniteGroup& g, std::size_t cap) : g_(&g), p_(g.p()), n_(g.size()) {
  if (n_ > cap)
    throw ResourceCap("group algebra of dimension " + std::to_string(n_) + " exceeds the cap " + std::to_string(cap));
}

Vec GroupAlgebra::basis(Elem g) const {
  Vec v(n_, 0);
  v[g] = 1;
  return v;
}

Vec GroupAlgebra::aug(Elem g) const {
  Vec v(n_, 0);
  if (g == g_->identity()) return v;
  v[g] = 1;
  v[g_->identity()] = static_cast<std::uint8_t>(p_ - 1);
  return v;
}

Vec GroupAlgebra::add(const Vec& u, const Vec& v) const {
  if (u.size() != n_ || v.size() != n_) throw DimensionMismatch("algebra element of wrong length");
  Vec r = u;
  axpy(r, v, 1, p_);
  return r;
}

Vec GroupAlgebra::sub(const Vec& u, const Vec& v) const {
  if (u.size() != n_ || v.size() != n_) throw DimensionMismatch("algebra element of wrong length");
  Vec r = u;
  axpy(r, v, p_ - 1, p_);
  return r;
}

Vec GroupAlgebra::scale(unsigned c, const Vec& u) const {
  Vec r = u;
  scale_in_place(r, c % p_, p_, 0);
  return r;
}

Vec GroupAlgebra::mul(const Vec& u, const Vec& v) const {
  if (u.size() != n_ || v.size() != n_) throw DimensionMismatch("algebra element of wrong length");
  std::vector<std::uint32_t> acc(n_, 0);
  std::vector<Elem> supp;
  for (Elem j = 0; j < n_; ++j)
    if (v[j]) supp.push_back(j);
  for (Elem i = 0; i < n_; ++i) {
    if (!u[i]) continue;
    const std::uint32_t c = u[i];
    for (Elem j : supp) acc[g_->mul(i, j)] += c * v[j];
  }
  Vec r(n_);
  for (std::size_t k = 0; k < n_; ++k) r[k] = static_cast<std::uint8_t>(acc[k] % p_);
  return r;
}

Vec GroupAlgebra::pow(const Vec& u, const BigInt& n) const {
  if (n < 0) throw std::invalid_argument("negative exponent");
  Vec result = one();
  Vec base = u;
  BigInt e = n;
  while (e > 0) {
    if (bit_test(e, 0)) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Vec GroupAlgebra::left_mul(Elem g, const Vec& v) const {
  Vec r(n_, 0);
  for (Elem h = 0; h < n_; ++h)
    if (v[h]) r[g_->mul(g, h)] = v[h];
  return r;
}

Vec GroupAlgebra::right_mul(const Vec& v, Elem g) const {
  Vec r(n_, 0);
  for (Elem h = 0; h < n_; ++h)
    if (v[h]) r[g_->mul(h, g)] = v[h];
  return r;
}

Vec GroupAlgebra::left_mul_aug(Elem s, const Vec& v) const {
  Vec r = left_mul(s, v);
  axpy(r, v, p_ - 1, p_);
  return r;
}

Vec GroupAlgebra::right_mul_aug(const Vec& v, Elem s) const {
  Vec r = right_mul(v, s);
  axpy(r, v, p_ - 1, p_);
  return r;
}

Vec GroupAlgebra::class_sum(const std::vector<Elem>& cls) const {
  Vec v(n_, 0);
  for (Elem g : cls) v[g] = static_cast<std::uint8_t>((v[g] + 1) % p_);
  return v;
}

// ---- ideals ----

Subspace left_aug_product(const GroupAlgebra& A, const std::vector<Elem>& gens, const Subspace& x) {
  EchelonBuilder b(A.p(), A.dim());
  for (Elem s : gens)
    for (const auto& r : x.rows()) b.add(A.left_mul_aug(s, r));
  return std::move(b).finish();
}

Subspace right_aug_product(const GroupAlgebra& A, const Subspace& x, const std::vector<Elem>& gens) {
  EchelonBuilder b(A.p(), A.dim());
  for (Elem s : gens)
    for (const auto& r : x.rows()) b.add(A.right_mul_aug(r, s));
  return std::move(b).finish();
}

Subspace product(const GroupAlgebra& A, const Subspace& x, const Subspace& y) {
  EchelonBuilder b(A.p(), A.dim());
  for (const auto& u : x.rows())
    for (const auto& v : y.rows()) {
      if (b.dim() == A.dim()) break;
      b.add(A.mul(u, v));
    }
  return std::move(b).finish();
}

Subspace ideal_of(const GroupAlgebra& A, const Subgroup& n) {
  const FiniteGroup& g = A.group();
  std::vector<std::pair<std::size_t, Vec>> rows;
  for (Elem t : transversal_right(g, n)) {
    std::vector<Elem> coset;
    for (Elem x : n.elements) coset.push_back(g.mul(x, t));
    std::sort(coset.begin(), coset.end());
    const Elem last = coset.back();
    for (std::size_t i = 0; i + 1 < coset.size(); ++i) {
      Vec v(A.dim(), 0);
      v[coset[i]] = 1;
      v[last] = static_cast<std::uint8_t>(A.p() - 1);
      rows.emplace_back(coset[i], std::move(v));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.second));
  return Subspace::from_rref(A.p(), A.dim(), std::move(out));
}

Subspace augmentation_power_closure(const GroupAlgebra& A, unsigned n) {
  if (n == 0) return Subspace::full(A.p(), A.dim());
  const FiniteGroup& g = A.group();
  Subspace x = ideal_of(A, g.whole());
  for (unsigned i = 1; i < n && x.dim() > 0; ++i) x = left_aug_product(A, g.generators(), x);
  return x;
}

JenningsData jennings_data(const GroupAlgebra& A, const JenningsSet& set) {
  JenningsData j;
  j.set = set;
  const unsigned p = A.p();
  j.exps.push_back({});
  j.weight.push_back(0);
  j.monomials.push_back(A.one());
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    const std::size_t count = j.monomials.size();
    for (std::size_t k = 0; k < count; ++k) {
      Vec cur = j.monomials[k];
      for (unsigned e = 1; e < p; ++e) {
        cur = A.right_mul_aug(cur, set.elements[i]);
        auto ex = j.exps[k];
        ex.resize(set.elements.size(), 0);
        ex[i] = static_cast<std::uint8_t>(e);
        j.exps.push_back(std::move(ex));
        j.weight.push_back(j.weight[k] + e * set.weights[i]);
        j.monomials.push_back(cur);
      }
    }
  }
  for (auto& ex : j.exps) ex.resize(set.elements.size(), 0);
  j.max_weight = *std::max_element(j.weight.begin(), j.weight.end());
  return j;
}

JenningsData jennings_data(const GroupAlgebra& A, const Subgroup& n, const std::vector<Elem>& priority) {
  const FiniteGroup& g = A.group();
  auto [h, emb] = g.as_group(n);
  std::vector<Elem> local(g.size(), static_cast<Elem>(-1));
  for (Elem i = 0; i < emb.size(); ++i) local[emb[i]] = i;
  std::vector<Elem> prio;
  for (Elem x : priority)
    if (n.contains(x)) prio.push_back(local[x]);
  JenningsSet s = jennings_set(h, prio);
  for (auto& x : s.elements) x = emb[x];
  return jennings_data(A, s);
}

JenningsData jennings_data_compatible(const GroupAlgebra& A, const Subgroup& n, const std::vector<Elem>& priority) {
  return jennings_data(A, jennings_set_compatible(A.group(), n, priority));
}

Subspace monomial_span(const GroupAlgebra& A, const JenningsData& j, unsigned n) {
  EchelonBuilder b(A.p(), A.dim());
  for (std::size_t k = 0; k < j.monomials.size(); ++k)
    if (j.weight[k] >= n) b.add(j.monomials[k]);
  return std::move(b).finish();
}

Subspace augmentation_power(const GroupAlgebra& A, unsigned n) {
  if (n == 0) return Subspace::full(A.p(), A.dim());
  return monomial_span(A, jennings_data(A, jennings_set(A.group())), n);
}

Subspace relative_power_kg(const GroupAlgebra& A, const Subgroup& n, unsigned k) {
  if (k == 0) return Subspace::full(A.p(), A.dim());
  const JenningsData j = jennings_data(A, n);
  EchelonBuilder b(A.p(), A.dim());
  for (Elem t : transversal_right(A.group(), n))
    for (std::size_t i = 0; i < j.monomials.size(); ++i)
      if (j.weight[i] >= k) b.add(A.right_mul(j.monomials[i], t));
  return std::move(b).finish();
}

Subspace relative_power_times_aug(const GroupAlgebra& A, const Subgroup& n, unsigned k) {
  // I(N)^k I(G) = Σ_s I(N)^k kG (s - 1)
  return right_aug_product(A, relative_power_kg(A, n, k), A.group().generators());
}

Subspace aug_times_relative_power(const GroupAlgebra& A, const Subgroup& n, unsigned k) {
  return left_aug_product(A, A.group().generators(), relative_power_kg(A, n, k));
}

Subspace relative_power_times_ideal(const GroupAlgebra& A, const Subgroup& n, unsigned k, const Subgroup& l) {
  return right_aug_product(A, relative_power_kg(A, n, k), l.gens);
}

Subspace relative_ideal(const GroupAlgebra& A, const Subgroup& n, unsigned k, IdealMode mode) {
  if (k < 1) throw std::invalid_argument("relative ideal needs n >= 1");
  if (mode == IdealMode::Series) {
    const auto gam = A.group().relative_lower_central_series(n, k);
    Subspace total(A.p(), A.dim());
    for (unsigned i = 1; i <= k && i <= gam.size(); ++i)
      if (!gam[i - 1].is_trivial()) total = total.sum(relative_power_times_ideal(A, n, k + 1 - i, gam[i - 1]));
    return total;
  }
  if (mode == IdealMode::Recursive) {
    Subspace j = relative_power_times_aug(A, n, 1);
    for (unsigned i = 1; i < k && j.dim() > 0; ++i)
      j = left_aug_product(A, n.gens, j).sum(right_aug_product(A, j, n.gens));
    return j;
  }
  Subspace total = relative_power_times_aug(A, n, k);
  Subspace right = ideal_of(A, A.group().whole());
  for (unsigned i = 1; i < k; ++i) {
    right = right_aug_product(A, right, n.gens);  // I(G) I(N)^i
    Subspace term = right;
    for (unsigned t = 0; t < k - i && term.dim() > 0; ++t) term = left_aug_product(A, n.gens, term);
    total = total.sum(term);
  }
  return total;
}

Subspace center_of_algebra(const GroupAlgebra& A) {
  std::vector<Vec> sums;
  for (const auto& cls : A.group().conjugacy_classes()) sums.push_back(A.class_sum(cls));
  return Subspace::span(A.p(), A.dim(), std::move(sums));
}

Subspace commutant(const GroupAlgebra& A) {
  const FiniteGroup& g = A.group();
  const auto& gens = g.generators();
  const std::size_t n = A.dim();
  std::vector<Vec> images;
  images.reserve(n);
  for (Elem x = 0; x < n; ++x) {
    Vec img(n * gens.size(), 0);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Elem xb = g.mul(x, gens[s]);
      const Elem bx = g.mul(gens[s], x);
      if (xb == bx) continue;
      img[s * n + xb] = 1;
      img[s * n + bx] = static_cast<std::uint8_t>(A.p() - 1);
    }
    images.push_back(std::move(img));
  }
  return kernel_of(A.p(), n * gens.size(), images);
}

Subspace center_of_augmentation(const GroupAlgebra& A) {
  const FiniteGroup& g = A.group();
  std::vector<Vec> vs;
  for (const auto& cls : g.conjugacy_classes()) {
    if (cls.size() == 1) {
      if (cls[0] != g.identity()) vs.push_back(A.aug(cls[0]));
    } else {
      vs.push_back(A.class_sum(cls));
    }
  }
  return Subspace::span(A.p(), A.dim(), std::move(vs));
}

Subgroup group_points(const GroupAlgebra& A, const Subspace& v) {
  const FiniteGroup& g = A.group();
  std::vector<Elem> pts;
  for (Elem x = 0; x < g.size(); ++x)
    if (x == g.identity() || v.contains(A.aug(x))) pts.push_back(x);
  Subgroup s = g.closure(pts);
  if (s.size() != pts.size()) throw std::logic_error("group points do not form a subgroup");
  return s;
}

Subgroup dimension_subgroup_algebra(const GroupAlgebra& A, unsigned n) {
  return group_points(A, augmentation_power(A, n));
}

}  // namespace modiso
