#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modiso/arith.hpp"
#include "modiso/finite_group.hpp"

namespace modiso {

/// Default bound on the dimension of a materialized group algebra.
inline constexpr std::size_t kDefaultAlgebraCap = 3000;

/// Coefficients over F_p indexed by group element.
using Vec = std::vector<std::uint8_t>;

/// a <- a + c b over F_p, touching only indices >= from.
void axpy(Vec& a, const Vec& b, unsigned c, unsigned p, std::size_t from = 0);

/// Row space in reduced echelon form; equality is representation equality.
class Subspace {
 public:
  Subspace(unsigned p, std::size_t ambient) : p_(p), n_(ambient) {}

  static Subspace span(unsigned p, std::size_t ambient, std::vector<Vec> vectors);
  static Subspace full(unsigned p, std::size_t ambient);
  /// Rows already in reduced echelon form (checked in debug builds only).
  static Subspace from_rref(unsigned p, std::size_t ambient, std::vector<Vec> rows);

  unsigned p() const { return p_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after reduction by the rows.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& w) const;
  /// Coordinates of v in the row basis; v must lie in the subspace.
  std::vector<std::uint8_t> coordinates(const Vec& v) const;

  Subspace sum(const Subspace& w) const;
  Subspace intersect(const Subspace& w) const;

  /// One row per line, one base-p digit per coefficient.
  std::string dump() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  unsigned p_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  friend class EchelonBuilder;
};

/// Basis of {c : Σ c_i images[i] = 0}, each image of length len.
Subspace kernel_of(unsigned p, std::size_t len, const std::vector<Vec>& images);

/// Incremental elimination; finish() yields the canonical reduced form.
class EchelonBuilder {
 public:
  EchelonBuilder(unsigned p, std::size_t ambient) : p_(p), n_(ambient) {}
  explicit EchelonBuilder(const Subspace& start);

  /// Returns true when v was independent of the rows so far.
  bool add(Vec v);
  std::size_t dim() const { return rows_.size(); }
  Subspace finish() &&;

 private:
  unsigned p_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> lead_;
  std::vector<std::uint8_t> inv_;
};

/// top / bottom with bottom contained in top; coordinates via a complement.
class Subquotient {
 public:
  Subquotient(Subspace top, Subspace bottom);

  const Subspace& top() const { return top_; }
  const Subspace& bottom() const { return bottom_; }
  std::size_t dim() const { return complement_.size(); }
  /// Coordinates of the class of v (v must lie in top).
  std::vector<std::uint8_t> coordinates(const Vec& v) const;
  bool is_zero(const Vec& v) const;
  /// Representatives of a basis of the quotient.
  const std::vector<Vec>& basis() const { return complement_; }

 private:
  Subspace top_;
  Subspace bottom_;
  std::vector<Vec> complement_;
  std::vector<std::size_t> complement_pivots_;
};

/// F_p[G] for a table-backed group G. Keeps a reference to the group.
class GroupAlgebra {
 public:
  explicit GroupAlgebra(const FiniteGroup& g, std::size_t cap = kDefaultAlgebraCap);

  const FiniteGroup& group() const { return *g_; }
  unsigned p() const { return p_; }
  std::size_t dim() const { return n_; }

  Vec zero() const { return Vec(n_, 0); }
  Vec one() const { return basis(g_->identity()); }
  Vec basis(Elem g) const;
  /// g - 1
  Vec aug(Elem g) const;

  Vec add(const Vec& u, const Vec& v) const;
  Vec sub(const Vec& u, const Vec& v) const;
  Vec scale(unsigned c, const Vec& u) const;
  Vec mul(const Vec& u, const Vec& v) const;
  Vec pow(const Vec& u, const BigInt& n) const;

  /// g v and v g
  Vec left_mul(Elem g, const Vec& v) const;
  Vec right_mul(const Vec& v, Elem g) const;
  /// (s - 1) v and v (s - 1)
  Vec left_mul_aug(Elem s, const Vec& v) const;
  Vec right_mul_aug(const Vec& v, Elem s) const;

  Vec class_sum(const std::vector<Elem>& cls) const;

 private:
  const FiniteGroup* g_;
  unsigned p_;
  std::size_t n_;
};

// Ideals and filtrations.

/// Σ_s (s - 1) X over generators s of N; equals I(N) X when X is a left ideal.
Subspace left_aug_product(const GroupAlgebra& A, const std::vector<Elem>& gens, const Subspace& x);
/// Σ_s X (s - 1); equals X I(N) when X is a right ideal.
Subspace right_aug_product(const GroupAlgebra& A, const Subspace& x, const std::vector<Elem>& gens);
/// Span of all pairwise products of basis vectors.
Subspace product(const GroupAlgebra& A, const Subspace& x, const Subspace& y);

/// I(N) kG from differences within right cosets.
Subspace ideal_of(const GroupAlgebra& A, const Subgroup& n);
/// I(G)^n by iterated left multiplication starting at I(G).
Subspace augmentation_power_closure(const GroupAlgebra& A, unsigned n);

/// Jennings monomials (x_1 - 1)^{e_1} ... (x_k - 1)^{e_k} of a subgroup's Jennings set.
struct JenningsData {
  JenningsSet set;                              // elements of the ambient group
  std::vector<std::vector<std::uint8_t>> exps;  // exponent tuples, the empty product first
  std::vector<unsigned> weight;                 // Σ e_i w_i
  std::vector<Vec> monomials;                   // in the ambient algebra
  unsigned max_weight = 0;
};

/// Jennings data for G itself with the given Jennings set.
JenningsData jennings_data(const GroupAlgebra& A, const JenningsSet& set);
/// Jennings data of a subgroup N using a Jennings set of N.
JenningsData jennings_data(const GroupAlgebra& A, const Subgroup& n, const std::vector<Elem>& priority = {});
/// Jennings data for G whose set meets N in a Jennings set of N.
JenningsData jennings_data_compatible(const GroupAlgebra& A, const Subgroup& n,
                                      const std::vector<Elem>& priority = {});

/// Span of the monomials of weight >= n (the empty product excluded).
Subspace monomial_span(const GroupAlgebra& A, const JenningsData& j, unsigned n);
/// I(G)^n from the Jennings basis.
Subspace augmentation_power(const GroupAlgebra& A, unsigned n);
/// I(N)^n kG: translates of the monomials of N of weight >= n along a transversal.
Subspace relative_power_kg(const GroupAlgebra& A, const Subgroup& n, unsigned k);

/// Recursive: J^1 = I(N)I(G), J^{i+1} = I(N)J^i + J^i I(N).
/// Closed: I(N)^n I(G) + Σ_{0<i<n} I(N)^{n-i} I(G) I(N)^i.
/// Series: Σ_i I(N)^{n+1-i} I(γ_i^G(N):G).
enum class IdealMode { Recursive, Closed, Series };

/// J^n(N, G)
Subspace relative_ideal(const GroupAlgebra& A, const Subgroup& n, unsigned k, IdealMode mode);
/// I(N)^k I(G)
Subspace relative_power_times_aug(const GroupAlgebra& A, const Subgroup& n, unsigned k);
/// I(G) I(N)^k
Subspace aug_times_relative_power(const GroupAlgebra& A, const Subgroup& n, unsigned k);
/// I(N)^k I(L:G) for normal L.
Subspace relative_power_times_ideal(const GroupAlgebra& A, const Subgroup& n, unsigned k, const Subgroup& l);

/// Span of the class sums.
Subspace center_of_algebra(const GroupAlgebra& A);
/// Z(kG) as the solution space of x b = b x for the group generators.
Subspace commutant(const GroupAlgebra& A);
/// I(Z(G)) plus the class sums of non-central classes.
Subspace center_of_augmentation(const GroupAlgebra& A);

/// {g : g - 1 in V}
Subgroup group_points(const GroupAlgebra& A, const Subspace& v);
/// D_n from the algebra: {g : g - 1 in I(G)^n}
Subgroup dimension_subgroup_algebra(const GroupAlgebra& A, unsigned n);

}  // namespace modiso
