#pragma once

#include <optional>
#include <vector>

#include "residua/group_ops.hpp"
#include "residua/perm_group.hpp"
#include "residua/rng.hpp"
#include "residua/section.hpp"

namespace residua {

// Dense matrix over F_p, row major, entries reduced mod p.
class MatFp {
 public:
  MatFp() = default;
  MatFp(long p, int rows, int cols);
  static MatFp identity(long p, int n);

  long p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, long v);

  MatFp operator*(const MatFp& rhs) const;
  MatFp transpose() const;
  bool operator==(const MatFp& rhs) const;

 private:
  long p_ = 2;
  int rows_ = 0, cols_ = 0;
  std::vector<long> a_;
};

long inv_mod(long a, long p);

// Solutions x (as rows) of m x^T = 0.
std::vector<std::vector<long>> column_nullspace(MatFp m);
// Row vectors v with v m = 0.
std::vector<std::vector<long>> row_nullspace(const MatFp& m);

// Subspace of row vectors kept as a reduced echelon basis.
class RowSpace {
 public:
  RowSpace(long p, int width) : p_(p), width_(width) {}

  long p() const { return p_; }
  int width() const { return width_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<long>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Residue of v after eliminating all pivot columns.
  std::vector<long> reduce(std::vector<long> v) const;
  bool contains(const std::vector<long>& v) const;
  // True when v enlarged the space.
  bool insert(std::vector<long> v);
  // Coefficients of v over the echelon basis; v must be contained.
  std::vector<long> coordinates(const std::vector<long>& v) const;

 private:
  long p_;
  int width_;
  std::vector<std::vector<long>> rows_;   // pivot-sorted reduced echelon
  std::vector<int> pivots_;
};

// Right modules over F_p: row vectors, one action matrix per ambient
// generator, v * action[i] is the image of v.
struct MatModule {
  long p = 2;
  int dim = 0;
  std::vector<MatFp> action;
};

// Smallest submodule containing the seed rows.
RowSpace spin(const MatModule& m, const std::vector<std::vector<long>>& seeds);

// Module structure induced on a submodule (rows of sub as new basis).
MatModule restriction_to(const MatModule& m, const RowSpace& sub);
// Module structure on the quotient by sub; coordinates live on the
// non-pivot columns of sub.
MatModule quotient_by(const MatModule& m, const RowSpace& sub);
// Ambient-width representative of a quotient coordinate vector.
std::vector<long> lift_from_quotient(const RowSpace& sub, int width,
                                     const std::vector<long>& qvec);

// Basis of {X : from.action[i] * X == X * to.action[i] for all i}.
std::vector<MatFp> hom_space(const MatModule& from, const MatModule& to);

// A proper nonzero submodule, or nullopt once irreducibility is certified.
std::optional<RowSpace> find_proper_submodule(const MatModule& m, Rng& rng);

// Composition factors as modules; factors isomorphic to an earlier one are
// dropped when dedupe is set.
std::vector<MatModule> composition_factor_types(const MatModule& m, Rng& rng);

// Intersection of the kernels of all homomorphisms onto simple modules;
// the quotient by it is the largest semisimple quotient.
RowSpace module_radical(const MatModule& m, Rng& rng);

// Direct sum decomposition of a semisimple module into simple summands.
// Fails loudly (internal_error) when m is not semisimple.
std::vector<RowSpace> semisimple_summands(const MatModule& m, Rng& rng);

// Elementary abelian section H/K of exponent p turned into an F_p module
// for the conjugation action of the ambient group's generators.
class FpModule {
 public:
  explicit FpModule(const NormalSection& sec);

  long p() const { return p_; }
  int dim() const { return dim_; }
  const MatModule& mat_module() const { return mats_; }
  const NormalSection& section() const { return sec_; }

  // Coordinate vector of x mod K; x must lie in the top group.
  std::vector<long> coordinates(const Permutation& x) const;
  // A representative of the coset with the given coordinates.
  Permutation representative(const std::vector<long>& v) const;
  // Subgroup <K, representatives of the rows>.
  PermGroup pullback(const std::vector<std::vector<long>>& rows) const;
  PermGroup pullback(const RowSpace& space) const { return pullback(space.rows()); }

 private:
  NormalSection sec_;
  long p_ = 2;
  int dim_ = 0;
  std::vector<Permutation> basis_;
  std::vector<PermGroup> layers_;  // K = layers_[0] < ... < layers_[dim_] = H
  MatModule mats_;
};

}  // namespace residua
