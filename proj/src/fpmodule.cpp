#include "residua/fpmodule.hpp"

#include <algorithm>
#include <utility>

#include "residua/errors.hpp"

namespace residua {

MatFp::MatFp(long p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
  check_internal(p >= 2 && rows >= 0 && cols >= 0, "matrix shape");
}

MatFp MatFp::identity(long p, int n) {
  MatFp m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void MatFp::set(int i, int j, long v) {
  v %= p_;
  if (v < 0) v += p_;
  a_[static_cast<std::size_t>(i) * cols_ + j] = v;
}

MatFp MatFp::operator*(const MatFp& rhs) const {
  check_internal(cols_ == rhs.rows_ && p_ == rhs.p_, "matrix product shape");
  MatFp out(p_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      long v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j)
        out.set(i, j, out.at(i, j) + v * rhs.at(k, j));
    }
  return out;
}

MatFp MatFp::transpose() const {
  MatFp out(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

bool MatFp::operator==(const MatFp& rhs) const {
  return p_ == rhs.p_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

long inv_mod(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  check_internal(a != 0, "inverse of zero");
  long result = 1, base = a, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

namespace {

// In-place reduced row echelon form; returns the pivot column per pivot row.
std::vector<int> rref(MatFp& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) {
        long t = m.at(row, j);
        m.set(row, j, m.at(sel, j));
        m.set(sel, j, t);
      }
    long inv = inv_mod(m.at(row, col), m.p());
    for (int j = 0; j < m.cols(); ++j) m.set(row, j, m.at(row, j) * inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      long f = m.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < m.cols(); ++j)
        m.set(i, j, m.at(i, j) - f * m.at(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<long>> column_nullspace(MatFp m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<long>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<long> x(static_cast<std::size_t>(m.cols()), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      long v = -m.at(static_cast<int>(i), f) % m.p();
      if (v < 0) v += m.p();
      x[static_cast<std::size_t>(pivots[i])] = v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::vector<long>> row_nullspace(const MatFp& m) {
  return column_nullspace(m.transpose());
}

std::vector<long> RowSpace::reduce(std::vector<long> v) const {
  check_internal(static_cast<int>(v.size()) == width_, "row width mismatch");
  for (auto& e : v) {
    e %= p_;
    if (e < 0) e += p_;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    long f = v[static_cast<std::size_t>(pivots_[i])];
    if (f == 0) continue;
    for (int j = 0; j < width_; ++j) {
      long t = (v[static_cast<std::size_t>(j)] - f * rows_[i][static_cast<std::size_t>(j)]) % p_;
      if (t < 0) t += p_;
      v[static_cast<std::size_t>(j)] = t;
    }
  }
  return v;
}

bool RowSpace::contains(const std::vector<long>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](long e) { return e == 0; });
}

bool RowSpace::insert(std::vector<long> v) {
  v = reduce(std::move(v));
  int pivot = -1;
  for (int j = 0; j < width_; ++j)
    if (v[static_cast<std::size_t>(j)] != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  long inv = inv_mod(v[static_cast<std::size_t>(pivot)], p_);
  for (auto& e : v) e = e * inv % p_;
  // eliminate the new pivot from the existing rows, keep pivot order
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    long f = rows_[i][static_cast<std::size_t>(pivot)];
    if (f == 0) continue;
    for (int j = 0; j < width_; ++j) {
      long t = (rows_[i][static_cast<std::size_t>(j)] - f * v[static_cast<std::size_t>(j)]) % p_;
      if (t < 0) t += p_;
      rows_[i][static_cast<std::size_t>(j)] = t;
    }
  }
  auto it = std::upper_bound(pivots_.begin(), pivots_.end(), pivot);
  std::size_t idx = static_cast<std::size_t>(it - pivots_.begin());
  pivots_.insert(it, pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

std::vector<long> RowSpace::coordinates(const std::vector<long>& v) const {
  std::vector<long> coeffs(rows_.size(), 0);
  std::vector<long> w = v;
  for (auto& e : w) {
    e %= p_;
    if (e < 0) e += p_;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    long f = w[static_cast<std::size_t>(pivots_[i])];
    coeffs[i] = f;
    if (f == 0) continue;
    for (int j = 0; j < width_; ++j) {
      long t = (w[static_cast<std::size_t>(j)] - f * rows_[i][static_cast<std::size_t>(j)]) % p_;
      if (t < 0) t += p_;
      w[static_cast<std::size_t>(j)] = t;
    }
  }
  check_internal(std::all_of(w.begin(), w.end(), [](long e) { return e == 0; }),
                 "coordinates of a vector outside the space");
  return coeffs;
}

namespace {

std::vector<long> apply_row(const std::vector<long>& v, const MatFp& m) {
  std::vector<long> out(static_cast<std::size_t>(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i) {
    long f = v[static_cast<std::size_t>(i)];
    if (f == 0) continue;
    for (int j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(j)] =
          (out[static_cast<std::size_t>(j)] + f * m.at(i, j)) % m.p();
  }
  return out;
}

}  // namespace

RowSpace spin(const MatModule& m, const std::vector<std::vector<long>>& seeds) {
  RowSpace space(m.p, m.dim);
  for (const auto& s : seeds) space.insert(s);
  std::vector<std::vector<long>> work(space.rows().begin(), space.rows().end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (const auto& a : m.action) {
      auto img = apply_row(work[i], a);
      if (space.insert(img)) work.push_back(std::move(img));
    }
  }
  return space;
}

MatModule restriction_to(const MatModule& m, const RowSpace& sub) {
  MatModule out;
  out.p = m.p;
  out.dim = sub.dim();
  for (const auto& a : m.action) {
    MatFp b(m.p, out.dim, out.dim);
    for (int i = 0; i < out.dim; ++i) {
      auto img = apply_row(sub.rows()[static_cast<std::size_t>(i)], a);
      auto coords = sub.coordinates(img);
      for (int j = 0; j < out.dim; ++j) b.set(i, j, coords[static_cast<std::size_t>(j)]);
    }
    out.action.push_back(std::move(b));
  }
  return out;
}

MatModule quotient_by(const MatModule& m, const RowSpace& sub) {
  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.dim), false);
    for (int c : sub.pivots()) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int j = 0; j < m.dim; ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  }
  MatModule out;
  out.p = m.p;
  out.dim = static_cast<int>(free_cols.size());
  for (const auto& a : m.action) {
    MatFp b(m.p, out.dim, out.dim);
    for (int i = 0; i < out.dim; ++i) {
      std::vector<long> e(static_cast<std::size_t>(m.dim), 0);
      e[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(i)])] = 1;
      auto img = sub.reduce(apply_row(e, a));
      for (int j = 0; j < out.dim; ++j)
        b.set(i, j, img[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(j)])]);
    }
    out.action.push_back(std::move(b));
  }
  return out;
}

std::vector<long> lift_from_quotient(const RowSpace& sub, int width,
                                     const std::vector<long>& qvec) {
  std::vector<int> free_cols;
  std::vector<bool> is_pivot(static_cast<std::size_t>(width), false);
  for (int c : sub.pivots()) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int j = 0; j < width; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  check_internal(qvec.size() == free_cols.size(), "quotient lift width mismatch");
  std::vector<long> out(static_cast<std::size_t>(width), 0);
  for (std::size_t i = 0; i < free_cols.size(); ++i)
    out[static_cast<std::size_t>(free_cols[i])] = qvec[i];
  return out;
}

std::vector<MatFp> hom_space(const MatModule& from, const MatModule& to) {
  check_internal(from.p == to.p && from.action.size() == to.action.size(),
                 "hom space: incompatible modules");
  int d1 = from.dim, d2 = to.dim;
  if (d1 == 0 || d2 == 0) return {};
  std::size_t unknowns = static_cast<std::size_t>(d1) * static_cast<std::size_t>(d2);
  std::size_t eqs = from.action.size() * unknowns;
  MatFp sys(from.p, static_cast<int>(eqs), static_cast<int>(unknowns));
  int row = 0;
  for (std::size_t g = 0; g < from.action.size(); ++g) {
    const MatFp& A = from.action[g];
    const MatFp& B = to.action[g];
    for (int r = 0; r < d1; ++r)
      for (int c = 0; c < d2; ++c) {
        // (A X - X B)[r][c] == 0
        for (int k = 0; k < d1; ++k)
          sys.set(row, k * d2 + c, sys.at(row, k * d2 + c) + A.at(r, k));
        for (int k = 0; k < d2; ++k)
          sys.set(row, r * d2 + k, sys.at(row, r * d2 + k) - B.at(k, c));
        ++row;
      }
  }
  std::vector<MatFp> out;
  for (const auto& x : column_nullspace(std::move(sys))) {
    MatFp X(from.p, d1, d2);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j) X.set(i, j, x[static_cast<std::size_t>(i * d2 + j)]);
    out.push_back(std::move(X));
  }
  return out;
}

namespace {

MatModule transposed_module(const MatModule& m) {
  MatModule out;
  out.p = m.p;
  out.dim = m.dim;
  for (const auto& a : m.action) out.action.push_back(a.transpose());
  return out;
}

// Proper nonzero submodule of m extracted from a subspace of the
// transposed module: the vectors annihilated by all of its rows.
RowSpace annihilator_submodule(const MatModule& m, const RowSpace& dual_sub) {
  MatFp b(m.p, dual_sub.dim(), m.dim);
  for (int i = 0; i < dual_sub.dim(); ++i)
    for (int j = 0; j < m.dim; ++j)
      b.set(i, j, dual_sub.rows()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  RowSpace out(m.p, m.dim);
  for (auto& v : row_nullspace(b.transpose())) out.insert(std::move(v));
  return out;
}

std::optional<RowSpace> exhaustive_submodule_search(const MatModule& m) {
  // Spin every vector whose first nonzero coordinate is 1; any proper
  // submodule contains such a vector.
  std::vector<long> v(static_cast<std::size_t>(m.dim), 0);
  for (int first = 0; first < m.dim; ++first) {
    std::fill(v.begin(), v.end(), 0);
    v[static_cast<std::size_t>(first)] = 1;
    while (true) {
      auto space = spin(m, {v});
      if (space.dim() < m.dim) return space;
      int j = m.dim - 1;
      while (j > first) {
        if (++v[static_cast<std::size_t>(j)] < m.p) break;
        v[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j == first) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RowSpace> find_proper_submodule(const MatModule& m, Rng& rng) {
  check_internal(m.dim >= 1, "submodule search on the zero module");
  if (m.dim == 1) return std::nullopt;
  if (m.action.empty()) {
    RowSpace line(m.p, m.dim);
    std::vector<long> e(static_cast<std::size_t>(m.dim), 0);
    e[0] = 1;
    line.insert(std::move(e));
    return line;
  }

  MatModule dual = transposed_module(m);
  const int budget = 200;
  for (int iter = 0; iter < budget; ++iter) {
    // random element of the enveloping algebra: a short sum of short words
    MatFp theta(m.p, m.dim, m.dim);
    int terms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < terms; ++t) {
      MatFp word = MatFp::identity(m.p, m.dim);
      int len = 1 + static_cast<int>(rng.below(3));
      for (int w = 0; w < len; ++w)
        word = word * m.action[static_cast<std::size_t>(rng.below(m.action.size()))];
      long coeff = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(m.p - 1)));
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
          theta.set(i, j, theta.at(i, j) + coeff * word.at(i, j));
    }
    auto kernel = row_nullspace(theta);
    if (kernel.empty()) continue;
    auto space = spin(m, {kernel[0]});
    if (space.dim() < m.dim) return space;
    if (kernel.size() == 1) {
      // Norton test: with a one dimensional kernel, a full spin on both
      // sides certifies irreducibility.
      auto dual_kernel = row_nullspace(theta.transpose());
      check_internal(dual_kernel.size() == 1, "transpose nullity mismatch");
      auto dual_space = spin(dual, {dual_kernel[0]});
      if (dual_space.dim() == m.dim) return std::nullopt;
      auto ann = annihilator_submodule(m, dual_space);
      check_internal(ann.dim() > 0 && ann.dim() < m.dim, "annihilator not proper");
      return ann;
    }
  }

  double size = 1;
  for (int i = 0; i < m.dim; ++i) size *= static_cast<double>(m.p);
  if (size <= static_cast<double>(1 << 20)) return exhaustive_submodule_search(m);
  throw resource_error("module chop: random search budget exhausted");
}

namespace {

void chop_into(const MatModule& m, std::vector<MatModule>& out, Rng& rng) {
  if (m.dim == 0) return;
  auto sub = find_proper_submodule(m, rng);
  if (!sub) {
    out.push_back(m);
    return;
  }
  chop_into(restriction_to(m, *sub), out, rng);
  chop_into(quotient_by(m, *sub), out, rng);
}

bool modules_isomorphic(const MatModule& a, const MatModule& b) {
  if (a.dim != b.dim) return false;
  return !hom_space(a, b).empty();  // nonzero hom between simples is an iso
}

}  // namespace

std::vector<MatModule> composition_factor_types(const MatModule& m, Rng& rng) {
  std::vector<MatModule> factors;
  chop_into(m, factors, rng);
  std::vector<MatModule> types;
  for (auto& f : factors) {
    bool seen = false;
    for (const auto& t : types)
      if (modules_isomorphic(t, f)) {
        seen = true;
        break;
      }
    if (!seen) types.push_back(std::move(f));
  }
  return types;
}

RowSpace module_radical(const MatModule& m, Rng& rng) {
  RowSpace rad(m.p, m.dim);
  if (m.dim == 0) return rad;
  for (int i = 0; i < m.dim; ++i) {
    std::vector<long> e(static_cast<std::size_t>(m.dim), 0);
    e[static_cast<std::size_t>(i)] = 1;
    rad.insert(std::move(e));
  }
  for (const auto& s : composition_factor_types(m, rng)) {
    for (const auto& X : hom_space(m, s)) {
      if (rad.dim() == 0) return rad;
      // replace rad by {v in rad : v X = 0}
      MatFp rx(m.p, rad.dim(), s.dim);
      for (int i = 0; i < rad.dim(); ++i) {
        auto img = apply_row(rad.rows()[static_cast<std::size_t>(i)], X);
        for (int j = 0; j < s.dim; ++j) rx.set(i, j, img[static_cast<std::size_t>(j)]);
      }
      RowSpace next(m.p, m.dim);
      for (const auto& c : row_nullspace(rx)) {
        std::vector<long> v(static_cast<std::size_t>(m.dim), 0);
        for (int i = 0; i < rad.dim(); ++i) {
          long f = c[static_cast<std::size_t>(i)];
          if (f == 0) continue;
          for (int j = 0; j < m.dim; ++j)
            v[static_cast<std::size_t>(j)] =
                (v[static_cast<std::size_t>(j)] +
                 f * rad.rows()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) %
                m.p;
        }
        next.insert(std::move(v));
      }
      rad = std::move(next);
    }
  }
  return rad;
}

std::vector<RowSpace> semisimple_summands(const MatModule& m, Rng& rng) {
  std::vector<RowSpace> out;
  if (m.dim == 0) return out;
  RowSpace covered(m.p, m.dim);
  for (const auto& s : composition_factor_types(m, rng)) {
    for (const auto& X : hom_space(s, m)) {
      RowSpace probe = covered;
      RowSpace image(m.p, m.dim);
      int grew = 0;
      for (int i = 0; i < s.dim; ++i) {
        std::vector<long> row(static_cast<std::size_t>(m.dim), 0);
        for (int j = 0; j < m.dim; ++j) row[static_cast<std::size_t>(j)] = X.at(i, j);
        image.insert(row);
        if (probe.insert(std::move(row))) ++grew;
      }
      check_internal(image.dim() == s.dim, "hom image of a simple module must be faithful");
      if (grew == 0) continue;
      check_internal(grew == s.dim, "summand meets the accumulated sum");
      out.push_back(std::move(image));
      covered = std::move(probe);
    }
  }
  check_internal(covered.dim() == m.dim, "module is not semisimple");
  return out;
}

FpModule::FpModule(const NormalSection& sec) : sec_(sec) {
  const PermGroup& h = sec_.top();
  const PermGroup& k = sec_.bottom();
  check_internal(!sec_.factor_trivial(), "module section must be nontrivial");
  auto primes = sec_.factor_primes();
  check_internal(primes.size() == 1, "module section must be a p-group");
  p_ = primes[0];
  layers_.push_back(k);
  for (const auto& g : h.generators()) {
    if (layers_.back().contains(g)) continue;
    check_internal(k.contains(g.power(p_)), "module section must have exponent p");
    PermGroup next = join_with_element(layers_.back(), g);
    check_internal(next.order() == layers_.back().order() * p_,
                   "module section layer must have index p");
    basis_.push_back(g);
    layers_.push_back(std::move(next));
  }
  check_internal(layers_.back().order() == h.order(), "section basis does not span");
  dim_ = static_cast<int>(basis_.size());
  // Basis elements commuting mod K plus exponent p make the factor
  // elementary abelian; the layer checks alone would not.
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      Permutation c =
          basis_[i].inverse() * basis_[j].inverse() * basis_[i] * basis_[j];
      check_internal(k.contains(c), "module section must be abelian");
    }

  mats_.p = p_;
  mats_.dim = dim_;
  for (const auto& t : sec_.ambient().generators()) {
    MatFp a(p_, dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      auto coords = coordinates(basis_[static_cast<std::size_t>(i)].conjugated_by(t));
      for (int j = 0; j < dim_; ++j) a.set(i, j, coords[static_cast<std::size_t>(j)]);
    }
    mats_.action.push_back(std::move(a));
  }
}

std::vector<long> FpModule::coordinates(const Permutation& x) const {
  check_internal(sec_.top().contains(x), "coordinates of an element outside the section top");
  std::vector<long> v(static_cast<std::size_t>(dim_), 0);
  Permutation cur = x;
  for (int i = dim_ - 1; i >= 0; --i) {
    const PermGroup& lower = layers_[static_cast<std::size_t>(i)];
    const Permutation& b = basis_[static_cast<std::size_t>(i)];
    bool found = false;
    Permutation binv = b.inverse();
    Permutation probe = cur;
    for (long e = 0; e < p_; ++e) {
      if (lower.contains(probe)) {
        v[static_cast<std::size_t>(i)] = e;
        cur = std::move(probe);
        found = true;
        break;
      }
      probe = probe * binv;
    }
    check_internal(found, "section coordinates: no exponent matched");
  }
  return v;
}

Permutation FpModule::representative(const std::vector<long>& v) const {
  check_internal(static_cast<int>(v.size()) == dim_, "representative width mismatch");
  Permutation out = sec_.top().identity();
  for (int i = 0; i < dim_; ++i) {
    long e = v[static_cast<std::size_t>(i)] % p_;
    if (e < 0) e += p_;
    if (e != 0) out = out * basis_[static_cast<std::size_t>(i)].power(e);
  }
  return out;
}

PermGroup FpModule::pullback(const std::vector<std::vector<long>>& rows) const {
  GroupBuilder b(sec_.bottom());
  for (const auto& r : rows) b.add(representative(r));
  return b.freeze();
}

}  // namespace residua
