#include "cuntzk/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "cuntzk/error.hpp"

namespace cuntzk {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
  IntMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum shapes");
  IntMatrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shapes");
  IntMatrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
  return s;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Works on D while recording the row operations in U (and their inverses in
// U_inv) and the column operations in V.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : r_(m.rows()), c_(m.cols()), d_(m), u_(IntMatrix::identity(r_)),
        u_inv_(IntMatrix::identity(r_)), v_(IntMatrix::identity(c_)) {}

  SmithDecomposition run() {
    std::size_t t = 0;
    const std::size_t lim = std::min(r_, c_);
    for (; t < lim; ++t) {
      auto piv = min_entry(t, t, r_, c_);
      if (!piv) break;
      move_to(*piv, t);
      reduce_pivot(t);
      if (d_(t, t) < 0) negate_row(t);
    }
    return {std::move(u_), std::move(d_), std::move(v_), std::move(u_inv_), t};
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t r0, std::size_t c0,
                                                               std::size_t r1, std::size_t c1) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = d_(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = std::move(ax);
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  void move_to(std::pair<std::size_t, std::size_t> at, std::size_t t) {
    if (at.first != t) swap_rows(at.first, t);
    if (at.second != t) swap_cols(at.second, t);
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r_; ++i) {
        if (d_(i, t) == 0) continue;
        Integer q = d_(i, t) / d_(t, t);
        if (q != 0) add_row(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c_; ++j) {
        if (d_(t, j) == 0) continue;
        Integer q = d_(t, j) / d_(t, t);
        if (q != 0) add_col(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row t or column t.
        auto a = min_entry(t + 1, t, r_, t + 1);
        auto b = min_entry(t, t + 1, t + 1, c_);
        std::pair<std::size_t, std::size_t> at;
        if (a && b) at = abs(d_(a->first, a->second)) <= abs(d_(b->first, b->second)) ? *a : *b;
        else at = a ? *a : *b;
        move_to(at, t);
        continue;
      }
      // Divisibility: fold an offending row into row t and reduce again.
      bool divides = true;
      for (std::size_t i = t + 1; i < r_ && divides; ++i)
        for (std::size_t j = t + 1; j < c_; ++j)
          if (d_(i, j) % d_(t, t) != 0) {
            add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < c_; ++j) std::swap(d_(a, j), d_(b, j));
    for (std::size_t j = 0; j < r_; ++j) std::swap(u_(a, j), u_(b, j));
    for (std::size_t i = 0; i < r_; ++i) std::swap(u_inv_(i, a), u_inv_(i, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < r_; ++i) std::swap(d_(i, a), d_(i, b));
    for (std::size_t i = 0; i < c_; ++i) std::swap(v_(i, a), v_(i, b));
  }

  // row_dst += q * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < c_; ++j)
      if (d_(src, j) != 0) d_(dst, j) += q * d_(src, j);
    for (std::size_t j = 0; j < r_; ++j)
      if (u_(src, j) != 0) u_(dst, j) += q * u_(src, j);
    // The inverse operation acts on columns of U_inv: col_src -= q * col_dst.
    for (std::size_t i = 0; i < r_; ++i)
      if (u_inv_(i, dst) != 0) u_inv_(i, src) -= q * u_inv_(i, dst);
  }

  // col_dst += q * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < r_; ++i)
      if (d_(i, src) != 0) d_(i, dst) += q * d_(i, src);
    for (std::size_t i = 0; i < c_; ++i)
      if (v_(i, src) != 0) v_(i, dst) += q * v_(i, src);
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < c_; ++j) d_(t, j) = -d_(t, j);
    for (std::size_t j = 0; j < r_; ++j) u_(t, j) = -u_(t, j);
    for (std::size_t i = 0; i < r_; ++i) u_inv_(i, t) = -u_inv_(i, t);
  }

  std::size_t r_, c_;
  IntMatrix d_, u_, u_inv_, v_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) { return SmithReducer(m).run(); }

Integer FgAbelianGroup::torsion_order() const {
  Integer p = 1;
  for (const auto& d : torsion_) p *= d;
  return p;
}

IntVector FgAbelianGroup::reduce(const IntVector& coords) const {
  if (coords.size() != moduli_.size())
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  IntVector out = coords;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (moduli_[i] != 0) out[i] = floor_mod(out[i], moduli_[i]);
  return out;
}

IntVector FgAbelianGroup::project(const IntVector& v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "ambient vector length");
  return reduce(projection_ * v);
}

bool FgAbelianGroup::is_zero_class(const IntVector& coords) const {
  return is_zero(reduce(coords));
}

std::string FgAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
    first = false;
  }
  return first ? "0" : os.str();
}

FgAbelianGroup cokernel(const IntMatrix& m) {
  FgAbelianGroup g;
  g.relations_ = m;
  g.smith_ = smith_normal_form(m);
  const auto& s = g.smith_;
  const std::size_t r = m.rows();
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) {
      picked.push_back(i);
      g.torsion_.push_back(s.D(i, i));
      g.moduli_.push_back(s.D(i, i));
    }
  for (std::size_t i = s.rank; i < r; ++i) {
    picked.push_back(i);
    g.moduli_.push_back(0);
  }
  g.free_rank_ = r - s.rank;
  g.projection_ = IntMatrix(picked.size(), r);
  g.generators_ = IntMatrix(r, picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k)
    for (std::size_t j = 0; j < r; ++j) {
      g.projection_(k, j) = s.U(picked[k], j);
      g.generators_(j, k) = s.U_inv(j, picked[k]);
    }
  return g;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  const SmithDecomposition s = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank; j < m.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

std::optional<IntVector> solve(const SmithDecomposition& s, const IntVector& b) {
  const std::size_t r = s.U.rows(), c = s.V.rows();
  if (b.size() != r)
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has length " +
                                                  std::to_string(b.size()) + ", expected " +
                                                  std::to_string(r));
  const IntVector y = s.U * b;
  IntVector xp(c);
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (y[i] % s.D(i, i) != 0) return std::nullopt;
    xp[i] = y[i] / s.D(i, i);
  }
  for (std::size_t i = s.rank; i < r; ++i)
    if (y[i] != 0) return std::nullopt;
  return s.V * xp;
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows())
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has length " +
                                                  std::to_string(b.size()) + ", expected " +
                                                  std::to_string(m.rows()));
  return solve(smith_normal_form(m), b);
}

IntMatrix descend_endomorphism(const IntMatrix& n, const FgAbelianGroup& coker) {
  const std::size_t r = coker.ambient_dim();
  if (n.rows() != r || n.cols() != r)
    throw Error(ErrorCode::DimensionMismatch, "endomorphism must be square of ambient size");
  const IntMatrix& m = coker.relations();
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!solve(coker.smith(), n * m.column(j)))
      throw Error(ErrorCode::NotInvariant,
                  "image of relation column " + std::to_string(j) + " leaves im(M)");
  const std::size_t k = coker.coordinate_count();
  IntMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const IntVector col = coker.project(n * coker.generator(i));
    for (std::size_t row = 0; row < k; ++row) out(row, i) = col[row];
  }
  return out;
}

IntMatrix restrict_endomorphism(const IntMatrix& n, const std::vector<IntVector>& basis) {
  if (basis.empty()) return IntMatrix(0, 0);
  const std::size_t r = basis[0].size();
  if (n.rows() != r || n.cols() != r)
    throw Error(ErrorCode::DimensionMismatch, "endomorphism must be square of ambient size");
  const IntMatrix b = IntMatrix::from_columns(basis, r);
  const SmithDecomposition s = smith_normal_form(b);
  if (s.rank != basis.size())
    throw Error(ErrorCode::DimensionMismatch, "basis vectors are linearly dependent");
  IntMatrix out(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto x = solve(s, n * basis[j]);
    if (!x)
      throw Error(ErrorCode::NotInvariant,
                  "image of basis vector " + std::to_string(j) + " leaves the lattice");
    for (std::size_t i = 0; i < basis.size(); ++i) out(i, j) = (*x)[i];
  }
  return out;
}

IntMatrix reduce_on(const FgAbelianGroup& coker, const IntMatrix& coords) {
  IntMatrix out = coords;
  for (std::size_t j = 0; j < coords.cols(); ++j) {
    const IntVector col = coker.reduce(coords.column(j));
    for (std::size_t i = 0; i < coords.rows(); ++i) out(i, j) = col[i];
  }
  return out;
}

}  // namespace cuntzk
