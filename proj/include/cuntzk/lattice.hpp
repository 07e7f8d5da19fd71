#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cuntzk {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

bool is_zero(const IntVector& v);

/// U * M * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
/// `U_inv` is the inverse of U, kept so cokernel generators can be lifted.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  std::size_t rank = 0;

  /// The first min(rows, cols) diagonal entries of D.
  IntVector diagonal() const;
};

/// Smith normal form by repeated minimal-absolute-value pivoting.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Finitely generated abelian group Z^r / im(M), in coordinates
/// (t_1, ..., t_s, f_1, ..., f_r') where t_i lives in Z/d_i (d_i >= 2,
/// d_i | d_{i+1}) and f_j in Z. Unit invariant factors are dropped.
class FgAbelianGroup {
 public:
  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  /// d_i for torsion coordinates and 0 for free coordinates.
  const IntVector& moduli() const { return moduli_; }
  std::size_t coordinate_count() const { return moduli_.size(); }
  std::size_t ambient_dim() const { return relations_.rows(); }
  Integer torsion_order() const;
  bool is_trivial() const { return moduli_.empty(); }

  /// Coordinates of an ambient vector; torsion entries reduced into [0, d_i).
  IntVector project(const IntVector& v) const;
  /// Reduces coordinates: torsion entries mod d_i.
  IntVector reduce(const IntVector& coords) const;
  bool is_zero_class(const IntVector& coords) const;

  /// Ambient vector representing coordinate generator i.
  IntVector generator(std::size_t i) const { return generators_.column(i); }

  const IntMatrix& relations() const { return relations_; }
  const SmithDecomposition& smith() const { return smith_; }

  /// e.g. "Z/2 + Z^3", or "0".
  std::string describe() const;

 private:
  friend FgAbelianGroup cokernel(const IntMatrix&);
  std::size_t free_rank_ = 0;
  IntVector torsion_;
  IntVector moduli_;
  IntMatrix projection_;  // coordinate_count x ambient
  IntMatrix generators_;  // ambient x coordinate_count
  IntMatrix relations_;
  SmithDecomposition smith_;
};

/// Z^rows / im(M).
FgAbelianGroup cokernel(const IntMatrix& m);

/// Z-basis of ker(M), possibly empty.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// Some x with M x = b, or nothing. Throws DimensionMismatch.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b);
std::optional<IntVector> solve(const SmithDecomposition& snf, const IntVector& b);

/// Matrix, in cokernel coordinates, of the map induced by N on Z^r / im(M).
/// Requires N im(M) in im(M); throws NotInvariant naming a failing column.
IntMatrix descend_endomorphism(const IntMatrix& n, const FgAbelianGroup& coker);

/// Matrix of N restricted to the lattice spanned by `basis` (columns of the
/// result are the coordinates of N b_j). Throws NotInvariant.
IntMatrix restrict_endomorphism(const IntMatrix& n, const std::vector<IntVector>& basis);

/// Same column convention as `descend_endomorphism`, with torsion rows reduced.
IntMatrix reduce_on(const FgAbelianGroup& coker, const IntMatrix& coords);

}  // namespace cuntzk
