#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cuntzk/characters.hpp"
#include "cuntzk/group.hpp"

namespace cuntzk {

using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Words over {0, ..., n-1} of length at most `depth`, ordered by length and
/// then lexicographically. The empty word (the vacuum) has index 0.
class TruncatedFockSpace {
 public:
  /// Throws UnsupportedParameter unless 1 <= n <= 8 and dim <= 100000.
  TruncatedFockSpace(int n, int depth);

  int n() const { return n_; }
  int depth() const { return depth_; }
  std::size_t dim() const { return dim_; }
  /// Index of the first word of length m.
  std::size_t degree_offset(int m) const { return offsets_.at(m); }
  /// n^m.
  std::size_t degree_dim(int m) const { return offsets_.at(m + 1) - offsets_.at(m); }
  int degree_of(std::size_t index) const;
  std::vector<int> word(std::size_t index) const;
  std::size_t index_of(const std::vector<int>& word) const;

  /// (n^(d+1) - 1) / (n - 1), or d + 1 when n = 1.
  static std::size_t closed_form_dim(int n, int depth);

 private:
  int n_;
  int depth_;
  std::size_t dim_;
  std::vector<std::size_t> offsets_;  // depth + 2 entries
};

/// t_i |w> = |i w> for |w| < depth; words of top length are annihilated.
std::vector<SparseOperator> creation_ops(const TruncatedFockSpace& space);

/// 1 - sum_i t_i t_i^*.
SparseOperator vacuum_projection(const TruncatedFockSpace& space,
                                 const std::vector<SparseOperator>& ops);

/// Orthogonal projection onto words of length <= max_degree.
SparseOperator degree_projection(const TruncatedFockSpace& space, int max_degree);

/// Extends n x n unitaries pi(g) to the Fock space as the direct sum of
/// tensor powers. Throws DimensionMismatch when the matrices are not n x n
/// and ValidationFailed when they do not form a unitary representation.
std::vector<SparseOperator> fock_rep(const TruncatedFockSpace& space, const FiniteGroup& g,
                                     const std::vector<Eigen::MatrixXcd>& unitaries);

/// Largest absolute entry of a - b.
double max_deviation(const SparseOperator& a, const SparseOperator& b);

/// Compression P X P onto the span of words of length <= max_degree, as an
/// operator on the smaller truncated space of that depth.
SparseOperator compress(const TruncatedFockSpace& space, const SparseOperator& x, int max_degree);

struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  int n = 0;
  int depth = 0;
  std::size_t dim = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const;
};

/// The Cuntz-Toeplitz identities that hold exactly in the truncation:
/// sum t_i t_i^* + p = 1, p is the vacuum projection, p t_i = 0, trace p = 1,
/// t_j^* t_i = delta_ij on degrees <= depth - 1.
std::vector<IdentityCheck> toeplitz_checks(const TruncatedFockSpace& space,
                                           const std::vector<SparseOperator>& ops);

/// max over g, i of || pi_F(g) t_i pi_F(g)^* - sum_j pi(g)_ji t_j || on
/// degrees <= depth - 1.
IdentityCheck covariance_check(const TruncatedFockSpace& space,
                               const std::vector<SparseOperator>& ops, const FiniteGroup& g,
                               const std::vector<Eigen::MatrixXcd>& unitaries);

/// On the degree-1 subspace, sum_i (sum_j pi(g)_ji t_j) t_i^* equals pi(g).
/// Throws UnsupportedParameter when depth < 2.
IdentityCheck degree1_matrix_unit_check(const TruncatedFockSpace& space,
                                        const std::vector<SparseOperator>& ops,
                                        const FiniteGroup& g,
                                        const std::vector<Eigen::MatrixXcd>& unitaries);

/// Runs every check above for one action.
VerificationReport verify_fock(int n, int depth, const FiniteGroup& g,
                               const std::vector<Eigen::MatrixXcd>& unitaries);

/// Permutation matrices for an action of G permuting the n basis vectors:
/// `images[g][i]` is the image of e_i under g.
std::vector<Eigen::MatrixXcd> permutation_unitaries(const std::vector<std::vector<int>>& images);

}  // namespace cuntzk
