#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cuntzk/group.hpp"

namespace cuntzk {

using Complex = std::complex<double>;

/// Anything the theory forces to be an integer is rounded and must land
/// within this distance of the rounded value.
inline constexpr double kIntegralityTolerance = 1e-6;
/// Both orthogonality relations must hold to this accuracy.
inline constexpr double kOrthogonalityTolerance = 1e-8;
/// Representation matrices: homomorphism, unitarity and trace checks.
inline constexpr double kMatrixTolerance = 1e-9;

inline constexpr std::uint64_t kDefaultBurnsideSeed = 0x243F6A8885A308D3ULL;

struct BurnsideOptions {
  std::uint64_t seed = kDefaultBurnsideSeed;
  // Attempts after the first one, each with seed + attempt.
  int max_retries = 8;
  // Minimum distance between eigenvalues of the random class-sum combination.
  double eigen_gap = 1e-6;
};

struct OrthogonalityResiduals {
  double row = 0.0;
  double column = 0.0;
};

/// Character table of a finite group.
///
/// Irreps are in canonical order: the trivial character first, then by
/// ascending dimension, ties broken lexicographically on the tuple of
/// character values rounded to 1e-6 (real part before imaginary part, class
/// by class). The table is a cheap handle onto shared immutable data.
class CharacterTable {
 public:
  const FiniteGroup& group() const { return *d_->group; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const { return d_->group; }
  const ConjugacyData& classes() const { return d_->classes; }

  std::size_t count() const { return d_->dims.size(); }
  int dim(std::size_t irrep) const { return d_->dims.at(irrep); }
  const std::vector<int>& dims() const { return d_->dims; }
  const std::vector<Complex>& values(std::size_t irrep) const { return d_->values.at(irrep); }
  Complex value(std::size_t irrep, Element g) const {
    return d_->values.at(irrep)[d_->classes.class_of[g]];
  }
  /// Index of the irrep whose character is the complex conjugate.
  std::size_t conjugate(std::size_t irrep) const { return d_->conj_map.at(irrep); }
  const std::vector<std::size_t>& conj_map() const { return d_->conj_map; }

  OrthogonalityResiduals residuals() const { return d_->residuals; }
  int burnside_attempts() const { return d_->attempts; }

  /// Stable hash of the multiplication table and the canonical irrep order.
  const std::string& fingerprint() const { return d_->fingerprint; }

  /// "triv" for irrep 0, "chi<i>" otherwise.
  std::string irrep_label(std::size_t irrep) const;
  /// Accepts "triv", "chi<i>" or a bare index. Throws UnknownIrrep.
  std::size_t irrep_index(const std::string& label) const;

  bool same_table(const CharacterTable& other) const {
    return d_ == other.d_ || d_->fingerprint == other.d_->fingerprint;
  }

  struct Data {
    std::shared_ptr<const FiniteGroup> group;
    ConjugacyData classes;
    std::vector<int> dims;
    std::vector<std::vector<Complex>> values;
    std::vector<std::size_t> conj_map;
    OrthogonalityResiduals residuals;
    int attempts = 0;
    std::string fingerprint;
  };

  explicit CharacterTable(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 private:
  std::shared_ptr<const Data> d_;
};

/// Burnside's method: simultaneous eigenvectors of the class-sum matrices,
/// found as eigenvectors of a random integer combination of them.
CharacterTable character_table(const FiniteGroup& g, BurnsideOptions options = {});

/// Builds a table from externally supplied character values (one row per
/// irrep, one entry per conjugacy class of `g`). Rows are re-sorted into
/// canonical order and every table invariant is re-validated.
CharacterTable character_table_from_values(const FiniteGroup& g,
                                           const std::vector<std::vector<Complex>>& rows);

/// (1/|G|) sum over classes of size * a * conj(b), which must be a
/// nonnegative integer.
long long inner_product(const CharacterTable& table, std::span<const Complex> a,
                        std::span<const Complex> b);

/// Pointwise product of class functions.
std::vector<Complex> class_function_product(std::span<const Complex> a,
                                            std::span<const Complex> b);

/// Explicit unitary matrices of one irrep, one per group element, in the
/// convention M(g)(i, j) = pi(g)_ij. Always validated.
class IrrepMatrices {
 public:
  std::size_t irrep() const { return irrep_; }
  int dim() const { return dim_; }
  const std::vector<Eigen::MatrixXcd>& matrices() const { return mats_; }
  const Eigen::MatrixXcd& operator[](Element g) const { return mats_.at(g); }

 private:
  friend IrrepMatrices irrep_matrices(const CharacterTable&, std::size_t);
  friend IrrepMatrices irrep_matrices(const CharacterTable&, std::size_t,
                                      std::vector<Eigen::MatrixXcd>);
  std::size_t irrep_ = 0;
  int dim_ = 0;
  std::vector<Eigen::MatrixXcd> mats_;
};

/// Builtin matrices: every 1-dimensional irrep, and the 2-dimensional irreps
/// of dihedral(n) as rotations r -> R(2 pi j / n) and s -> diag(1, -1).
/// Throws MatricesUnavailable otherwise.
IrrepMatrices irrep_matrices(const CharacterTable& table, std::size_t irrep);

/// User-supplied matrices. Throws ValidationFailed naming the failing relation.
IrrepMatrices irrep_matrices(const CharacterTable& table, std::size_t irrep,
                             std::vector<Eigen::MatrixXcd> matrices);

/// Builtin matrices for every irrep, or MatricesUnavailable.
std::vector<IrrepMatrices> all_irrep_matrices(const CharacterTable& table);

/// Checks that `mats` is a unitary representation of `g` (all square, same
/// size, unitary, multiplicative). Returns a description of the first
/// failing relation, or nothing.
std::optional<std::string> representation_defect(const FiniteGroup& g,
                                                  const std::vector<Eigen::MatrixXcd>& mats,
                                                  double tolerance = kMatrixTolerance);

/// Block-diagonal direct sum, element by element.
std::vector<Eigen::MatrixXcd> direct_sum(const std::vector<const IrrepMatrices*>& blocks);

/// Element of the group algebra C[G]: one coefficient per lambda_g.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement(std::shared_ptr<const FiniteGroup> g, std::vector<Complex> coeffs);

  static GroupAlgebraElement zero(std::shared_ptr<const FiniteGroup> g);
  static GroupAlgebraElement lambda(std::shared_ptr<const FiniteGroup> g, Element x);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](Element x) const { return coeffs_.at(x); }
  const FiniteGroup& group() const { return *g_; }

  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(Complex s) const;
  GroupAlgebraElement adjoint() const;

  /// Largest coefficient-wise distance.
  double distance(const GroupAlgebraElement& o) const;

 private:
  std::shared_ptr<const FiniteGroup> g_;
  std::vector<Complex> coeffs_;
};

/// e(pi)_ij = (n_pi / |G|) sum_g conj(pi(g)_ij) lambda_g, as an n_pi x n_pi
/// array indexed [i][j].
std::vector<std::vector<GroupAlgebraElement>> matrix_units(const CharacterTable& table,
                                                           const IrrepMatrices& m);

/// z(pi) = (n_pi / |G|) sum_g conj(chi_pi(g)) lambda_g.
GroupAlgebraElement central_idempotent(const CharacterTable& table, std::size_t irrep);

struct ExpansionReport {
  double max_deviation = 0.0;
  double tolerance = kMatrixTolerance;
  bool passed = false;
};

/// Checks lambda_g = sum_pi sum_ij pi(g)_ij e(pi)_ij for every g. Needs one
/// IrrepMatrices per irrep, in table order.
ExpansionReport lambda_expansion_check(const CharacterTable& table,
                                       const std::vector<IrrepMatrices>& all);

struct MatrixUnitEntry {
  std::size_t irrep = 0;
  int dim = 0;
  // max |e_ij e_kl - delta_jk e_il|
  double product_deviation = 0.0;
  // max |e_ij^* - e_ji|
  double adjoint_deviation = 0.0;
  // |z - sum_i e_ii|
  double trace_deviation = 0.0;
  // max(|z^2 - z|, |z^* - z|, max_g |z lambda_g - lambda_g z|)
  double central_deviation = 0.0;
};

struct MatrixUnitReport {
  std::vector<MatrixUnitEntry> entries;
  // |sum_pi z(pi) - lambda_e|
  double completeness_deviation = 0.0;
  ExpansionReport expansion;
  double relation_tolerance = kMatrixTolerance;
  double completeness_tolerance = 1e-12;

  bool passed() const;
};

/// Every matrix-unit and central-idempotent relation for all irreps, using
/// builtin matrices. Throws MatricesUnavailable.
MatrixUnitReport verify_matrix_units(const CharacterTable& table);
MatrixUnitReport verify_matrix_units(const CharacterTable& table,
                                     const std::vector<IrrepMatrices>& all);

}  // namespace cuntzk
