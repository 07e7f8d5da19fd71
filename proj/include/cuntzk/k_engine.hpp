#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuntzk/lattice.hpp"
#include "cuntzk/rep_ring.hpp"

namespace cuntzk {

/// A quasi-free action of G on O_n, given by the class of the unitary
/// representation on the span of the generating isometries.
struct QuasiFreeActionSpec {
  RepRingElement rep_class;
  long long n = 0;
  bool faithful = false;
  /// Elements acting trivially, ascending.
  std::vector<Element> kernel_subgroup;

  const RepRing& ring() const { return rep_class.ring(); }
};

/// Validates multiplicities (nonnegative, total dimension >= 2) and computes
/// the kernel of the representation from its character. Throws
/// DimensionTooSmall, UnknownIrrep, ValidationFailed.
QuasiFreeActionSpec action_spec(const RepRing& ring, const std::map<std::size_t, long long>& multiset);
QuasiFreeActionSpec action_spec(const RepRingElement& rep_class);

enum class AlgebraKind { CrossedProduct, FixedPoint, OInfinityCrossedProduct };
const char* algebra_name(AlgebraKind kind);

/// Which K_0 class the ambient basis slot of irrep pi is identified with.
///   Appendix:  [pi] -> K_0(iota)([e(pi)_11])
///   Conjugate: [pi] -> K_0(iota)([e(conj pi)_11]) (the Green-Julg image of
///              the class of pi)
enum class LabelConvention { Appendix, Conjugate };
const char* convention_name(LabelConvention c);

struct GeneratorLabel {
  std::size_t irrep = 0;
  std::string appendix_label;   // "[e(chi1)_11]"
  std::string conjugate_label;  // "[e(chi2)_11]"
  IntVector k0_coords;          // class of the basis slot in K_0 coordinates
};

/// K-theory of O_n x| G (or O_n^G), read off the exact sequence
///   0 -> K_1 -> Z^G -> Z^G -> K_0 -> 0 with middle map 1 - [conj pi_alpha].
struct KGroupsResult {
  AlgebraKind algebra = AlgebraKind::CrossedProduct;
  FgAbelianGroup k0;
  /// Z-basis of K_1 inside the representation ring.
  std::vector<IntVector> k1_basis;
  /// 1 - M_{conj pi_alpha}.
  IntMatrix defining_matrix;
  std::vector<GeneratorLabel> generators;
  LabelConvention convention = LabelConvention::Appendix;

  std::size_t k1_rank() const { return k1_basis.size(); }
};

KGroupsResult k_groups_crossed_product(const QuasiFreeActionSpec& spec);

/// Same groups, identified with K_*(O_n^G). Throws NotFaithful for actions
/// with nontrivial kernel; see `quotient_action`.
KGroupsResult k_groups_fixed_point(const QuasiFreeActionSpec& spec);

/// K_*(O_infinity x| G): K_0 free on the irreps, K_1 = 0.
KGroupsResult k_groups_o_infinity(const RepRing& ring);

/// An action with kernel H, pushed down to a faithful action of G/H.
struct QuotientAction {
  FiniteGroup quotient;
  /// Coset index of every element of G.
  std::vector<Element> coset_of;
  RepRing ring;
  QuasiFreeActionSpec spec;
};

QuotientAction quotient_action(const QuasiFreeActionSpec& spec, BurnsideOptions options = {});

/// Induced maps of multiplication by `pi` on K_0 (cokernel coordinates) and
/// on K_1 (coordinates in the K_1 basis).
struct DualActionMaps {
  IntMatrix on_k0;
  IntMatrix on_k1;
};

DualActionMaps dual_action_k_map(const QuasiFreeActionSpec& spec, const KGroupsResult& k,
                                 const RepRingElement& pi);

/// Multiplication by [pi_alpha]: the map induced on K-theory by the canonical
/// endomorphism of the crossed product.
MultMatrix lambda_endomorphism_matrix(const QuasiFreeActionSpec& spec);

struct GrDecision {
  bool holds = false;
  /// Some x with (1 - R) x = class, verified exactly.
  std::optional<IntVector> witness;
  /// Nonzero image of the class in coker(1 - R) when the decision fails.
  IntVector refutation;
  /// R, the restricted K_1 map.
  IntMatrix restricted_map;
  /// The cokernel the refutation lives in, e.g. "Z/2".
  std::string obstruction_group;
};

/// Decides whether `k1_class` lies in the image of 1 - R on Z^r.
GrDecision gr_decide(const IntMatrix& restricted_map, const IntVector& k1_class);

/// Decides whether a K_1 class of the target crossed product is in the image
/// of 1 - K_1(dual action of pi_alpha_source). Throws DimensionMismatch when
/// the class is not expressed in the target's K_1 basis.
GrDecision gr_criterion(const QuasiFreeActionSpec& target, const RepRingElement& pi_alpha_source,
                        const IntVector& k1_class);

struct KteEntry {
  std::size_t irrep = 0;
  IntVector coords;
  bool zero = false;
  /// Class of z(pi) = n_pi times the class of e(pi)_11.
  IntVector z_coords;
  bool z_zero = false;
};

struct KteReport {
  bool k_trivial = false;
  bool torsion_free = false;
  /// Only meaningful when torsion_free.
  bool z_variant_trivial = false;
  std::vector<KteEntry> entries;
};

/// Checks that every listed class [e(pi)_11] (pi nontrivial) vanishes in K_0.
/// Throws UnknownIrrep for the trivial irrep or an index out of range.
KteReport kte_check(const FgAbelianGroup& k0, const RepRing& ring,
                    const std::map<std::size_t, IntVector>& classes);

/// kte_check applied to the embedding of C*(G) in the crossed product: the
/// class of e(pi)_11 is the generator label of the basis slot pi.
KteReport kte_check_embedding(const KGroupsResult& k, const RepRing& ring);

}  // namespace cuntzk
