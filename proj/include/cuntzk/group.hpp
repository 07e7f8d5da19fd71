#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cuntzk {

using Element = std::uint32_t;

/// Largest group order the dense multiplication-table representation accepts.
inline constexpr std::size_t kMaxGroupOrder = 720;

/// Builtin family descriptor. `factors` is used only by direct products.
struct FamilySpec {
  enum class Kind { Cyclic, Dihedral, Symmetric, DirectProduct };

  Kind kind = Kind::Cyclic;
  int n = 1;
  std::vector<FamilySpec> factors;

  std::string name() const;
  bool operator==(const FamilySpec&) const = default;
};

struct GroupOptions {
  bool check_associativity = true;
  // Associativity is O(order^3); tables above this order skip the check.
  std::size_t associativity_cap = 256;
};

/// A finite group stored as a dense multiplication table. Immutable after
/// construction.
class FiniteGroup {
 public:
  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[std::size_t(a) * order_ + b]; }
  Element identity() const { return identity_; }
  Element inverse(Element a) const { return inv_[a]; }
  const std::vector<Element>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element a) const;
  const std::optional<FamilySpec>& family() const { return family_; }

  Element power(Element a, long long k) const;
  std::size_t element_order(Element a) const;
  bool is_abelian() const;

 private:
  friend FiniteGroup group_from_table(const std::vector<std::vector<long long>>&,
                                      std::vector<std::string>, GroupOptions);
  friend FiniteGroup builtin_group(const FamilySpec&);
  friend FiniteGroup direct_product(const FiniteGroup&, const FiniteGroup&);

  std::size_t order_ = 0;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
  std::optional<FamilySpec> family_;
};

/// Validates a square multiplication table. Throws NotAssociative, NoIdentity
/// or MissingInverse naming the witness, and ValidationFailed for tables that
/// are not square or have entries out of range.
FiniteGroup group_from_table(const std::vector<std::vector<long long>>& table,
                             std::vector<std::string> labels = {}, GroupOptions options = {});

// Canonical element orderings:
//   cyclic(n):    index k is g^k.
//   dihedral(n):  order 2n; index k < n is r^k, index n + k is s r^k, with
//                 s r s = r^-1.
//   symmetric(n): permutations of {0..n-1} in lexicographic order of their
//                 images; product is composition, (ab)(i) = a(b(i)).
//   direct_product(G, H): pair (g, h) has index g * |H| + h.
FiniteGroup builtin_group(const FamilySpec& family);

FiniteGroup cyclic(int n);
FiniteGroup dihedral(int n);
FiniteGroup symmetric(int n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Conjugacy classes. Class 0 holds the identity; the remaining classes are
/// ordered by element order, then by their smallest element index.
struct ConjugacyData {
  std::vector<std::size_t> class_of;
  std::vector<Element> reps;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<Element>> members;
  std::vector<std::size_t> rep_orders;
  // Class containing the inverses of class c.
  std::vector<std::size_t> inverse_class;

  std::size_t count() const { return reps.size(); }
};

ConjugacyData conjugacy_classes(const FiniteGroup& g);

/// a(i, j, k) = #{(x, y) : x in C_i, y in C_j, x y = c} for a fixed c in C_k.
class ClassMultTensor {
 public:
  explicit ClassMultTensor(std::size_t k) : k_(k), data_(k * k * k, 0) {}

  std::size_t count() const { return k_; }
  std::int64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * k_ + j) * k_ + k];
  }
  std::int64_t& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * k_ + j) * k_ + k];
  }

 private:
  std::size_t k_;
  std::vector<std::int64_t> data_;
};

ClassMultTensor class_mult_coefficients(const FiniteGroup& g, const ConjugacyData& classes);

}  // namespace cuntzk
