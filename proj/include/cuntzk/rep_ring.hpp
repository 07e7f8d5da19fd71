#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "cuntzk/characters.hpp"
#include "cuntzk/lattice.hpp"

namespace cuntzk {

class RepRingElement;

/// The representation ring of a group, based on its irreps in canonical table
/// order. Holds the structure constants N(p, s, t) = <chi_p chi_s, chi_t>.
/// Cheap handle onto shared immutable data.
class RepRing {
 public:
  explicit RepRing(CharacterTable table);

  const CharacterTable& table() const { return d_->table; }
  std::size_t rank() const { return d_->table.count(); }
  const std::string& fingerprint() const { return d_->table.fingerprint(); }

  /// Multiplicity of irrep t in p (x) s.
  std::int64_t structure_constant(std::size_t p, std::size_t s, std::size_t t) const {
    const std::size_t k = rank();
    return d_->n[(p * k + s) * k + t];
  }

  RepRingElement basis(std::size_t irrep) const;
  RepRingElement zero() const;
  RepRingElement regular() const;

  bool operator==(const RepRing& o) const { return d_ == o.d_ || fingerprint() == o.fingerprint(); }

 private:
  struct Data {
    CharacterTable table;
    std::vector<std::int64_t> n;
  };
  std::shared_ptr<const Data> d_;
};

/// Integer combination of irreps (a virtual representation class).
class RepRingElement {
 public:
  RepRingElement(RepRing ring, IntVector coeffs);

  const RepRing& ring() const { return ring_; }
  const IntVector& coeffs() const { return coeffs_; }
  const Integer& operator[](std::size_t irrep) const { return coeffs_.at(irrep); }

  /// Virtual dimension sum coeffs * n_pi (the augmentation).
  Integer dim() const;
  /// Character as a class function.
  std::vector<Complex> character() const;
  /// Coefficients permuted through the conjugation map.
  RepRingElement conjugate() const;
  bool is_effective() const;

  RepRingElement operator+(const RepRingElement& o) const;
  RepRingElement operator-(const RepRingElement& o) const;
  RepRingElement operator*(const Integer& s) const;
  bool operator==(const RepRingElement& o) const;

 private:
  RepRing ring_;
  IntVector coeffs_;
};

/// Class of the representation sum_pi mult(pi) * pi. Throws UnknownIrrep.
RepRingElement class_of(const RepRing& ring, const std::map<std::size_t, long long>& multiset);

/// Matrix of multiplication by `a`: column s is the decomposition of a (x) s.
struct MultMatrix {
  IntMatrix matrix;
  RepRingElement source;
};

MultMatrix mult_matrix(const RepRingElement& a);

/// Ring product. Throws TableMismatch for elements of different rings.
RepRingElement product(const RepRingElement& a, const RepRingElement& b);

}  // namespace cuntzk
