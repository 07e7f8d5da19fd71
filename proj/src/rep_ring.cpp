#include "cuntzk/rep_ring.hpp"

#include "cuntzk/error.hpp"

namespace cuntzk {

RepRing::RepRing(CharacterTable table) {
  const std::size_t k = table.count();
  std::vector<std::int64_t> n(k * k * k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t s = p; s < k; ++s) {
      const auto prod = class_function_product(table.values(p), table.values(s));
      for (std::size_t t = 0; t < k; ++t) {
        const long long m = inner_product(table, prod, table.values(t));
        n[(p * k + s) * k + t] = m;
        n[(s * k + p) * k + t] = m;
      }
    }
  d_ = std::make_shared<const Data>(Data{std::move(table), std::move(n)});
}

RepRingElement RepRing::zero() const { return RepRingElement(*this, IntVector(rank())); }

RepRingElement RepRing::basis(std::size_t irrep) const {
  if (irrep >= rank()) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  IntVector c(rank());
  c[irrep] = 1;
  return RepRingElement(*this, std::move(c));
}

RepRingElement RepRing::regular() const {
  IntVector c(rank());
  for (std::size_t p = 0; p < rank(); ++p) c[p] = table().dim(p);
  return RepRingElement(*this, std::move(c));
}

RepRingElement::RepRingElement(RepRing ring, IntVector coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ring_.rank())
    throw Error(ErrorCode::DimensionMismatch,
                "element has " + std::to_string(coeffs_.size()) + " coefficients, ring has rank " +
                    std::to_string(ring_.rank()));
}

Integer RepRingElement::dim() const {
  Integer d = 0;
  for (std::size_t p = 0; p < coeffs_.size(); ++p) d += coeffs_[p] * ring_.table().dim(p);
  return d;
}

std::vector<Complex> RepRingElement::character() const {
  const auto& t = ring_.table();
  std::vector<Complex> chi(t.classes().count());
  for (std::size_t p = 0; p < coeffs_.size(); ++p) {
    if (coeffs_[p] == 0) continue;
    const double c = coeffs_[p].convert_to<double>();
    for (std::size_t k = 0; k < chi.size(); ++k) chi[k] += c * t.values(p)[k];
  }
  return chi;
}

RepRingElement RepRingElement::conjugate() const {
  IntVector c(coeffs_.size());
  for (std::size_t p = 0; p < coeffs_.size(); ++p) c[ring_.table().conjugate(p)] = coeffs_[p];
  return RepRingElement(ring_, std::move(c));
}

bool RepRingElement::is_effective() const {
  for (const auto& c : coeffs_)
    if (c < 0) return false;
  return true;
}

namespace {

void require_same(const RepRingElement& a, const RepRingElement& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorCode::TableMismatch, "elements belong to different representation rings");
}

}  // namespace

RepRingElement RepRingElement::operator+(const RepRingElement& o) const {
  require_same(*this, o);
  IntVector c = coeffs_;
  for (std::size_t p = 0; p < c.size(); ++p) c[p] += o.coeffs_[p];
  return RepRingElement(ring_, std::move(c));
}

RepRingElement RepRingElement::operator-(const RepRingElement& o) const {
  require_same(*this, o);
  IntVector c = coeffs_;
  for (std::size_t p = 0; p < c.size(); ++p) c[p] -= o.coeffs_[p];
  return RepRingElement(ring_, std::move(c));
}

RepRingElement RepRingElement::operator*(const Integer& s) const {
  IntVector c = coeffs_;
  for (auto& x : c) x *= s;
  return RepRingElement(ring_, std::move(c));
}

bool RepRingElement::operator==(const RepRingElement& o) const {
  return ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

RepRingElement class_of(const RepRing& ring, const std::map<std::size_t, long long>& multiset) {
  IntVector c(ring.rank());
  for (const auto& [irrep, mult] : multiset) {
    if (irrep >= ring.rank())
      throw Error(ErrorCode::UnknownIrrep, "irrep index " + std::to_string(irrep) +
                                               " (ring has rank " + std::to_string(ring.rank()) +
                                               ")");
    c[irrep] += mult;
  }
  return RepRingElement(ring, std::move(c));
}

MultMatrix mult_matrix(const RepRingElement& a) {
  const RepRing& ring = a.ring();
  const std::size_t k = ring.rank();
  IntMatrix m(k, k);
  for (std::size_t p = 0; p < k; ++p) {
    if (a[p] == 0) continue;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = 0; t < k; ++t) {
        const auto n = ring.structure_constant(p, s, t);
        if (n != 0) m(t, s) += a[p] * n;
      }
  }
  return {std::move(m), a};
}

RepRingElement product(const RepRingElement& a, const RepRingElement& b) {
  require_same(a, b);
  return RepRingElement(a.ring(), mult_matrix(a).matrix * b.coeffs());
}

}  // namespace cuntzk
