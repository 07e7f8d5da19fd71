#include "cuntzk/k_engine.hpp"

#include <algorithm>
#include <cmath>

#include "cuntzk/error.hpp"

namespace cuntzk {

const char* algebra_name(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::CrossedProduct: return "crossed_product";
    case AlgebraKind::FixedPoint: return "fixed_point";
    case AlgebraKind::OInfinityCrossedProduct: return "o_infinity_crossed_product";
  }
  return "?";
}

const char* convention_name(LabelConvention c) {
  return c == LabelConvention::Appendix ? "appendix" : "conjugate";
}

QuasiFreeActionSpec action_spec(const RepRingElement& rep_class) {
  for (std::size_t p = 0; p < rep_class.coeffs().size(); ++p)
    if (rep_class[p] < 0)
      throw Error(ErrorCode::ValidationFailed,
                  "negative multiplicity for " + rep_class.ring().table().irrep_label(p));
  const Integer dim = rep_class.dim();
  if (dim < 2)
    throw Error(ErrorCode::DimensionTooSmall,
                "quasi-free actions need n >= 2, got n = " + dim.str());
  if (dim > 1000000) throw Error(ErrorCode::UnsupportedParameter, "n too large");

  QuasiFreeActionSpec spec{rep_class, dim.convert_to<long long>(), false, {}};
  const auto& table = rep_class.ring().table();
  const auto chi = rep_class.character();
  const double n = static_cast<double>(spec.n);
  for (Element g = 0; g < table.group().order(); ++g) {
    const Complex v = chi[table.classes().class_of[g]];
    if (std::abs(v - n) <= kIntegralityTolerance) spec.kernel_subgroup.push_back(g);
  }
  if (std::find(spec.kernel_subgroup.begin(), spec.kernel_subgroup.end(),
                table.group().identity()) == spec.kernel_subgroup.end())
    throw Error(ErrorCode::IntegralityViolation, "character at the identity differs from n");
  spec.faithful = spec.kernel_subgroup.size() == 1;
  return spec;
}

QuasiFreeActionSpec action_spec(const RepRing& ring,
                                const std::map<std::size_t, long long>& multiset) {
  if (multiset.empty()) throw Error(ErrorCode::DimensionTooSmall, "empty representation");
  for (const auto& [irrep, mult] : multiset)
    if (mult < 0)
      throw Error(ErrorCode::ValidationFailed,
                  "negative multiplicity " + std::to_string(mult) + " for irrep " +
                      std::to_string(irrep));
  return action_spec(class_of(ring, multiset));
}

namespace {

KGroupsResult assemble(const RepRing& ring, IntMatrix defining, AlgebraKind kind,
                       bool k1_from_kernel) {
  KGroupsResult r;
  r.algebra = kind;
  r.k0 = cokernel(defining);
  const auto& s = r.k0.smith();
  if (k1_from_kernel)
    for (std::size_t j = s.rank; j < defining.cols(); ++j) r.k1_basis.push_back(s.V.column(j));
  r.defining_matrix = std::move(defining);
  const auto& table = ring.table();
  for (std::size_t p = 0; p < ring.rank(); ++p) {
    IntVector e(ring.rank());
    e[p] = 1;
    r.generators.push_back({p, "[e(" + table.irrep_label(p) + ")_11]",
                            "[e(" + table.irrep_label(table.conjugate(p)) + ")_11]",
                            r.k0.project(e)});
  }
  return r;
}

}  // namespace

KGroupsResult k_groups_crossed_product(const QuasiFreeActionSpec& spec) {
  const std::size_t k = spec.ring().rank();
  const IntMatrix m = mult_matrix(spec.rep_class.conjugate()).matrix;
  return assemble(spec.ring(), IntMatrix::identity(k) - m, AlgebraKind::CrossedProduct, true);
}

KGroupsResult k_groups_fixed_point(const QuasiFreeActionSpec& spec) {
  if (!spec.faithful)
    throw Error(ErrorCode::NotFaithful,
                "action has a kernel of order " + std::to_string(spec.kernel_subgroup.size()) +
                    "; pass it through quotient_action first");
  KGroupsResult r = k_groups_crossed_product(spec);
  r.algebra = AlgebraKind::FixedPoint;
  return r;
}

KGroupsResult k_groups_o_infinity(const RepRing& ring) {
  const std::size_t k = ring.rank();
  return assemble(ring, IntMatrix(k, k), AlgebraKind::OInfinityCrossedProduct, false);
}

QuotientAction quotient_action(const QuasiFreeActionSpec& spec, BurnsideOptions options) {
  const FiniteGroup& g = spec.ring().table().group();
  const auto& h = spec.kernel_subgroup;
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> coset_of(g.order(), kUnset);
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (coset_of[x] != kUnset) continue;
    const Element id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element y : h) coset_of[g.mul(x, y)] = id;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<long long>> table(q, std::vector<long long>(q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) table[a][b] = coset_of[g.mul(reps[a], reps[b])];
  std::vector<std::string> labels;
  for (Element r : reps) labels.push_back(g.label(r) + "H");
  FiniteGroup quotient = group_from_table(table, std::move(labels));

  RepRing qring(character_table(quotient, options));
  const auto& qt = qring.table();
  const auto chi = spec.rep_class.character();
  const auto& gclasses = spec.ring().table().classes();
  std::vector<Complex> pushed(qt.classes().count());
  for (std::size_t c = 0; c < pushed.size(); ++c)
    pushed[c] = chi[gclasses.class_of[reps[qt.classes().reps[c]]]];
  std::map<std::size_t, long long> mult;
  for (std::size_t p = 0; p < qring.rank(); ++p)
    if (const long long m = inner_product(qt, pushed, qt.values(p)); m != 0) mult[p] = m;
  QuasiFreeActionSpec qspec = action_spec(qring, mult);
  if (qspec.n != spec.n)
    throw Error(ErrorCode::IntegralityViolation, "quotient representation changed dimension");
  return {std::move(quotient), std::move(coset_of), std::move(qring), std::move(qspec)};
}

DualActionMaps dual_action_k_map(const QuasiFreeActionSpec& spec, const KGroupsResult& k,
                                 const RepRingElement& pi) {
  if (!(pi.ring() == spec.ring()))
    throw Error(ErrorCode::TableMismatch, "class belongs to a different representation ring");
  const IntMatrix n = mult_matrix(pi).matrix;
  if (!(n * k.defining_matrix == k.defining_matrix * n))
    throw Error(ErrorCode::NotInvariant, "multiplication map does not commute with 1 - M");
  return {descend_endomorphism(n, k.k0), restrict_endomorphism(n, k.k1_basis)};
}

MultMatrix lambda_endomorphism_matrix(const QuasiFreeActionSpec& spec) {
  return mult_matrix(spec.rep_class);
}

GrDecision gr_decide(const IntMatrix& restricted_map, const IntVector& k1_class) {
  const std::size_t r = restricted_map.rows();
  if (restricted_map.cols() != r)
    throw Error(ErrorCode::DimensionMismatch, "restricted map must be square");
  if (k1_class.size() != r)
    throw Error(ErrorCode::DimensionMismatch,
                "class has " + std::to_string(k1_class.size()) + " coordinates, K_1 has rank " +
                    std::to_string(r));
  GrDecision d;
  d.restricted_map = restricted_map;
  const IntMatrix a = IntMatrix::identity(r) - restricted_map;
  const FgAbelianGroup coker = cokernel(a);
  d.obstruction_group = coker.describe();
  if (auto x = solve(coker.smith(), k1_class)) {
    if (a * *x != k1_class) throw Error(ErrorCode::NotInvariant, "witness fails to verify");
    d.holds = true;
    d.witness = std::move(x);
  } else {
    d.refutation = coker.project(k1_class);
    if (is_zero(d.refutation))
      throw Error(ErrorCode::NotInvariant, "unsolvable system with zero cokernel class");
  }
  return d;
}

GrDecision gr_criterion(const QuasiFreeActionSpec& target, const RepRingElement& pi_alpha_source,
                        const IntVector& k1_class) {
  if (!(pi_alpha_source.ring() == target.ring()))
    throw Error(ErrorCode::TableMismatch, "source class belongs to a different group table");
  const KGroupsResult k = k_groups_crossed_product(target);
  if (k1_class.size() != k.k1_rank())
    throw Error(ErrorCode::DimensionMismatch,
                "class has " + std::to_string(k1_class.size()) + " coordinates, K_1 has rank " +
                    std::to_string(k.k1_rank()));
  const IntMatrix r = restrict_endomorphism(mult_matrix(pi_alpha_source).matrix, k.k1_basis);
  return gr_decide(r, k1_class);
}

KteReport kte_check(const FgAbelianGroup& k0, const RepRing& ring,
                    const std::map<std::size_t, IntVector>& classes) {
  KteReport rep;
  rep.torsion_free = k0.torsion().empty();
  rep.k_trivial = true;
  rep.z_variant_trivial = true;
  for (const auto& [irrep, coords] : classes) {
    if (irrep == 0 || irrep >= ring.rank())
      throw Error(ErrorCode::UnknownIrrep,
                  "expected a nontrivial irrep index in [1, " + std::to_string(ring.rank()) +
                      "), got " + std::to_string(irrep));
    KteEntry e;
    e.irrep = irrep;
    e.coords = k0.reduce(coords);
    e.zero = is_zero(e.coords);
    IntVector z = coords;
    for (auto& x : z) x *= ring.table().dim(irrep);
    e.z_coords = k0.reduce(z);
    e.z_zero = is_zero(e.z_coords);
    if (rep.torsion_free && e.zero != e.z_zero)
      throw Error(ErrorCode::IntegralityViolation,
                  "torsion-free K_0 with inconsistent e/z classes for irrep " +
                      std::to_string(irrep));
    rep.k_trivial = rep.k_trivial && e.zero;
    rep.z_variant_trivial = rep.z_variant_trivial && e.z_zero;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

KteReport kte_check_embedding(const KGroupsResult& k, const RepRing& ring) {
  std::map<std::size_t, IntVector> classes;
  for (std::size_t p = 1; p < ring.rank(); ++p) {
    // Under the conjugate labeling e(pi)_11 sits in slot conj(pi).
    const std::size_t slot =
        k.convention == LabelConvention::Appendix ? p : ring.table().conjugate(p);
    classes[p] = k.generators.at(slot).k0_coords;
  }
  return kte_check(k.k0, ring, classes);
}

}  // namespace cuntzk
