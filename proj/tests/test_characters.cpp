#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cuntzk/characters.hpp"
#include "cuntzk/error.hpp"

using namespace cuntzk;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

bool near(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

// Standard 2-dim representation of symmetric(3) on the plane x+y+z = 0,
// written independently of the library: orthonormal basis
// u = (1,-1,0)/sqrt2, v = (1,1,-2)/sqrt6, permutation matrices compressed.
std::vector<Eigen::MatrixXcd> s3_standard(const FiniteGroup& s3) {
  Eigen::Matrix<double, 3, 2> basis;
  basis << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0,
      -2 / std::sqrt(6.0);
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<Eigen::MatrixXcd> out;
  for (Element g = 0; g < s3.order(); ++g) {
    Eigen::Matrix3d perm = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) perm(perms[g][i], i) = 1.0;
    out.push_back((basis.transpose() * perm * basis).cast<Complex>());
  }
  return out;
}

}  // namespace

TEST_CASE("Z/2 table") {
  const auto t = character_table(cyclic(2));
  CHECK(t.dims() == std::vector<int>{1, 1});
  CHECK(near(t.values(0)[1], 1.0));
  CHECK(near(t.values(1)[0], 1.0));
  CHECK(near(t.values(1)[1], -1.0));
  CHECK(t.irrep_label(0) == "triv");
  CHECK(t.irrep_label(1) == "chi1");
}

TEST_CASE("S3 table") {
  const auto g = symmetric(3);
  const auto t = character_table(g);
  CHECK(t.dims() == std::vector<int>{1, 1, 2});
  // classes: identity, transpositions (order 2), 3-cycles (order 3).
  CHECK(t.classes().rep_orders == std::vector<std::size_t>{1, 2, 3});
  CHECK(near(t.values(2)[0], 2.0));
  CHECK(near(t.values(2)[1], 0.0));
  CHECK(near(t.values(2)[2], -1.0));
  CHECK(near(t.values(1)[1], -1.0));
}

TEST_CASE("cyclic(3) characters are cube roots of unity") {
  const auto g = cyclic(3);
  const auto t = character_table(g);
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  for (std::size_t p = 0; p < 3; ++p)
    for (Element x = 0; x < 3; ++x) {
      const Complex v = t.value(p, x);
      CHECK((near(v, 1.0) || near(v, w) || near(v, std::conj(w))));
      // a homomorphism to C*
      for (Element y = 0; y < 3; ++y) CHECK(near(t.value(p, g.mul(x, y)), v * t.value(p, y)));
    }
  CHECK(t.conjugate(0) == 0);
  CHECK(t.conjugate(1) == 2);
  CHECK(t.conjugate(2) == 1);
}

TEST_CASE("orthogonality and degrees on builtins of order <= 24") {
  std::vector<FiniteGroup> gs;
  for (int n = 1; n <= 24; ++n) gs.push_back(cyclic(n));
  for (int n = 1; n <= 12; ++n) gs.push_back(dihedral(n));
  for (int n = 1; n <= 4; ++n) gs.push_back(symmetric(n));
  gs.push_back(direct_product(cyclic(2), cyclic(2)));
  gs.push_back(direct_product(cyclic(2), symmetric(3)));
  gs.push_back(direct_product(cyclic(4), symmetric(3)));
  for (const auto& g : gs) {
    const auto t = character_table(g);
    CHECK(t.count() == t.classes().count());
    long long sum = 0;
    for (int d : t.dims()) sum += d * d;
    CHECK(sum == static_cast<long long>(g.order()));
    CHECK(t.residuals().row <= kOrthogonalityTolerance);
    CHECK(t.residuals().column <= kOrthogonalityTolerance);
    // conj_map is an involution, fixing exactly the real characters.
    for (std::size_t p = 0; p < t.count(); ++p) {
      CHECK(t.conjugate(t.conjugate(p)) == p);
      bool real = true;
      for (Complex v : t.values(p)) real = real && std::abs(v.imag()) <= kIntegralityTolerance;
      CHECK((t.conjugate(p) == p) == real);
    }
    // canonical order
    CHECK(std::is_sorted(t.dims().begin() + 1, t.dims().end()));
  }
}

TEST_CASE("larger symmetric groups") {
  CHECK(character_table(symmetric(5)).dims() == std::vector<int>{1, 1, 4, 4, 5, 5, 6});
  const auto t6 = character_table(symmetric(6));
  CHECK(t6.count() == 11);
}

TEST_CASE("seed does not change the canonical table") {
  const auto g = dihedral(6);
  BurnsideOptions a, b;
  b.seed = 12345;
  const auto ta = character_table(g, a), tb = character_table(g, b);
  CHECK(ta.fingerprint() == tb.fingerprint());
}

TEST_CASE("inner products") {
  const auto z2 = character_table(cyclic(2));
  CHECK(inner_product(z2, z2.values(0), z2.values(0)) == 1);
  CHECK(inner_product(z2, z2.values(0), z2.values(1)) == 0);

  const auto s3 = character_table(symmetric(3));
  const auto sq = class_function_product(s3.values(2), s3.values(2));
  CHECK(inner_product(s3, sq, s3.values(0)) == 1);
  CHECK(inner_product(s3, sq, s3.values(1)) == 1);
  CHECK(inner_product(s3, sq, s3.values(2)) == 1);

  const std::vector<Complex> half = {0.5, 0.5, 0.5};
  CHECK(code_of([&] { inner_product(s3, half, s3.values(0)); }) == ErrorCode::IntegralityViolation);
}

TEST_CASE("irrep labels") {
  const auto t = character_table(symmetric(3));
  CHECK(t.irrep_index("triv") == 0);
  CHECK(t.irrep_index("chi2") == 2);
  CHECK(t.irrep_index("1") == 1);
  CHECK(code_of([&] { t.irrep_index("chi3"); }) == ErrorCode::UnknownIrrep);
  CHECK(code_of([&] { t.irrep_index("std"); }) == ErrorCode::UnknownIrrep);
}

TEST_CASE("table import revalidates") {
  const auto g = cyclic(2);
  const auto t = character_table_from_values(g, {{1.0, -1.0}, {1.0, 1.0}});
  CHECK(t.fingerprint() == character_table(g).fingerprint());
  CHECK(code_of([&] { character_table_from_values(g, {{1.0, 1.0}, {1.0, 1.0}}); }) ==
        ErrorCode::ValidationFailed);
  CHECK(code_of([&] { character_table_from_values(g, {{1.0, 1.0}}); }) == ErrorCode::ValidationFailed);
}

TEST_CASE("builtin irrep matrices") {
  const auto z4 = character_table(cyclic(4));
  for (std::size_t p = 0; p < z4.count(); ++p) {
    const auto m = irrep_matrices(z4, p);
    CHECK(m.dim() == 1);
    for (Element x = 0; x < 4; ++x) CHECK(near(m[x](0, 0), z4.value(p, x)));
  }

  const auto d4 = character_table(dihedral(4));
  REQUIRE(d4.dims().back() == 2);
  const auto m = irrep_matrices(d4, d4.count() - 1);
  CHECK_FALSE(representation_defect(d4.group(), m.matrices()).has_value());
  for (Element x = 0; x < 8; ++x) CHECK(near(m[x].trace(), d4.value(d4.count() - 1, x)));
  // r acts as a quarter rotation, s as a reflection.
  CHECK(near(m[1](0, 0), 0.0));
  CHECK(near(std::abs(m[1](1, 0)), 1.0));
  CHECK(near(m[4].determinant(), -1.0));

  const auto s3 = character_table(symmetric(3));
  CHECK(code_of([&] { irrep_matrices(s3, 2); }) == ErrorCode::MatricesUnavailable);
}

TEST_CASE("user-supplied matrices") {
  const auto g = symmetric(3);
  const auto t = character_table(g);
  const auto std_rep = s3_standard(g);
  const auto m = irrep_matrices(t, 2, std_rep);
  CHECK(m.dim() == 2);

  auto scaled = std_rep;
  scaled[1] *= 2.0;
  CHECK(code_of([&] { irrep_matrices(t, 2, scaled); }) == ErrorCode::ValidationFailed);
  // Two copies of the trivial representation: homomorphism holds, trace does not.
  std::vector<Eigen::MatrixXcd> wrong;
  for (Element x = 0; x < 6; ++x) wrong.push_back(Eigen::MatrixXcd::Identity(2, 2));
  CHECK(code_of([&] { irrep_matrices(t, 2, wrong); }) == ErrorCode::ValidationFailed);
}

TEST_CASE("matrix units for Z/2") {
  const auto g = share(cyclic(2));
  const auto t = character_table(*g);
  const auto e0 = matrix_units(t, irrep_matrices(t, 0));
  const auto e1 = matrix_units(t, irrep_matrices(t, 1));
  CHECK(near(e0[0][0][0], 0.5));
  CHECK(near(e0[0][0][1], 0.5));
  CHECK(near(e1[0][0][0], 0.5));
  CHECK(near(e1[0][0][1], -0.5));
  const auto total = central_idempotent(t, 0) + central_idempotent(t, 1);
  CHECK(total.distance(GroupAlgebraElement::lambda(t.group_ptr(), 0)) <= 1e-15);
}

TEST_CASE("matrix units for the standard irrep of S3") {
  const auto g = symmetric(3);
  const auto t = character_table(g);
  const auto m = irrep_matrices(t, 2, s3_standard(g));
  const auto e = matrix_units(t, m);
  const auto gp = t.group_ptr();
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const auto expect = j == k ? e[i][l] : GroupAlgebraElement::zero(gp);
          worst = std::max(worst, (e[i][j] * e[k][l]).distance(expect));
        }
  CHECK(worst <= 1e-9);
  const auto z = central_idempotent(t, 2);
  CHECK((e[0][0] + e[1][1]).distance(z) <= 1e-9);
  CHECK((z * z).distance(z) <= 1e-12);

  // z(std) = (n/|G|) chi(g): 4/6 at e, -2/6 on 3-cycles, 0 on transpositions.
  const auto& cls = t.classes();
  for (Element x = 0; x < 6; ++x) {
    const std::size_t order = cls.rep_orders[cls.class_of[x]];
    const double expect = order == 1 ? 4.0 / 6.0 : order == 3 ? -2.0 / 6.0 : 0.0;
    CHECK(near(z[x], expect));
  }

  // The e_ij span a 4-dimensional subspace of C[G].
  Eigen::MatrixXcd span(6, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (Element x = 0; x < 6; ++x) span(x, 2 * i + j) = e[i][j][x];
  CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(span).rank() == 4);

  std::vector<IrrepMatrices> all = {irrep_matrices(t, 0), irrep_matrices(t, 1), m};
  const auto report = verify_matrix_units(t, all);
  CHECK(report.passed());
  CHECK(report.expansion.max_deviation <= 1e-9);
}

TEST_CASE("central idempotent of the trivial irrep") {
  const auto t = character_table(dihedral(5));
  const auto z = central_idempotent(t, 0);
  for (Element x = 0; x < 10; ++x) CHECK(near(z[x], 0.1, 1e-15));
  CHECK((z * z).distance(z) <= 1e-15);
}

TEST_CASE("lambda expansion") {
  const auto t1 = character_table(cyclic(1));
  const auto r1 = lambda_expansion_check(t1, all_irrep_matrices(t1));
  CHECK(r1.max_deviation == 0.0);
  CHECK(r1.passed);

  const auto t2 = character_table(cyclic(2));
  const auto r2 = lambda_expansion_check(t2, all_irrep_matrices(t2));
  CHECK(r2.max_deviation == 0.0);

  const auto t3 = character_table(dihedral(3));
  const auto r3 = lambda_expansion_check(t3, all_irrep_matrices(t3));
  CHECK(r3.max_deviation < 1e-9);
}

TEST_CASE("matrix-unit relations for abelian and dihedral builtins") {
  std::vector<FiniteGroup> gs;
  for (int n = 1; n <= 12; ++n) gs.push_back(cyclic(n));
  gs.push_back(direct_product(cyclic(2), cyclic(2)));
  gs.push_back(direct_product(cyclic(2), cyclic(4)));
  gs.push_back(direct_product(cyclic(2), cyclic(6)));
  for (int n = 3; n <= 6; ++n) gs.push_back(dihedral(n));
  for (const auto& g : gs) {
    const auto t = character_table(g);
    const auto r = verify_matrix_units(t);
    CHECK(r.passed());
    CHECK(r.completeness_deviation <= 1e-12);
  }
}

TEST_CASE("direct sums and representation defects") {
  const auto t = character_table(cyclic(3));
  const auto a = irrep_matrices(t, 1), b = irrep_matrices(t, 2);
  const auto sum = direct_sum({&a, &b});
  CHECK(sum[1].rows() == 2);
  CHECK_FALSE(representation_defect(t.group(), sum).has_value());
  auto broken = sum;
  broken[1](0, 0) = 1.0;
  CHECK(representation_defect(t.group(), broken).has_value());
}

TEST_CASE("group algebra arithmetic") {
  const auto g = share(cyclic(3));
  const auto a = GroupAlgebraElement::lambda(g, 1), b = GroupAlgebraElement::lambda(g, 2);
  CHECK((a * b).distance(GroupAlgebraElement::lambda(g, 0)) == 0.0);
  CHECK(a.adjoint().distance(b) == 0.0);
  const auto c = a * Complex(0, 2);
  CHECK(near(c.adjoint()[2], Complex(0, -2)));
}
