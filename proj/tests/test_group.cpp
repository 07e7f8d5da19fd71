#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "cuntzk/error.hpp"
#include "cuntzk/group.hpp"
#include "oracles.hpp"

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

std::vector<std::vector<long long>> table_of(const FiniteGroup& g) {
  std::vector<std::vector<long long>> t(g.order(), std::vector<long long>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) t[a][b] = g.mul(a, b);
  return t;
}

std::vector<FiniteGroup> small_builtins() {
  std::vector<FiniteGroup> gs;
  for (int n = 1; n <= 12; ++n) gs.push_back(cyclic(n));
  for (int n = 1; n <= 8; ++n) gs.push_back(dihedral(n));
  for (int n = 1; n <= 4; ++n) gs.push_back(symmetric(n));
  gs.push_back(direct_product(cyclic(2), cyclic(2)));
  gs.push_back(direct_product(cyclic(2), symmetric(3)));
  gs.push_back(direct_product(cyclic(3), dihedral(4)));
  return gs;
}

}  // namespace

TEST_CASE("tables of order 1 and 2") {
  const auto g = group_from_table({{0}});
  CHECK(g.order() == 1);
  CHECK(g.identity() == 0);

  const auto z2 = group_from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inverse(1) == 1);
  CHECK(z2.is_abelian());
}

TEST_CASE("order-6 table from permutation composition") {
  // Permutations of {0,1,2}, composed by hand, independent of the builtin.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<long long>> t(6, std::vector<long long>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  const auto g = group_from_table(t);
  CHECK(g.order() == 6);
  CHECK(conjugacy_classes(g).count() == 3);
  CHECK(oracle::brute_classes(g).size() == 3);
}

TEST_CASE("invalid tables") {
  CHECK(code_of([] { group_from_table({{0, 1}}); }) == ErrorCode::ValidationFailed);
  CHECK(code_of([] { group_from_table({{0, 2}, {1, 0}}); }) == ErrorCode::ValidationFailed);
  CHECK(code_of([] { group_from_table({{1, 1}, {1, 1}}); }) == ErrorCode::NoIdentity);
  // Identity 0, but element 1 has no inverse.
  CHECK(code_of([] { group_from_table({{0, 1, 2}, {1, 1, 1}, {2, 1, 0}}); }) == ErrorCode::MissingInverse);
  // A Latin square with identity 0 that is not associative (order 5 loop).
  const std::vector<std::vector<long long>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(code_of([&] { group_from_table(loop); }) == ErrorCode::NotAssociative);
  GroupOptions lax;
  lax.check_associativity = false;
  CHECK_NOTHROW(group_from_table(loop, {}, lax));
}

TEST_CASE("labels") {
  const auto g = group_from_table({{0, 1}, {1, 0}}, {"e", "g"});
  CHECK(g.label(1) == "g");
  CHECK(code_of([] { group_from_table({{0, 1}, {1, 0}}, {"e"}); }) == ErrorCode::ValidationFailed);
}

TEST_CASE("builtin families") {
  CHECK(cyclic(1).order() == 1);
  CHECK(dihedral(3).order() == 6);
  CHECK(symmetric(4).order() == 24);
  CHECK(symmetric(6).order() == 720);
  CHECK(code_of([] { symmetric(7); }) == ErrorCode::UnsupportedParameter);
  CHECK(code_of([] { cyclic(0); }) == ErrorCode::UnsupportedParameter);

  const auto v4 = direct_product(cyclic(2), cyclic(2));
  CHECK(v4.order() == 4);
  const auto c = conjugacy_classes(v4);
  CHECK(c.count() == 4);
  for (auto s : c.sizes) CHECK(s == 1);
  REQUIRE(v4.family());
  CHECK(v4.family()->kind == FamilySpec::Kind::DirectProduct);
}

TEST_CASE("dihedral(3) is isomorphic to symmetric(3)") {
  const auto d3 = dihedral(3), s3 = symmetric(3);
  CHECK(oracle::isomorphic(d3, s3));
  CHECK(oracle::class_size_multiset(d3) == std::multiset<std::size_t>{1, 2, 3});
  CHECK_FALSE(oracle::isomorphic(cyclic(6), s3));
}

TEST_CASE("dihedral canonical ordering") {
  const int n = 5;
  const auto d = dihedral(n);
  const Element r = 1, s = n;
  for (int k = 0; k < n; ++k) {
    CHECK(d.power(r, k) == Element(k));
    CHECK(d.mul(s, d.power(r, k)) == Element(n + k));
  }
  CHECK(d.mul(d.mul(s, r), s) == d.inverse(r));
}

TEST_CASE("conjugacy classes of small groups") {
  const auto t = conjugacy_classes(cyclic(1));
  CHECK(t.count() == 1);
  CHECK(t.sizes[0] == 1);
  CHECK(conjugacy_classes(cyclic(4)).count() == 4);

  const auto s4 = symmetric(4);
  const auto c = conjugacy_classes(s4);
  CHECK(c.sizes == std::vector<std::size_t>{1, 6, 3, 8, 6});
  CHECK(oracle::class_size_multiset(s4) == std::multiset<std::size_t>{1, 3, 6, 6, 8});
}

TEST_CASE("classes agree with brute-force conjugation") {
  for (const auto& g : small_builtins()) {
    const auto c = conjugacy_classes(g);
    const auto brute = oracle::brute_classes(g);
    REQUIRE(c.count() == brute.size());
    CHECK(c.reps[0] == g.identity());
    for (std::size_t k = 0; k < c.count(); ++k) {
      const std::set<Element> mine(c.members[k].begin(), c.members[k].end());
      CHECK(std::count(brute.begin(), brute.end(), mine) == 1);
      CHECK(c.sizes[k] == mine.size());
      for (Element x : mine) CHECK(c.class_of[x] == k);
      CHECK(c.class_of[g.inverse(c.reps[k])] == c.inverse_class[k]);
    }
  }
}

TEST_CASE("Latin square property") {
  for (const auto& g : small_builtins()) {
    const std::size_t n = g.order();
    for (Element a = 0; a < n; ++a) {
      std::set<Element> row, col;
      for (Element b = 0; b < n; ++b) {
        row.insert(g.mul(a, b));
        col.insert(g.mul(b, a));
      }
      CHECK(row.size() == n);
      CHECK(col.size() == n);
    }
  }
}

TEST_CASE("class sizes are invariant under relabeling") {
  std::mt19937_64 rng(7);
  for (const auto& g : small_builtins()) {
    std::vector<std::size_t> sigma(g.order());
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const auto h = group_from_table(oracle::relabeled_table(g, sigma));
    auto a = conjugacy_classes(g).sizes, b = conjugacy_classes(h).sizes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("class multiplication coefficients") {
  const auto t = cyclic(1);
  const auto a1 = class_mult_coefficients(t, conjugacy_classes(t));
  CHECK(a1(0, 0, 0) == 1);

  const auto z2 = cyclic(2);
  const auto a2 = class_mult_coefficients(z2, conjugacy_classes(z2));
  CHECK(a2(1, 1, 0) == 1);
  CHECK(a2(1, 1, 1) == 0);

  const auto s3 = symmetric(3);
  const auto c3 = conjugacy_classes(s3);
  const auto a3 = class_mult_coefficients(s3, c3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(a3(i, j, k) == a3(j, i, k));

  for (const auto& g : small_builtins()) {
    const auto c = conjugacy_classes(g);
    const auto a = class_mult_coefficients(g, c);
    for (std::size_t i = 0; i < c.count(); ++i)
      for (std::size_t j = 0; j < c.count(); ++j) {
        std::int64_t total = 0;
        for (std::size_t k = 0; k < c.count(); ++k)
          total += a(i, j, k) * static_cast<std::int64_t>(c.sizes[k]);
        CHECK(total == static_cast<std::int64_t>(c.sizes[i] * c.sizes[j]));
        // Direct count at a representative of each class.
        for (std::size_t k = 0; k < c.count(); ++k) {
          std::int64_t count = 0;
          for (Element x : c.members[i])
            for (Element y : c.members[j])
              if (g.mul(x, y) == c.reps[k]) ++count;
          CHECK(a(i, j, k) == count);
        }
      }
  }
}

TEST_CASE("table round trip") {
  const auto d4 = dihedral(4);
  const auto h = group_from_table(table_of(d4));
  CHECK(h.table() == d4.table());
}
