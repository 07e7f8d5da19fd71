#include "cuntzk/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cuntzk/error.hpp"

namespace cuntzk {

std::string FamilySpec::name() const {
  switch (kind) {
    case Kind::Cyclic: return "cyclic(" + std::to_string(n) + ")";
    case Kind::Dihedral: return "dihedral(" + std::to_string(n) + ")";
    case Kind::Symmetric: return "symmetric(" + std::to_string(n) + ")";
    case Kind::DirectProduct: {
      std::string s = "direct_product(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += factors[i].name();
      }
      return s + ")";
    }
  }
  return "?";
}

std::string FiniteGroup::label(Element a) const {
  if (a < labels_.size()) return labels_[a];
  return std::to_string(a);
}

Element FiniteGroup::power(Element a, long long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  Element result = identity_;
  Element base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  Element x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup group_from_table(const std::vector<std::vector<long long>>& table,
                             std::vector<std::string> labels, GroupOptions options) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorCode::ValidationFailed, "empty multiplication table");
  if (n > kMaxGroupOrder)
    throw Error(ErrorCode::UnsupportedParameter,
                "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxGroupOrder));
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorCode::ValidationFailed, "label count does not match table order");

  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw Error(ErrorCode::ValidationFailed, "row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      const long long v = table[a][b];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorCode::ValidationFailed, "entry (" + std::to_string(a) + "," +
                                                     std::to_string(b) + ") out of range");
      g.table_[a * n + b] = static_cast<Element>(v);
    }
  }

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NoIdentity, "no element is a two-sided unit");
  g.identity_ = *identity;

  g.inv_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    bool found = false;
    for (Element b = 0; b < n && !found; ++b) {
      if (g.mul(a, b) == g.identity_ && g.mul(b, a) == g.identity_) {
        g.inv_[a] = b;
        found = true;
      }
    }
    if (!found)
      throw Error(ErrorCode::MissingInverse,
                  "element " + std::to_string(a) + " has no two-sided inverse");
  }

  if (options.check_associativity && n <= options.associativity_cap) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = g.mul(a, b);
        for (Element c = 0; c < n; ++c) {
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
            std::ostringstream os;
            os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c
               << ")";
            throw Error(ErrorCode::NotAssociative, os.str());
          }
        }
      }
  }

  g.labels_ = std::move(labels);
  return g;
}

namespace {

std::vector<std::vector<long long>> square(std::size_t n) {
  return std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0));
}

void check_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::UnsupportedParameter, what);
}

}  // namespace

FiniteGroup cyclic(int n) { return builtin_group({FamilySpec::Kind::Cyclic, n, {}}); }

FiniteGroup dihedral(int n) { return builtin_group({FamilySpec::Kind::Dihedral, n, {}}); }

FiniteGroup symmetric(int n) { return builtin_group({FamilySpec::Kind::Symmetric, n, {}}); }

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order();
  check_range(ng * nh <= kMaxGroupOrder, "direct product order exceeds 720");
  auto t = square(ng * nh);
  std::vector<std::string> labels(ng * nh);
  for (Element a1 = 0; a1 < ng; ++a1)
    for (Element a2 = 0; a2 < nh; ++a2) {
      const std::size_t a = a1 * nh + a2;
      labels[a] = "(" + g.label(a1) + "," + h.label(a2) + ")";
      for (Element b1 = 0; b1 < ng; ++b1)
        for (Element b2 = 0; b2 < nh; ++b2)
          t[a][b1 * nh + b2] = static_cast<long long>(g.mul(a1, b1) * nh + h.mul(a2, b2));
    }
  FiniteGroup out = group_from_table(t, std::move(labels), {.check_associativity = false});
  if (g.family() && h.family())
    out.family_ = FamilySpec{FamilySpec::Kind::DirectProduct, 0, {*g.family(), *h.family()}};
  return out;
}

namespace {

FiniteGroup make_cyclic(int n) {
  auto t = square(n);
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return group_from_table(t, std::move(labels), {.check_associativity = false});
}

FiniteGroup make_dihedral(int n) {
  const int order = 2 * n;
  auto t = square(order);
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  std::vector<std::string> labels(order);
  auto rot = [](int k) { return k == 0 ? std::string() : (k == 1 ? "r" : "r^" + std::to_string(k)); };
  for (int k = 0; k < n; ++k) {
    labels[k] = k == 0 ? "e" : rot(k);
    labels[n + k] = "s" + rot(k);
  }
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const bool xs = x >= n, ys = y >= n;
      const int a = x % n, b = y % n;
      if (!xs && !ys) t[x][y] = mod(a + b);
      else if (!xs && ys) t[x][y] = n + mod(b - a);   // r^a s r^b = s r^(b-a)
      else if (xs && !ys) t[x][y] = n + mod(a + b);   // s r^a r^b
      else t[x][y] = mod(b - a);                      // s r^a s r^b = r^(b-a)
    }
  return group_from_table(t, std::move(labels), {.check_associativity = false});
}

FiniteGroup make_symmetric(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, long long> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<long long>(i);

  auto t = square(perms.size());
  std::vector<std::string> labels(perms.size());
  std::vector<int> c(n);
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (int i = 0; i < n; ++i) labels[a] += static_cast<char>('0' + perms[a][i]);
    for (std::size_t b = 0; b < perms.size(); ++b) {
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index.at(c);
    }
  }
  return group_from_table(t, std::move(labels), {.check_associativity = false});
}

}  // namespace

FiniteGroup builtin_group(const FamilySpec& family) {
  FiniteGroup g;
  switch (family.kind) {
    case FamilySpec::Kind::Cyclic:
      check_range(family.n >= 1 && static_cast<std::size_t>(family.n) <= kMaxGroupOrder,
                  "cyclic(n) needs 1 <= n <= 720");
      g = make_cyclic(family.n);
      break;
    case FamilySpec::Kind::Dihedral:
      check_range(family.n >= 1 && static_cast<std::size_t>(2 * family.n) <= kMaxGroupOrder,
                  "dihedral(n) needs 1 <= n <= 360");
      g = make_dihedral(family.n);
      break;
    case FamilySpec::Kind::Symmetric:
      check_range(family.n >= 1 && family.n <= 6, "symmetric(n) needs 1 <= n <= 6");
      g = make_symmetric(family.n);
      break;
    case FamilySpec::Kind::DirectProduct: {
      check_range(family.factors.size() == 2, "direct_product takes exactly two factors");
      const FiniteGroup a = builtin_group(family.factors[0]);
      const FiniteGroup b = builtin_group(family.factors[1]);
      check_range(a.order() * b.order() <= kMaxGroupOrder, "direct product order exceeds 720");
      g = direct_product(a, b);
      break;
    }
  }
  g.family_ = family;
  return g;
}

ConjugacyData conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit_of(n, kUnset);
  std::vector<std::vector<Element>> orbits;
  for (Element a = 0; a < n; ++a) {
    if (orbit_of[a] != kUnset) continue;
    std::vector<Element> orbit;
    for (Element x = 0; x < n; ++x) {
      const Element c = g.mul(g.mul(x, a), g.inverse(x));
      if (orbit_of[c] == kUnset) {
        orbit_of[c] = orbits.size();
        orbit.push_back(c);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }

  std::vector<std::size_t> order_of(orbits.size());
  for (std::size_t c = 0; c < orbits.size(); ++c) order_of[c] = g.element_order(orbits[c].front());
  std::vector<std::size_t> perm(orbits.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (order_of[a] != order_of[b]) return order_of[a] < order_of[b];
    return orbits[a].front() < orbits[b].front();
  });

  ConjugacyData out;
  out.class_of.assign(n, 0);
  for (std::size_t c = 0; c < perm.size(); ++c) {
    const auto& orbit = orbits[perm[c]];
    for (Element x : orbit) out.class_of[x] = c;
    out.reps.push_back(orbit.front());
    out.sizes.push_back(orbit.size());
    out.members.push_back(orbit);
    out.rep_orders.push_back(order_of[perm[c]]);
  }
  out.inverse_class.resize(out.count());
  for (std::size_t c = 0; c < out.count(); ++c)
    out.inverse_class[c] = out.class_of[g.inverse(out.reps[c])];
  return out;
}

ClassMultTensor class_mult_coefficients(const FiniteGroup& g, const ConjugacyData& classes) {
  const std::size_t k = classes.count();
  ClassMultTensor a(k);
  // Counts for c: for each x in C_i the partner y = x^-1 c is unique.
  auto count_for = [&](Element c, std::size_t kk, ClassMultTensor& out) {
    for (std::size_t i = 0; i < k; ++i)
      for (Element x : classes.members[i]) {
        const Element y = g.mul(g.inverse(x), c);
        ++out(i, classes.class_of[y], kk);
      }
  };
  for (std::size_t kk = 0; kk < k; ++kk) count_for(classes.reps[kk], kk, a);

  // The count must not depend on the chosen representative.
  for (std::size_t kk = 0; kk < k; ++kk) {
    if (classes.members[kk].size() < 2) continue;
    ClassMultTensor b(k);
    count_for(classes.members[kk].back(), kk, b);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (a(i, j, kk) != b(i, j, kk))
          throw Error(ErrorCode::IntegralityViolation,
                      "class multiplication coefficient depends on representative of class " +
                          std::to_string(kk));
  }
  return a;
}

}  // namespace cuntzk
