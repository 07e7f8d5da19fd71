#include "cuntzk/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cuntzk/error.hpp"
#include "cuntzk/hash.hpp"

namespace cuntzk {

namespace {

using Key = std::vector<std::pair<long long, long long>>;

Key rounded_key(const std::vector<Complex>& values) {
  Key k;
  k.reserve(values.size());
  for (const Complex& v : values)
    k.emplace_back(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
  return k;
}

bool is_trivial_row(const std::vector<Complex>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](Complex v) { return std::abs(v - 1.0) <= kIntegralityTolerance; });
}

long long round_checked(double x, ErrorCode failure, const std::string& what) {
  const double r = std::round(x);
  if (!std::isfinite(x) || std::abs(x - r) > kIntegralityTolerance)
    throw Error(failure, what + " = " + std::to_string(x) + " is not an integer");
  return static_cast<long long>(r);
}

// Sorts rows into canonical order, checks every table invariant, and builds
// the shared table data. `failure` is the error raised for violations.
CharacterTable finalize(std::shared_ptr<const FiniteGroup> group, ConjugacyData classes,
                        std::vector<std::vector<Complex>> rows, int attempts,
                        ErrorCode failure) {
  const std::size_t k = classes.count();
  const double order = static_cast<double>(group->order());
  if (rows.size() != k)
    throw Error(failure, "expected " + std::to_string(k) + " irreducible characters, got " +
                             std::to_string(rows.size()));

  std::vector<int> dims(k);
  for (std::size_t p = 0; p < k; ++p) {
    if (rows[p].size() != k)
      throw Error(failure, "character row " + std::to_string(p) + " has wrong length");
    if (std::abs(rows[p][0].imag()) > kIntegralityTolerance)
      throw Error(failure, "character degree is not real");
    const long long d = round_checked(rows[p][0].real(), failure, "character degree");
    if (d < 1) throw Error(failure, "character degree must be positive");
    dims[p] = static_cast<int>(d);
  }

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Key> keys(k);
  for (std::size_t p = 0; p < k; ++p) keys[p] = rounded_key(rows[p]);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const bool ta = is_trivial_row(rows[a]), tb = is_trivial_row(rows[b]);
    if (ta != tb) return ta;
    if (dims[a] != dims[b]) return dims[a] < dims[b];
    return keys[a] < keys[b];
  });

  auto data = std::make_shared<CharacterTable::Data>();
  data->group = group;
  data->attempts = attempts;
  for (std::size_t p : perm) {
    data->dims.push_back(dims[p]);
    data->values.push_back(std::move(rows[p]));
  }
  if (!is_trivial_row(data->values[0])) throw Error(failure, "no trivial character");

  long long sum_sq = 0;
  for (int d : data->dims) sum_sq += static_cast<long long>(d) * d;
  if (sum_sq != static_cast<long long>(group->order()))
    throw Error(failure, "sum of squared degrees " + std::to_string(sum_sq) +
                             " differs from the group order");

  const auto& vals = data->values;
  double row_res = 0.0, col_res = 0.0;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < k; ++c)
        s += static_cast<double>(classes.sizes[c]) * vals[p][c] * std::conj(vals[q][c]);
      s /= order;
      row_res = std::max(row_res, std::abs(s - (p == q ? 1.0 : 0.0)));
    }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t c2 = 0; c2 < k; ++c2) {
      Complex s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += vals[p][c] * std::conj(vals[p][c2]);
      const double expect = c == c2 ? order / static_cast<double>(classes.sizes[c]) : 0.0;
      col_res = std::max(col_res, std::abs(s - expect));
    }
  data->residuals = {row_res, col_res};
  if (row_res > kOrthogonalityTolerance || col_res > kOrthogonalityTolerance) {
    std::ostringstream os;
    os << "orthogonality residuals row=" << row_res << " column=" << col_res;
    throw Error(failure, os.str());
  }

  data->conj_map.assign(k, k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      bool match = true;
      for (std::size_t c = 0; c < k && match; ++c)
        match = std::abs(std::conj(vals[p][c]) - vals[q][c]) <= kIntegralityTolerance;
      if (match) {
        data->conj_map[p] = q;
        break;
      }
    }
    if (data->conj_map[p] == k)
      throw Error(failure, "conjugate of character " + std::to_string(p) + " not found");
  }

  Fnv1a h;
  h.add(static_cast<std::uint64_t>(group->order()));
  for (Element e : group->table()) h.add(static_cast<std::uint64_t>(e));
  for (std::size_t p = 0; p < k; ++p) {
    h.add(static_cast<std::int64_t>(data->dims[p]));
    for (const auto& [re, im] : rounded_key(vals[p])) {
      h.add(static_cast<std::int64_t>(re));
      h.add(static_cast<std::int64_t>(im));
    }
  }
  data->fingerprint = h.hex();
  data->classes = std::move(classes);
  return CharacterTable(std::move(data));
}

// One Burnside attempt. Returns nothing when the random combination has
// nearly colliding eigenvalues.
std::optional<std::vector<std::vector<Complex>>> burnside_attempt(
    const FiniteGroup& g, const ConjugacyData& classes, const ClassMultTensor& a,
    std::uint64_t seed, double gap) {
  const std::size_t k = classes.count();
  if (k == 1) return std::vector<std::vector<Complex>>{{Complex(1.0, 0.0)}};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(1, 97);
  // (A_j)(i, m) = a(j, i, m): the class-sum C_j acting on the class-sum basis.
  Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(k, k);
  for (std::size_t j = 1; j < k; ++j) {
    const double c = coef(rng);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m)
        combo(i, m) += c * static_cast<double>(a(j, i, m));
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(combo);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const auto& ev = solver.eigenvalues();
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q)
      if (std::abs(ev(p) - ev(q)) < gap) return std::nullopt;

  const double order = static_cast<double>(g.order());
  std::vector<std::vector<Complex>> rows;
  for (std::size_t p = 0; p < k; ++p) {
    Eigen::VectorXcd v = solver.eigenvectors().col(p);
    if (std::abs(v(0)) < 1e-12 * v.norm()) return std::nullopt;
    v /= v(0);
    // v holds the central character omega(C_m) = |C_m| chi(g_m) / chi(1).
    double s = 0.0;
    for (std::size_t m = 0; m < k; ++m)
      s += std::norm(v(m)) / static_cast<double>(classes.sizes[m]);
    const double dim = std::sqrt(order / s);
    const long long d = round_checked(dim, ErrorCode::IntegralityViolation, "character degree");
    std::vector<Complex> row(k);
    for (std::size_t m = 0; m < k; ++m)
      row[m] = static_cast<double>(d) * v(m) / static_cast<double>(classes.sizes[m]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string CharacterTable::irrep_label(std::size_t irrep) const {
  if (irrep >= count()) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  return irrep == 0 ? "triv" : "chi" + std::to_string(irrep);
}

std::size_t CharacterTable::irrep_index(const std::string& label) const {
  std::string digits = label;
  if (label == "triv") return 0;
  if (label.rfind("chi", 0) == 0) digits = label.substr(3);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
      digits.size() > 6)
    throw Error(ErrorCode::UnknownIrrep, "'" + label + "'");
  const std::size_t idx = std::stoul(digits);
  if (idx >= count())
    throw Error(ErrorCode::UnknownIrrep, "'" + label + "' (table has " +
                                             std::to_string(count()) + " irreps)");
  return idx;
}

CharacterTable character_table(const FiniteGroup& g, BurnsideOptions options) {
  if (g.order() > kMaxGroupOrder)
    throw Error(ErrorCode::UnsupportedParameter, "group order exceeds 720");
  auto group = std::make_shared<const FiniteGroup>(g);
  ConjugacyData classes = conjugacy_classes(g);
  const ClassMultTensor a = class_mult_coefficients(g, classes);

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    auto rows = burnside_attempt(g, classes, a, options.seed + static_cast<std::uint64_t>(attempt),
                                 options.eigen_gap);
    if (rows)
      return finalize(group, std::move(classes), std::move(*rows), attempt + 1,
                      ErrorCode::IntegralityViolation);
  }
  throw Error(ErrorCode::DegenerateEigenvectors,
              "eigenvalue collision in all " + std::to_string(options.max_retries + 1) +
                  " attempts");
}

CharacterTable character_table_from_values(const FiniteGroup& g,
                                           const std::vector<std::vector<Complex>>& rows) {
  auto group = std::make_shared<const FiniteGroup>(g);
  return finalize(group, conjugacy_classes(g), rows, 0, ErrorCode::ValidationFailed);
}

std::vector<Complex> class_function_product(std::span<const Complex> a,
                                            std::span<const Complex> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "class functions of different length");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

long long inner_product(const CharacterTable& table, std::span<const Complex> a,
                        std::span<const Complex> b) {
  const auto& cl = table.classes();
  if (a.size() != cl.count() || b.size() != cl.count())
    throw Error(ErrorCode::DimensionMismatch, "class function length differs from class count");
  Complex s = 0.0;
  for (std::size_t c = 0; c < cl.count(); ++c)
    s += static_cast<double>(cl.sizes[c]) * a[c] * std::conj(b[c]);
  s /= static_cast<double>(table.group().order());
  if (std::abs(s.imag()) > kIntegralityTolerance)
    throw Error(ErrorCode::IntegralityViolation, "inner product has imaginary part");
  const long long r = round_checked(s.real(), ErrorCode::IntegralityViolation, "inner product");
  if (r < 0) throw Error(ErrorCode::IntegralityViolation, "negative multiplicity");
  return r;
}

std::optional<std::string> representation_defect(const FiniteGroup& g,
                                                  const std::vector<Eigen::MatrixXcd>& mats,
                                                  double tolerance) {
  if (mats.size() != g.order())
    return "expected " + std::to_string(g.order()) + " matrices, got " +
           std::to_string(mats.size());
  const auto d = mats.empty() ? 0 : mats[0].rows();
  for (Element x = 0; x < g.order(); ++x) {
    if (mats[x].rows() != d || mats[x].cols() != d)
      return "matrix for element " + std::to_string(x) + " has wrong shape";
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  for (Element x = 0; x < g.order(); ++x) {
    const double dev = (mats[x].adjoint() * mats[x] - id).cwiseAbs().maxCoeff();
    if (dev > tolerance) {
      std::ostringstream os;
      os << "unitarity fails at element " << x << " (deviation " << dev << ")";
      return os.str();
    }
  }
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const double dev = (mats[x] * mats[y] - mats[g.mul(x, y)]).cwiseAbs().maxCoeff();
      if (dev > tolerance) {
        std::ostringstream os;
        os << "homomorphism fails: M(" << x << ")M(" << y << ") != M(" << g.mul(x, y)
           << ") (deviation " << dev << ")";
        return os.str();
      }
    }
  return std::nullopt;
}

namespace {

void validate_irrep(const CharacterTable& table, std::size_t irrep,
                    const std::vector<Eigen::MatrixXcd>& mats) {
  const FiniteGroup& g = table.group();
  if (!mats.empty() && mats[0].rows() != table.dim(irrep))
    throw Error(ErrorCode::ValidationFailed,
                "matrices have size " + std::to_string(mats[0].rows()) + ", irrep has dimension " +
                    std::to_string(table.dim(irrep)));
  if (auto defect = representation_defect(g, mats))
    throw Error(ErrorCode::ValidationFailed, *defect);
  std::vector<Complex> traces(table.classes().count());
  for (std::size_t c = 0; c < traces.size(); ++c) traces[c] = mats[table.classes().reps[c]].trace();
  for (Element x = 0; x < g.order(); ++x) {
    const double dev = std::abs(mats[x].trace() - table.value(irrep, x));
    if (dev > kMatrixTolerance)
      throw Error(ErrorCode::ValidationFailed,
                  "trace of M(" + std::to_string(x) + ") differs from the character value");
  }
  long long norm = 0;
  try {
    norm = inner_product(table, traces, traces);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationFailed, std::string("irreducibility: ") + e.what());
  }
  if (norm != 1)
    throw Error(ErrorCode::ValidationFailed,
                "irreducibility fails: <chi, chi> = " + std::to_string(norm));
}

std::optional<std::vector<Eigen::MatrixXcd>> dihedral_matrices(const CharacterTable& table,
                                                               std::size_t irrep) {
  const auto& fam = table.group().family();
  if (!fam || fam->kind != FamilySpec::Kind::Dihedral || table.dim(irrep) != 2) return std::nullopt;
  const int n = fam->n;
  const Element order = static_cast<Element>(table.group().order());
  for (int j = 1; 2 * j < n; ++j) {
    std::vector<Eigen::MatrixXcd> mats(order);
    Eigen::MatrixXcd refl(2, 2);
    refl << 1.0, 0.0, 0.0, -1.0;
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * j * k / n;
      Eigen::MatrixXcd rot(2, 2);
      rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      mats[k] = rot;
      mats[n + k] = refl * rot;
    }
    bool match = true;
    for (Element x = 0; x < order && match; ++x)
      match = std::abs(mats[x].trace() - table.value(irrep, x)) <= kIntegralityTolerance;
    if (match) return mats;
  }
  return std::nullopt;
}

}  // namespace

IrrepMatrices irrep_matrices(const CharacterTable& table, std::size_t irrep) {
  if (irrep >= table.count()) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  std::vector<Eigen::MatrixXcd> mats;
  if (table.dim(irrep) == 1) {
    for (Element x = 0; x < table.group().order(); ++x) {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = table.value(irrep, x);
      mats.push_back(m);
    }
  } else if (auto dm = dihedral_matrices(table, irrep)) {
    mats = std::move(*dm);
  } else {
    throw Error(ErrorCode::MatricesUnavailable,
                "no builtin matrices for irrep " + table.irrep_label(irrep) + " of dimension " +
                    std::to_string(table.dim(irrep)));
  }
  validate_irrep(table, irrep, mats);
  IrrepMatrices out;
  out.irrep_ = irrep;
  out.dim_ = table.dim(irrep);
  out.mats_ = std::move(mats);
  return out;
}

IrrepMatrices irrep_matrices(const CharacterTable& table, std::size_t irrep,
                             std::vector<Eigen::MatrixXcd> matrices) {
  if (irrep >= table.count()) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  validate_irrep(table, irrep, matrices);
  IrrepMatrices out;
  out.irrep_ = irrep;
  out.dim_ = table.dim(irrep);
  out.mats_ = std::move(matrices);
  return out;
}

std::vector<IrrepMatrices> all_irrep_matrices(const CharacterTable& table) {
  std::vector<IrrepMatrices> out;
  for (std::size_t p = 0; p < table.count(); ++p) out.push_back(irrep_matrices(table, p));
  return out;
}

std::vector<Eigen::MatrixXcd> direct_sum(const std::vector<const IrrepMatrices*>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t order = blocks[0]->matrices().size();
  int total = 0;
  for (const auto* b : blocks) {
    if (b->matrices().size() != order)
      throw Error(ErrorCode::DimensionMismatch, "blocks belong to different groups");
    total += b->dim();
  }
  std::vector<Eigen::MatrixXcd> out(order, Eigen::MatrixXcd::Zero(total, total));
  for (std::size_t x = 0; x < order; ++x) {
    int off = 0;
    for (const auto* b : blocks) {
      out[x].block(off, off, b->dim(), b->dim()) = b->matrices()[x];
      off += b->dim();
    }
  }
  return out;
}

GroupAlgebraElement::GroupAlgebraElement(std::shared_ptr<const FiniteGroup> g,
                                         std::vector<Complex> coeffs)
    : g_(std::move(g)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != g_->order())
    throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from group order");
}

GroupAlgebraElement GroupAlgebraElement::zero(std::shared_ptr<const FiniteGroup> g) {
  const std::size_t n = g->order();
  return GroupAlgebraElement(std::move(g), std::vector<Complex>(n));
}

GroupAlgebraElement GroupAlgebraElement::lambda(std::shared_ptr<const FiniteGroup> g, Element x) {
  auto e = zero(std::move(g));
  e.coeffs_.at(x) = 1.0;
  return e;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  auto out = zero(g_);
  const std::size_t n = g_->order();
  for (Element x = 0; x < n; ++x) {
    if (coeffs_[x] == 0.0) continue;
    for (Element y = 0; y < n; ++y) out.coeffs_[g_->mul(x, y)] += coeffs_[x] * o.coeffs_[y];
  }
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  auto out = *this;
  for (std::size_t x = 0; x < coeffs_.size(); ++x) out.coeffs_[x] += o.coeffs_.at(x);
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
  auto out = *this;
  for (std::size_t x = 0; x < coeffs_.size(); ++x) out.coeffs_[x] -= o.coeffs_.at(x);
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(Complex s) const {
  auto out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

GroupAlgebraElement GroupAlgebraElement::adjoint() const {
  auto out = zero(g_);
  for (Element x = 0; x < coeffs_.size(); ++x) out.coeffs_[g_->inverse(x)] = std::conj(coeffs_[x]);
  return out;
}

double GroupAlgebraElement::distance(const GroupAlgebraElement& o) const {
  double d = 0.0;
  for (std::size_t x = 0; x < coeffs_.size(); ++x)
    d = std::max(d, std::abs(coeffs_[x] - o.coeffs_.at(x)));
  return d;
}

std::vector<std::vector<GroupAlgebraElement>> matrix_units(const CharacterTable& table,
                                                           const IrrepMatrices& m) {
  const auto& g = table.group_ptr();
  const int n = m.dim();
  const double scale = static_cast<double>(n) / static_cast<double>(g->order());
  std::vector<std::vector<GroupAlgebraElement>> units;
  for (int i = 0; i < n; ++i) {
    std::vector<GroupAlgebraElement> row;
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> c(g->order());
      for (Element x = 0; x < g->order(); ++x) c[x] = scale * std::conj(m[x](i, j));
      row.emplace_back(g, std::move(c));
    }
    units.push_back(std::move(row));
  }
  return units;
}

GroupAlgebraElement central_idempotent(const CharacterTable& table, std::size_t irrep) {
  if (irrep >= table.count()) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  const auto& g = table.group_ptr();
  const double scale = static_cast<double>(table.dim(irrep)) / static_cast<double>(g->order());
  std::vector<Complex> c(g->order());
  for (Element x = 0; x < g->order(); ++x) c[x] = scale * std::conj(table.value(irrep, x));
  return GroupAlgebraElement(g, std::move(c));
}

ExpansionReport lambda_expansion_check(const CharacterTable& table,
                                       const std::vector<IrrepMatrices>& all) {
  if (all.size() != table.count())
    throw Error(ErrorCode::MatricesUnavailable, "matrices required for every irrep");
  const auto& g = table.group_ptr();
  std::vector<std::vector<std::vector<GroupAlgebraElement>>> units;
  for (const auto& m : all) units.push_back(matrix_units(table, m));

  ExpansionReport report;
  for (Element x = 0; x < g->order(); ++x) {
    auto sum = GroupAlgebraElement::zero(g);
    for (std::size_t p = 0; p < all.size(); ++p)
      for (int i = 0; i < all[p].dim(); ++i)
        for (int j = 0; j < all[p].dim(); ++j) sum = sum + units[p][i][j] * all[p][x](i, j);
    report.max_deviation =
        std::max(report.max_deviation, sum.distance(GroupAlgebraElement::lambda(g, x)));
  }
  report.passed = report.max_deviation <= report.tolerance;
  return report;
}

bool MatrixUnitReport::passed() const {
  for (const auto& e : entries)
    if (std::max({e.product_deviation, e.adjoint_deviation, e.trace_deviation,
                  e.central_deviation}) > relation_tolerance)
      return false;
  return completeness_deviation <= completeness_tolerance && expansion.passed;
}

MatrixUnitReport verify_matrix_units(const CharacterTable& table) {
  return verify_matrix_units(table, all_irrep_matrices(table));
}

MatrixUnitReport verify_matrix_units(const CharacterTable& table,
                                     const std::vector<IrrepMatrices>& all) {
  const auto& g = table.group_ptr();
  MatrixUnitReport report;
  auto total = GroupAlgebraElement::zero(g);
  for (const auto& m : all) {
    const auto e = matrix_units(table, m);
    const int n = m.dim();
    MatrixUnitEntry entry{m.irrep(), n};
    auto diag = GroupAlgebraElement::zero(g);
    for (int i = 0; i < n; ++i) {
      diag = diag + e[i][i];
      for (int j = 0; j < n; ++j) {
        entry.adjoint_deviation = std::max(entry.adjoint_deviation, e[i][j].adjoint().distance(e[j][i]));
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const auto expect = j == k ? e[i][l] : GroupAlgebraElement::zero(g);
            entry.product_deviation =
                std::max(entry.product_deviation, (e[i][j] * e[k][l]).distance(expect));
          }
      }
    }
    const auto z = central_idempotent(table, m.irrep());
    entry.trace_deviation = z.distance(diag);
    double central = std::max((z * z).distance(z), z.adjoint().distance(z));
    for (Element x = 0; x < g->order(); ++x) {
      const auto lx = GroupAlgebraElement::lambda(g, x);
      central = std::max(central, (z * lx).distance(lx * z));
    }
    entry.central_deviation = central;
    total = total + z;
    report.entries.push_back(entry);
  }
  if (all.size() == table.count()) {
    report.completeness_deviation = total.distance(GroupAlgebraElement::lambda(g, g->identity()));
    report.expansion = lambda_expansion_check(table, all);
  }
  return report;
}

}  // namespace cuntzk
