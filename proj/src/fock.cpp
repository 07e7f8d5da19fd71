#include "cuntzk/fock.hpp"

#include <algorithm>
#include <cmath>

#include "cuntzk/error.hpp"

namespace cuntzk {

namespace {

constexpr std::size_t kMaxFockDim = 100000;
constexpr double kCovarianceTolerance = 1e-10;
constexpr double kDegreeOneTolerance = 1e-12;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SparseOperator identity_op(std::size_t dim) {
  SparseOperator id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return id;
}

SparseOperator vacuum_projector(std::size_t dim) {
  SparseOperator p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  p.insert(0, 0) = 1.0;
  p.makeCompressed();
  return p;
}

IdentityCheck make_check(std::string name, double dev, double tol) {
  return {std::move(name), dev, tol, dev <= tol};
}

void require_shape(const TruncatedFockSpace& space, const FiniteGroup& g,
                   const std::vector<Eigen::MatrixXcd>& unitaries) {
  if (unitaries.size() != g.order())
    throw Error(ErrorCode::DimensionMismatch, "one matrix per group element required");
  for (const auto& u : unitaries)
    if (u.rows() != space.n() || u.cols() != space.n())
      throw Error(ErrorCode::DimensionMismatch,
                  "representation has dimension " + std::to_string(u.rows()) +
                      " but the Fock space has n = " + std::to_string(space.n()));
}

}  // namespace

TruncatedFockSpace::TruncatedFockSpace(int n, int depth) : n_(n), depth_(depth) {
  if (n < 1 || n > 8) throw Error(ErrorCode::UnsupportedParameter, "Fock space needs 1 <= n <= 8");
  if (depth < 0) throw Error(ErrorCode::UnsupportedParameter, "negative depth");
  offsets_.push_back(0);
  std::size_t block = 1;
  for (int m = 0; m <= depth; ++m) {
    offsets_.push_back(offsets_.back() + block);
    if (offsets_.back() > kMaxFockDim)
      throw Error(ErrorCode::UnsupportedParameter, "truncated Fock space too large");
    block *= static_cast<std::size_t>(n);
  }
  dim_ = offsets_.back();
}

std::size_t TruncatedFockSpace::closed_form_dim(int n, int depth) {
  if (n == 1) return static_cast<std::size_t>(depth) + 1;
  std::size_t p = 1;
  for (int i = 0; i <= depth; ++i) p *= static_cast<std::size_t>(n);
  return (p - 1) / static_cast<std::size_t>(n - 1);
}

int TruncatedFockSpace::degree_of(std::size_t index) const {
  if (index >= dim_) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::vector<int> TruncatedFockSpace::word(std::size_t index) const {
  const int m = degree_of(index);
  std::size_t r = index - offsets_[m];
  std::vector<int> w(m);
  for (int k = m - 1; k >= 0; --k) {
    w[k] = static_cast<int>(r % static_cast<std::size_t>(n_));
    r /= static_cast<std::size_t>(n_);
  }
  return w;
}

std::size_t TruncatedFockSpace::index_of(const std::vector<int>& word) const {
  const int m = static_cast<int>(word.size());
  if (m > depth_) throw Error(ErrorCode::DimensionMismatch, "word longer than the depth");
  std::size_t r = 0;
  for (int letter : word) {
    if (letter < 0 || letter >= n_) throw Error(ErrorCode::DimensionMismatch, "letter out of range");
    r = r * static_cast<std::size_t>(n_) + static_cast<std::size_t>(letter);
  }
  return offsets_[m] + r;
}

std::vector<SparseOperator> creation_ops(const TruncatedFockSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.dim());
  std::vector<SparseOperator> ops;
  for (int i = 0; i < space.n(); ++i) {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int m = 0; m < space.depth(); ++m) {
      const std::size_t block = space.degree_dim(m);
      const std::size_t target = space.degree_offset(m + 1) + static_cast<std::size_t>(i) * block;
      for (std::size_t r = 0; r < block; ++r)
        trip.emplace_back(static_cast<Eigen::Index>(target + r),
                          static_cast<Eigen::Index>(space.degree_offset(m) + r), 1.0);
    }
    SparseOperator t(dim, dim);
    t.setFromTriplets(trip.begin(), trip.end());
    ops.push_back(std::move(t));
  }
  return ops;
}

SparseOperator vacuum_projection(const TruncatedFockSpace& space,
                                 const std::vector<SparseOperator>& ops) {
  SparseOperator p = identity_op(space.dim());
  for (const auto& t : ops) p -= SparseOperator(t * SparseOperator(t.adjoint()));
  p.prune(Complex(0.0));
  return p;
}

SparseOperator degree_projection(const TruncatedFockSpace& space, int max_degree) {
  const auto dim = static_cast<Eigen::Index>(space.dim());
  SparseOperator p(dim, dim);
  const std::size_t top = space.degree_offset(std::clamp(max_degree + 1, 0, space.depth() + 1));
  for (std::size_t i = 0; i < top; ++i)
    p.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  p.makeCompressed();
  return p;
}

std::vector<SparseOperator> fock_rep(const TruncatedFockSpace& space, const FiniteGroup& g,
                                     const std::vector<Eigen::MatrixXcd>& unitaries) {
  require_shape(space, g, unitaries);
  if (auto defect = representation_defect(g, unitaries, kCovarianceTolerance))
    throw Error(ErrorCode::ValidationFailed, *defect);

  const auto dim = static_cast<Eigen::Index>(space.dim());
  std::vector<SparseOperator> out;
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<Eigen::Triplet<Complex>> trip;
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(1, 1);
    for (int m = 0; m <= space.depth(); ++m) {
      if (m > 0) power = kron(unitaries[x], power);
      const auto off = static_cast<Eigen::Index>(space.degree_offset(m));
      for (Eigen::Index i = 0; i < power.rows(); ++i)
        for (Eigen::Index j = 0; j < power.cols(); ++j)
          if (power(i, j) != Complex(0.0)) trip.emplace_back(off + i, off + j, power(i, j));
    }
    SparseOperator op(dim, dim);
    op.setFromTriplets(trip.begin(), trip.end());
    out.push_back(std::move(op));
  }
  return out;
}

double max_deviation(const SparseOperator& a, const SparseOperator& b) {
  const SparseOperator d = a - b;
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

SparseOperator compress(const TruncatedFockSpace& space, const SparseOperator& x, int max_degree) {
  const auto top = static_cast<Eigen::Index>(
      space.degree_offset(std::clamp(max_degree + 1, 0, space.depth() + 1)));
  return x.topLeftCorner(top, top);
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

std::vector<IdentityCheck> toeplitz_checks(const TruncatedFockSpace& space,
                                           const std::vector<SparseOperator>& ops) {
  const std::size_t dim = space.dim();
  const SparseOperator id = identity_op(dim);
  const SparseOperator vac = vacuum_projector(dim);
  const SparseOperator p = vacuum_projection(space, ops);
  std::vector<IdentityCheck> out;

  SparseOperator range_sum(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : ops) range_sum += SparseOperator(t * SparseOperator(t.adjoint()));
  out.push_back(make_check("sum t_i t_i^* + |vac><vac| = 1", max_deviation(range_sum + vac, id), 0.0));
  out.push_back(make_check("p_n = |vac><vac|", max_deviation(p, vac), 0.0));
  out.push_back(make_check("p_n^2 = p_n = p_n^*",
                           std::max(max_deviation(SparseOperator(p * p), p),
                                    max_deviation(SparseOperator(p.adjoint()), p)),
                           0.0));
  double trace_dev = std::abs(SparseOperator(p).diagonal().sum() - Complex(1.0));
  out.push_back(make_check("trace p_n = 1", trace_dev, 0.0));

  const SparseOperator zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  double pt = 0.0;
  for (const auto& t : ops) pt = std::max(pt, max_deviation(SparseOperator(p * t), zero));
  out.push_back(make_check("p_n t_i = 0", pt, 0.0));

  if (space.depth() >= 1) {
    const int low = space.depth() - 1;
    const SparseOperator low_id = identity_op(space.degree_offset(low + 1));
    const SparseOperator low_zero(low_id.rows(), low_id.cols());
    double dev = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = 0; j < ops.size(); ++j) {
        const SparseOperator prod = SparseOperator(ops[j].adjoint()) * ops[i];
        dev = std::max(dev, max_deviation(compress(space, prod, low), i == j ? low_id : low_zero));
      }
    out.push_back(make_check("t_j^* t_i = delta_ij on degrees <= d-1", dev, 0.0));
  }
  return out;
}

IdentityCheck covariance_check(const TruncatedFockSpace& space,
                               const std::vector<SparseOperator>& ops, const FiniteGroup& g,
                               const std::vector<Eigen::MatrixXcd>& unitaries) {
  require_shape(space, g, unitaries);
  const auto rep = fock_rep(space, g, unitaries);
  const SparseOperator restrict_low = degree_projection(space, space.depth() - 1);
  double dev = 0.0;
  for (Element x = 0; x < g.order(); ++x) {
    const SparseOperator adj = rep[x].adjoint();
    for (int i = 0; i < space.n(); ++i) {
      const SparseOperator lhs = rep[x] * ops[i] * adj;
      SparseOperator rhs(lhs.rows(), lhs.cols());
      for (int j = 0; j < space.n(); ++j) rhs += unitaries[x](j, i) * ops[j];
      dev = std::max(dev, max_deviation(SparseOperator(lhs * restrict_low),
                                        SparseOperator(rhs * restrict_low)));
    }
  }
  return make_check("pi_F(g) t_i pi_F(g)^* = sum_j pi(g)_ji t_j", dev, kCovarianceTolerance);
}

IdentityCheck degree1_matrix_unit_check(const TruncatedFockSpace& space,
                                        const std::vector<SparseOperator>& ops,
                                        const FiniteGroup& g,
                                        const std::vector<Eigen::MatrixXcd>& unitaries) {
  if (space.depth() < 2)
    throw Error(ErrorCode::UnsupportedParameter, "degree-1 check needs depth >= 2");
  require_shape(space, g, unitaries);
  const auto off = static_cast<Eigen::Index>(space.degree_offset(1));
  const Eigen::Index n = space.n();
  double dev = 0.0;
  for (Element x = 0; x < g.order(); ++x) {
    SparseOperator sum(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
    for (int i = 0; i < n; ++i) {
      SparseOperator moved(sum.rows(), sum.cols());
      for (int j = 0; j < n; ++j) moved += unitaries[x](j, i) * ops[j];
      sum += SparseOperator(moved * SparseOperator(ops[i].adjoint()));
    }
    const Eigen::MatrixXcd block = Eigen::MatrixXcd(sum).block(off, off, n, n);
    dev = std::max(dev, (block - unitaries[x]).cwiseAbs().maxCoeff());
  }
  return make_check("sum_i alpha_g(s_i) s_i^* = pi(g) on degree 1", dev, kDegreeOneTolerance);
}

VerificationReport verify_fock(int n, int depth, const FiniteGroup& g,
                               const std::vector<Eigen::MatrixXcd>& unitaries) {
  if (depth < 1) throw Error(ErrorCode::UnsupportedParameter, "depth must be at least 1");
  const TruncatedFockSpace space(n, depth);
  const auto ops = creation_ops(space);
  VerificationReport report{n, depth, space.dim(), toeplitz_checks(space, ops)};
  report.checks.push_back(make_check(
      "dim = (n^(d+1) - 1)/(n - 1)",
      std::abs(static_cast<double>(space.dim()) -
               static_cast<double>(TruncatedFockSpace::closed_form_dim(n, depth))),
      0.0));
  report.checks.push_back(covariance_check(space, ops, g, unitaries));
  if (depth >= 2) report.checks.push_back(degree1_matrix_unit_check(space, ops, g, unitaries));

  if (depth >= 2) {
    // Compressing depth d to depth d - 1 reproduces the smaller simulator.
    const TruncatedFockSpace lower(n, depth - 1);
    const auto lower_ops = creation_ops(lower);
    const auto rep = fock_rep(space, g, unitaries);
    const auto lower_rep = fock_rep(lower, g, unitaries);
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      dev = std::max(dev, max_deviation(compress(space, ops[i], depth - 1), lower_ops[i]));
    for (Element x = 0; x < g.order(); ++x)
      dev = std::max(dev, max_deviation(compress(space, rep[x], depth - 1), lower_rep[x]));
    dev = std::max(dev, max_deviation(compress(space, vacuum_projection(space, ops), depth - 1),
                                      vacuum_projection(lower, lower_ops)));
    report.checks.push_back(make_check("truncation consistency d -> d-1", dev, 0.0));
  }
  return report;
}

std::vector<Eigen::MatrixXcd> permutation_unitaries(const std::vector<std::vector<int>>& images) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& img : images) {
    const auto n = static_cast<Eigen::Index>(img.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (img[i] < 0 || img[i] >= n)
        throw Error(ErrorCode::ValidationFailed, "permutation image out of range");
      m(img[i], i) = 1.0;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace cuntzk
