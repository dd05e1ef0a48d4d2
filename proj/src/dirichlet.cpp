#include "hardy/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {

BoundarySample::BoundarySample(UpperHalfPoint point_, double value_, double weight_)
    : point(point_), value(value_), weight(weight_) {
  if (!std::isfinite(value)) throw InvalidArgument("BoundarySample: value must be finite");
  if (!std::isfinite(weight) || !(weight > 0.0)) {
    throw InvalidArgument("BoundarySample: weight must be finite and > 0");
  }
}

DirichletProblem::DirichletProblem(std::vector<BoundarySample> samples, double lambda)
    : samples_(std::move(samples)), lambda_(lambda) {
  if (samples_.empty()) throw InvalidArgument("DirichletProblem: at least one sample is required");
  if (!std::isfinite(lambda_) || !(lambda_ > 0.0)) {
    throw InvalidArgument("DirichletProblem: lambda must be finite and > 0");
  }
}

std::vector<UpperHalfPoint> DirichletProblem::points() const {
  std::vector<UpperHalfPoint> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.point);
  return out;
}

Eigen::VectorXd DirichletProblem::values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t j = 0; j < samples_.size(); ++j) v[static_cast<Eigen::Index>(j)] = samples_[j].value;
  return v;
}

Eigen::VectorXd DirichletProblem::weights() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t j = 0; j < samples_.size(); ++j) v[static_cast<Eigen::Index>(j)] = samples_[j].weight;
  return v;
}

DirichletProblem DirichletProblem::with_lambda(double lambda) const { return {samples_, lambda}; }

SolutionCoefficients::SolutionCoefficients(std::vector<UpperHalfPoint> points, Eigen::VectorXd coeffs)
    : points_(std::move(points)), coeffs_(std::move(coeffs)) {
  if (static_cast<Eigen::Index>(points_.size()) != coeffs_.size()) {
    throw InvalidArgument("SolutionCoefficients: coefficient count does not match point count");
  }
  if (!coeffs_.allFinite()) throw ConditioningError("SolutionCoefficients: non-finite coefficient");
}

Eigen::MatrixXd gram_matrix(std::span<const UpperHalfPoint> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = szego_re(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

Eigen::MatrixXd gram_matrix(const DirichletProblem& problem) {
  const auto pts = problem.points();
  return gram_matrix(pts);
}

KernelChain::KernelChain(const DirichletProblem& problem) {
  const auto pts = problem.points();
  weights_.reserve(problem.size());
  for (const auto& s : problem.samples()) weights_.push_back(s.weight);
  const auto n = static_cast<Eigen::Index>(pts.size());
  state_.restriction = gram_matrix(pts) / problem.lambda();
  state_.chain = Eigen::MatrixXd::Identity(n, n) / problem.lambda();
}

KernelChain::KernelChain(std::span<const UpperHalfPoint> points, std::span<const double> weights, double lambda)
    : weights_(weights.begin(), weights.end()) {
  if (points.size() != weights.size()) throw InvalidArgument("KernelChain: points and weights differ in length");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw InvalidArgument("KernelChain: lambda must be > 0");
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("KernelChain: weights must be finite and >= 0");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  state_.restriction = gram_matrix(points) / lambda;
  state_.chain = Eigen::MatrixXd::Identity(n, n) / lambda;
}

bool KernelChain::advance() {
  if (done()) return false;
  const auto n = static_cast<Eigen::Index>(state_.step);
  const double weight = weights_[state_.step];
  ++state_.step;
  if (weight == 0.0) return true;

  auto& r = state_.restriction;
  const double denom = weight * r(n, n) + 1.0;
  if (!std::isfinite(denom) || denom < kDenominatorGuard) {
    std::ostringstream msg;
    msg << "kernel chain: denominator " << denom << " at step " << state_.step << " (guard " << kDenominatorGuard
        << ")";
    throw ConditioningError(msg.str());
  }
  const double scale = weight / denom;
  const Eigen::VectorXd column = r.col(n);
  const Eigen::RowVectorXd chain_row = state_.chain.row(n);

  r.noalias() -= (scale * column) * column.transpose();
  state_.chain.noalias() -= (scale * column) * chain_row;

  if (!r.allFinite() || !state_.chain.allFinite()) {
    throw ConditioningError("kernel chain: non-finite entry at step " + std::to_string(state_.step));
  }
  return true;
}

void KernelChain::run() {
  while (advance()) {
  }
}

KernelChainState kernel_chain(const DirichletProblem& problem) {
  KernelChain chain(problem);
  chain.run();
  return chain.state();
}

KernelChainState kernel_chain(std::span<const UpperHalfPoint> points, std::span<const double> weights,
                              double lambda) {
  KernelChain chain(points, weights, lambda);
  chain.run();
  return chain.state();
}

SolutionCoefficients solve_recursive(const DirichletProblem& problem) {
  const auto state = kernel_chain(problem);
  const Eigen::VectorXd weighted = problem.weights().cwiseProduct(problem.values());
  Eigen::VectorXd c = state.chain.transpose() * weighted;
  return {problem.points(), std::move(c)};
}

SolutionCoefficients solve_dense_oracle(const DirichletProblem& problem) {
  const auto pts = problem.points();
  const Eigen::VectorXd w = problem.weights();
  Eigen::MatrixXd system = w.asDiagonal() * gram_matrix(pts);
  system.diagonal().array() += problem.lambda();
  const Eigen::VectorXd rhs = w.cwiseProduct(problem.values());
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if ((lu.matrixLU().diagonal().array() == 0.0).any()) throw ConditioningError("dense oracle: singular system");
  Eigen::VectorXd c = lu.solve(rhs);
  if (!c.allFinite()) throw ConditioningError("dense oracle: non-finite solution");
  return {pts, std::move(c)};
}

double evaluate(const SolutionCoefficients& solution, const UpperHalfPoint& z) {
  double sum = 0.0;
  const auto& pts = solution.points();
  const auto& c = solution.coeffs();
  for (std::size_t j = 0; j < pts.size(); ++j) sum += c[static_cast<Eigen::Index>(j)] * szego_re(z, pts[j]);
  return sum;
}

Gradient evaluate_grad(const SolutionCoefficients& solution, const UpperHalfPoint& z) {
  Gradient g;
  const auto& pts = solution.points();
  const auto& c = solution.coeffs();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const auto k = szego_re_grad(z, pts[j]);
    const double cj = c[static_cast<Eigen::Index>(j)];
    g.dx += cj * k.dx;
    g.dy += cj * k.dy;
  }
  return g;
}

Residual boundary_residual(const DirichletProblem& problem, const SolutionCoefficients& solution) {
  Residual r;
  r.per_sample.reserve(problem.size());
  double sum_sq = 0.0;
  for (const auto& s : problem.samples()) {
    const double e = std::abs(evaluate(solution, s.point) - s.value);
    r.per_sample.push_back(e);
    r.max = std::max(r.max, e);
    sum_sq += e * e;
  }
  r.rms = std::sqrt(sum_sq / static_cast<double>(problem.size()));
  return r;
}

std::vector<ContinuationStep> continuation(const DirichletProblem& problem, std::span<const double> schedule) {
  if (schedule.empty()) throw InvalidArgument("continuation: empty lambda schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!std::isfinite(schedule[k]) || !(schedule[k] > 0.0)) {
      throw InvalidArgument("continuation: schedule entries must be finite and > 0");
    }
    if (k > 0 && !(schedule[k] < schedule[k - 1])) {
      throw InvalidArgument("continuation: schedule must be strictly decreasing");
    }
  }
  std::vector<ContinuationStep> steps;
  steps.reserve(schedule.size());
  for (double lambda : schedule) {
    ContinuationStep step;
    step.lambda = lambda;
    const auto scaled = problem.with_lambda(lambda);
    try {
      step.solution = solve_recursive(scaled);
      step.residual = boundary_residual(scaled, *step.solution);
    } catch (const ConditioningError& e) {
      step.solution.reset();
      step.error = e.what();
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace hardy
