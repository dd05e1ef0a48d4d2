#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/kernel.hpp"

namespace hardy {

/// One constraint Re F(z_j) ≈ A_j with quadrature weight λ_j > 0.
struct BoundarySample {
  BoundarySample(UpperHalfPoint point, double value, double weight);

  UpperHalfPoint point;
  double value;
  double weight;
};

/// Discrete Tikhonov problem
///
///   min  λ‖F‖²_{H²} + Σ_j λ_j |Re F(z_j) − A_j|²   over F ∈ H²(ℂ⁺).
///
/// Immutable after construction. Duplicate points are allowed.
class DirichletProblem {
public:
  DirichletProblem(std::vector<BoundarySample> samples, double lambda);

  [[nodiscard]] const std::vector<BoundarySample>& samples() const noexcept { return samples_; }
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }

  [[nodiscard]] std::vector<UpperHalfPoint> points() const;
  [[nodiscard]] Eigen::VectorXd values() const;
  [[nodiscard]] Eigen::VectorXd weights() const;

  /// Same samples, different global regularization parameter.
  [[nodiscard]] DirichletProblem with_lambda(double lambda) const;

private:
  std::vector<BoundarySample> samples_;
  double lambda_;
};

/// Real coefficients c_j of u(z) = Σ_j c_j Re K(z, z_j).
class SolutionCoefficients {
public:
  SolutionCoefficients(std::vector<UpperHalfPoint> points, Eigen::VectorXd coeffs);

  [[nodiscard]] const std::vector<UpperHalfPoint>& points() const noexcept { return points_; }
  [[nodiscard]] const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

private:
  std::vector<UpperHalfPoint> points_;
  Eigen::VectorXd coeffs_;
};

/// Gram matrix M_ij = Re K(z_i, z_j).
[[nodiscard]] Eigen::MatrixXd gram_matrix(std::span<const UpperHalfPoint> points);
[[nodiscard]] Eigen::MatrixXd gram_matrix(const DirichletProblem& problem);

/// Snapshot of the recursive kernel update after `step` samples have been absorbed.
///
/// `restriction` holds Re K^{(n)}(z_i, z_j) on the sample set and `chain` the accumulated
/// product Â = A^{(n)} ⋯ A^{(1)} · (1/λ)I, so that Re K^{(n)}(z, z_j) = (Â · ReK̂(z))_j.
struct KernelChainState {
  std::size_t step = 0;
  Eigen::MatrixXd restriction;
  Eigen::MatrixXd chain;
};

/// Denominators λ_n R(z_n, z_n) + 1 below this value abort the chain.
inline constexpr double kDenominatorGuard = 1e-14;

/// Incremental form of the kernel recursion.
///
/// Starts from the scaled base kernel K/λ and absorbs one sample per advance() with the
/// rank-one downdate
///
///   R'(z, w) = R(z, w) − λ_n R(z, z_n) R(z_n, w) / (λ_n R(z_n, z_n) + 1).
///
/// Weights may be zero here (a zero-weight sample leaves the state unchanged); the
/// DirichletProblem path always supplies positive ones.
class KernelChain {
public:
  explicit KernelChain(const DirichletProblem& problem);
  KernelChain(std::span<const UpperHalfPoint> points, std::span<const double> weights, double lambda);

  /// Absorbs the next sample. Returns false once all samples are in.
  /// Throws ConditioningError on a collapsed denominator or a non-finite entry.
  bool advance();
  void run();

  [[nodiscard]] const KernelChainState& state() const noexcept { return state_; }
  [[nodiscard]] bool done() const noexcept { return state_.step == weights_.size(); }

private:
  std::vector<double> weights_;
  KernelChainState state_;
};

[[nodiscard]] KernelChainState kernel_chain(const DirichletProblem& problem);
[[nodiscard]] KernelChainState kernel_chain(std::span<const UpperHalfPoint> points,
                                            std::span<const double> weights, double lambda);

/// Coefficients from the recursive update: c = Âᵀ (λ_1 A_1, …, λ_N A_N)ᵀ.
[[nodiscard]] SolutionCoefficients solve_recursive(const DirichletProblem& problem);

/// Coefficients from the dense system (λI + ΛM) c = ΛA, solved by LU with partial pivoting.
[[nodiscard]] SolutionCoefficients solve_dense_oracle(const DirichletProblem& problem);

/// u(z) = Σ_j c_j Re K(z, z_j).
[[nodiscard]] double evaluate(const SolutionCoefficients& solution, const UpperHalfPoint& z);
[[nodiscard]] Gradient evaluate_grad(const SolutionCoefficients& solution, const UpperHalfPoint& z);

struct Residual {
  double max = 0.0;
  double rms = 0.0;
  std::vector<double> per_sample;  // |u(z_j) − A_j|
};

[[nodiscard]] Residual boundary_residual(const DirichletProblem& problem, const SolutionCoefficients& solution);

struct ContinuationStep {
  double lambda = 0.0;
  std::optional<SolutionCoefficients> solution;  // empty when this step failed
  Residual residual;
  std::string error;                             // conditioning message for a failed step
};

/// Solves `problem` once per λ in `schedule` (strictly decreasing, all > 0).
///
/// A conditioning failure is recorded on its own step; earlier and later steps are unaffected.
[[nodiscard]] std::vector<ContinuationStep> continuation(const DirichletProblem& problem,
                                                         std::span<const double> schedule);

}  // namespace hardy
