#include "riskgrad/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace riskgrad {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("complexity: non-finite ") + what);
}
} // namespace

void ComplexityInputs::validate() const {
  const std::pair<double, const char*> fields[] = {
      {gamma, "gamma"}, {r_max, "r_max"},   {f1, "F1"},          {f2, "F2"},    {a, "A"},
      {b, "B"},         {c, "C"},           {delta0, "delta0"},  {epsilon, "epsilon"}};
  for (const auto& [v, name] : fields) require_finite(v, name);
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("complexity: gamma must lie in [0, 1)");
  if (r_max <= 0.0) throw std::invalid_argument("complexity: r_max must be positive");
  if (f1 <= 0.0 || f2 <= 0.0) throw std::invalid_argument("complexity: F1, F2 must be positive");
  if (a < 0.0 || b < 0.0 || c < 0.0)
    throw std::invalid_argument("complexity: A, B, C must be nonnegative");
  if (delta0 < 0.0) throw std::invalid_argument("complexity: delta0 must be nonnegative");
  if (epsilon <= 0.0) throw std::invalid_argument("complexity: epsilon must be positive");
}

double lipschitz_neutral(double gamma, double r_max, double f1, double f2) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("lipschitz_neutral: gamma must lie in [0, 1)");
  if (r_max <= 0.0 || f1 <= 0.0 || f2 <= 0.0)
    throw std::invalid_argument("lipschitz_neutral: r_max, F1, F2 must be positive");
  double one_minus = 1.0 - gamma;
  return r_max / (one_minus * one_minus) * (f1 * f1 + f2);
}

double alpha_ratio(double beta, double x, AlphaConvention convention) {
  if (beta == 0.0 || !std::isfinite(beta))
    throw std::invalid_argument("alpha_ratio: beta must be finite and nonzero");
  if (x <= 0.0) throw std::invalid_argument("alpha_ratio: x must be positive");
  double ab = std::abs(beta);
  switch (convention) {
    case AlphaConvention::kAsPrinted:
      return std::exp(ab * x) / (ab * x);
    case AlphaConvention::kTextMinimum:
      return ab * std::exp(ab * x) / x;
  }
  throw std::logic_error("alpha_ratio: unknown convention");
}

double alpha_min(double beta) {
  if (beta == 0.0 || !std::isfinite(beta))
    throw std::invalid_argument("alpha_min: beta must be finite and nonzero");
  return beta * beta * std::exp(1.0);
}

double lipschitz_sensitive(double lipschitz, double alpha) {
  if (lipschitz <= 0.0 || alpha <= 0.0)
    throw std::invalid_argument("lipschitz_sensitive: inputs must be positive");
  return alpha * lipschitz;
}

BetaRange beta_admissible_range(double gamma, double r_max) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("beta_admissible_range: gamma must lie in [0, 1)");
  if (r_max <= 0.0) throw std::invalid_argument("beta_admissible_range: r_max must be positive");
  BetaRange range;
  range.lower = (1.0 - gamma) / r_max;
  range.upper = std::exp(-0.5);
  range.nonempty = range.lower < range.upper;
  return range;
}

double iterations_lower_bound(double delta0, double lipschitz, double a, double b, double c,
                              double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("iterations_lower_bound: epsilon must be > 0");
  if (delta0 <= 0.0 || lipschitz <= 0.0)
    throw std::invalid_argument("iterations_lower_bound: delta0 and L must be positive");
  if (a < 0.0 || b < 0.0 || c < 0.0)
    throw std::invalid_argument("iterations_lower_bound: A, B, C must be nonnegative");
  double eps2 = epsilon * epsilon;
  double inner = std::max(b, std::max(12.0 * delta0 * a / eps2, 2.0 * c / eps2));
  if (inner == 0.0)
    throw std::domain_error("iterations_lower_bound: max{B, 12*delta0*A/eps^2, 2C/eps^2} is zero; "
                            "the bound is vacuous");
  return 12.0 * delta0 * lipschitz / eps2 * inner;
}

double stepsize_corollary2(double lipschitz_beta, double a, double b, double c, double iterations,
                           double epsilon) {
  if (lipschitz_beta <= 0.0 || iterations <= 0.0)
    throw std::invalid_argument("stepsize_corollary2: L_beta and T must be positive");
  if (epsilon <= 0.0) throw std::invalid_argument("stepsize_corollary2: epsilon must be > 0");
  double term_a = a > 0.0 ? 1.0 / std::sqrt(lipschitz_beta * a * iterations) : kInf;
  double term_b = b > 0.0 ? 1.0 / (lipschitz_beta * b) : kInf;
  double term_c = c > 0.0 ? epsilon * epsilon / (2.0 * lipschitz_beta * c) : kInf;
  double eta = std::min(term_a, std::min(term_b, term_c));
  if (eta == kInf)
    throw std::domain_error("stepsize_corollary2: A = B = C = 0 leaves the stepsize unconstrained");
  return eta;
}

double corollary1_bound(double delta0, double lipschitz_beta, double a, double b, double c,
                        double eta, double iterations) {
  if (delta0 < 0.0 || lipschitz_beta <= 0.0 || a < 0.0 || b < 0.0 || c < 0.0)
    throw std::invalid_argument("corollary1_bound: invalid constants");
  if (iterations < 1.0) throw std::invalid_argument("corollary1_bound: T must be >= 1");
  if (eta <= 0.0) throw std::invalid_argument("corollary1_bound: eta must be positive");
  if (b > 0.0 && eta >= 2.0 / (lipschitz_beta * b))
    throw std::invalid_argument("corollary1_bound: eta outside (0, 2/(L_beta B))");

  double denom = 2.0 - lipschitz_beta * b * eta;
  // (1 + L eta^2 A)^T / (eta T) in log-space; T reaches 1e8 in eps sweeps.
  double log_first = std::log(2.0 * delta0) + iterations * std::log1p(lipschitz_beta * eta * eta * a) -
                     std::log(eta * iterations * denom);
  double first = delta0 == 0.0 ? 0.0 : std::exp(log_first);
  double second = lipschitz_beta * c * eta / denom;
  return first + second;
}

std::vector<AnalyzeRow> analyze_sweep(const ComplexityInputs& inputs,
                                      const std::vector<double>& betas) {
  inputs.validate();
  double lipschitz = lipschitz_neutral(inputs.gamma, inputs.r_max, inputs.f1, inputs.f2);
  double n = iterations_lower_bound(inputs.delta0, lipschitz, inputs.a, inputs.b, inputs.c,
                                    inputs.epsilon);
  BetaRange range = beta_admissible_range(inputs.gamma, inputs.r_max);

  std::vector<AnalyzeRow> rows;
  rows.reserve(betas.size());
  for (double beta : betas) {
    AnalyzeRow row;
    row.beta = beta;
    row.alpha_min = alpha_min(beta);
    row.lipschitz = lipschitz;
    row.lipschitz_beta = lipschitz_sensitive(lipschitz, row.alpha_min);
    row.n = n;
    row.n_beta = iterations_lower_bound(inputs.delta0, row.lipschitz_beta, inputs.a, inputs.b,
                                        inputs.c, inputs.epsilon);
    row.ratio = row.n_beta / row.n;
    double ab = std::abs(beta);
    row.in_range = range.lower < ab && ab < range.upper;
    rows.push_back(row);
  }
  return rows;
}

} // namespace riskgrad
