#pragma once

#include <vector>

namespace riskgrad {

// Assumption constants and targets consumed by the iteration-complexity
// formulas. All values are supplied, never estimated from trained policies.
struct ComplexityInputs {
  double gamma = 0.99; // discount, in [0, 1)
  double r_max = 1.0;  // reward magnitude bound, > 0
  double f1 = 1.0;     // bound on E ||grad log pi||^2, > 0
  double f2 = 1.0;     // bound on E ||hessian log pi||, > 0
  double a = 0.0;      // expected-smoothness constants, >= 0
  double b = 0.0;
  double c = 0.0;
  double delta0 = 1.0; // optimality gap J* - J(theta0), supplied
  double epsilon = 0.1;

  void validate() const;
};

struct BetaRange {
  double lower = 0.0; // exclusive
  double upper = 0.0; // exclusive
  bool nonempty = false;
};

// The ratio comparing risk-sensitive and risk-neutral value magnitudes is
// written two inconsistent ways in the source analysis; both are exposed.
//   kAsPrinted:    alpha = e^{|beta| x} / (|beta| x)      (minimum value e)
//   kTextMinimum:  alpha = |beta| e^{|beta| x} / x        (minimum beta^2 e,
//                  consistent with alpha_min below and the admissible range)
enum class AlphaConvention { kAsPrinted, kTextMinimum };

// L = r_max / (1 - gamma)^2 * (F1^2 + F2).
double lipschitz_neutral(double gamma, double r_max, double f1, double f2);

// Value of the ratio at a given total absolute discounted reward x > 0.
double alpha_ratio(double beta, double x,
                   AlphaConvention convention = AlphaConvention::kAsPrinted);

// Minimum of the ratio over x (attained at x = 1/|beta|): beta^2 e.
double alpha_min(double beta);

// L_beta = alpha * L.
double lipschitz_sensitive(double lipschitz, double alpha);

// Admissible interval (1 - gamma)/r_max < |beta| < e^{-1/2}.
BetaRange beta_admissible_range(double gamma, double r_max);

// n = (12 delta0 L / eps^2) * max{B, 12 delta0 A / eps^2, 2C / eps^2}.
// Returns the real-valued bound; callers ceil for iteration counts.
double iterations_lower_bound(double delta0, double lipschitz, double a, double b, double c,
                              double epsilon);

// eta = min{1/sqrt(L_beta A T), 1/(L_beta B), eps^2/(2 L_beta C)}, where a
// term with A, B, or C equal to zero drops out (treated as +infinity).
// The last term uses the squared tolerance so that the bound below lands
// under eps^2 at T >= n_beta; see the convexity checks in the test suite.
double stepsize_corollary2(double lipschitz_beta, double a, double b, double c, double iterations,
                           double epsilon);

// 2 delta0 (1 + L_beta eta^2 A)^T / (eta T (2 - L_beta B eta))
//   + L_beta C eta / (2 - L_beta B eta),
// with the power factor evaluated in log-space.
double corollary1_bound(double delta0, double lipschitz_beta, double a, double b, double c,
                        double eta, double iterations);

// One row of the beta sweep emitted by the `analyze` CLI subcommand.
struct AnalyzeRow {
  double beta = 0.0;
  double alpha_min = 0.0;
  double lipschitz = 0.0;      // L
  double lipschitz_beta = 0.0; // L_beta = alpha_min * L
  double n = 0.0;
  double n_beta = 0.0;
  double ratio = 0.0; // n_beta / n
  bool in_range = false;
};

std::vector<AnalyzeRow> analyze_sweep(const ComplexityInputs& inputs,
                                      const std::vector<double>& betas);

} // namespace riskgrad
