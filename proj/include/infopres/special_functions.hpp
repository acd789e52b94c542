#pragma once

namespace infopres {

// Convergence tolerance of the continued-fraction evaluation.
inline constexpr double kIncompleteBetaTolerance = 1e-15;

// Regularized incomplete beta I_x(a, b) for a, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail P(|T| >= |t|) for Student's t with `df` degrees of freedom (df may be fractional).
double student_t_two_sided_p(double t, double df);

// Upper tail P(F >= f) for the F distribution with (df1, df2) degrees of freedom.
double f_upper_tail_p(double f, double df1, double df2);

}  // namespace infopres
