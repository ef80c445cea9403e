#pragma once

#include <functional>
#include <vector>

namespace pa {

// Lanczos (g=7, 9 terms) gamma; validated against integer/half-integer
// values to 1e-12 in the test suite.
double gamma_fn(double x);
double lgamma_fn(double x);

// Unit-ball volume and unit-sphere surface in R^n (vol_{n-1}(S^{n-1})).
double ball_volume(int n);
double sphere_surface(int n);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

// Composite Simpson with interval doubling until successive estimates agree
// to rel_tol (or abs_tol when the value is near zero).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14);

// Two-sided p-value of the two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// Chi-square upper tail probability with k degrees of freedom.
double chi2_sf(double stat, int dof);

// Two-sided 97.5% Student t quantile (95% interval half-width factor).
double t_quantile_975(int dof);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    double sse = 0.0;
    int n = 0;
};
OlsFit ols(const std::vector<double>& x, const std::vector<double>& y);

} // namespace pa
