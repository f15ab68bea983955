#ifndef COHESION_FITTING_HPP
#define COHESION_FITTING_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohesion {

struct Point {
    double x;
    double y;
};

struct FitResult {
    std::string model;   // "power_law", "linear", "hyperbola"
    std::string method;  // "loglog_ols", "nls", "ols", "linearized+gauss_newton"
    std::vector<std::string> names;
    std::vector<double> params;
    double rss = 0.0;  // always in the original (x, y) space
    double r2 = 0.0;
    std::size_t iterations = 0;

    double param(std::string_view name) const;
    double predict(double x) const;
};

enum class PowerLawMethod { loglog_ols, nls };

const char* to_string(PowerLawMethod method);

/// y = a x^(-b). loglog_ols regresses log y on log x; nls runs damped
/// Gauss-Newton in linear space from the loglog estimate until the step is
/// below 1e-10 (relative), at most 200 iterations.
FitResult fit_power_law(std::span<const Point> points, PowerLawMethod method);

/// y = alpha + beta x by ordinary least squares.
FitResult fit_linear(std::span<const Point> points);

/// y = c1 / (x + c2). Starts from the regression of 1/y on x (slope 1/c1,
/// intercept c2/c1) and refines with damped Gauss-Newton in the original
/// space; the refinement never increases the residual sum of squares.
FitResult fit_hyperbola(std::span<const Point> points);

/// 1 - RSS/TSS; 1 when TSS is zero and the fit is exact.
double r_squared(std::span<const Point> points, double rss);

}  // namespace cohesion

#endif
