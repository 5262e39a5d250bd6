#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sisim {

struct QuadratureStats {
    int panels = 0;
    int evaluations = 0;
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a, b].
///
/// `interior_breaks` are abscissae in (a, b) where the integrand may jump or
/// kink; they become panel boundaries so the adaptive refinement never
/// straddles a discontinuity. Throws QuadratureError when the panel budget
/// is exhausted with an error estimate above `tol` (absolute).
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          std::span<const double> interior_breaks,
                          double tol,
                          QuadratureStats* stats = nullptr);

/// Single non-adaptive (G7,K15) panel; returns the Kronrod value and writes
/// |K15 - G7| to `err`.
double gauss_kronrod_panel(const std::function<double(double)>& f,
                           double a, double b, double& err);

/// Prefix integrals of f over a fixed partition, for repeated evaluation of
/// t -> integral of f over [origin, t]. Cells of the partition must bracket
/// every non-smooth point of f.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> f,
                       std::vector<double> boundaries, double tol);

    /// Integral of f from the first boundary to t (t inside the partition).
    double operator()(double t) const;

    double total() const { return prefix_.back(); }
    double origin() const { return boundaries_.front(); }
    double end() const { return boundaries_.back(); }

private:
    std::function<double(double)> f_;
    std::vector<double> boundaries_;
    std::vector<double> prefix_; // prefix_[i] = integral over [b0, b_i]
    double cell_tol_;
};

} // namespace sisim
