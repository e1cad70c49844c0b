#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace blockage {

// Tolerances for the adaptive integrator. Convergence means the accumulated
// error bound is <= max(abs_tol, rel_tol * |result|).
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 200;
};

inline void validate(const QuadratureConfig& q) {
    if (!(q.abs_tol > 0.0)) throw std::domain_error("abs_tol must be positive");
    if (!(q.rel_tol > 0.0)) throw std::domain_error("rel_tol must be positive");
    if (q.max_subdivisions < 1) throw std::domain_error("max_subdivisions must be >= 1");
}

struct QuadratureOutcome {
    double value = 0.0;
    double error_bound = 0.0;  // conservative bound on |value - integral|
    int subdivisions = 0;
    bool converged = false;
};

// Raised when the subdivision budget runs out; carries the partial result.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, QuadratureOutcome partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureOutcome& partial() const { return partial_; }

private:
    QuadratureOutcome partial_;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1,1]; the embedded pair
// supplies the per-interval error estimate |K15 - G7|.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct PanelEstimate {
    double a, b;
    double value;
    double error;
};

template <class F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = f(center);
    double kronrod = kKronrodWeights[7] * f_center;
    double gauss = kGaussWeights[3] * f_center;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair_sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair_sum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair_sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

inline bool worse(const PanelEstimate& x, const PanelEstimate& y) { return x.error < y.error; }

}  // namespace detail

// Adaptive bisection driven by the largest per-panel error estimate.
template <class F>
QuadratureOutcome integrate_adaptive(const F& f, double a, double b, const QuadratureConfig& q) {
    validate(q);
    auto cmp = [](const detail::PanelEstimate& x, const detail::PanelEstimate& y) {
        return detail::worse(x, y);
    };
    std::priority_queue<detail::PanelEstimate, std::vector<detail::PanelEstimate>, decltype(cmp)>
        panels(cmp);

    detail::PanelEstimate whole = detail::gauss_kronrod_15(f, a, b);
    double total_value = whole.value;
    double total_error = whole.error;
    panels.push(whole);

    int subdivisions = 0;
    while (total_error > std::max(q.abs_tol, q.rel_tol * std::abs(total_value))) {
        if (subdivisions >= q.max_subdivisions || panels.empty())
            return {total_value, total_error, subdivisions, false};

        detail::PanelEstimate worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Panel no longer splittable at double precision; its error is final.
            continue;
        }
        detail::PanelEstimate left = detail::gauss_kronrod_15(f, worst.a, mid);
        detail::PanelEstimate right = detail::gauss_kronrod_15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
    }
    return {total_value, total_error, subdivisions, true};
}

}  // namespace blockage
