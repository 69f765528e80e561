#pragma once

#include <vector>

namespace degenfront {

// Fritsch-Carlson monotone cubic interpolant. Exact on linear data; preserves
// monotonicity of the samples, so derivatives of monotone tabulations stay
// sign-definite. Evaluation outside [x_front, x_back] extrapolates linearly
// with the end slope.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, d_; // d_: node derivatives
};

} // namespace degenfront
