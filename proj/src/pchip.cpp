#include "degenfront/pchip.hpp"

#include <algorithm>
#include <cmath>

#include "degenfront/errors.hpp"

namespace degenfront {

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw invalid_parameter("pchip: need >= 2 nodes with matching values");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1]))
            throw invalid_parameter("pchip: abscissae must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
    } else {
        // Interior: weighted harmonic mean where slopes agree in sign.
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
                (delta[i - 1] > 0) != (delta[i] > 0)) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // Ends: three-point one-sided estimate clamped to keep monotonicity.
        auto end_slope = [](double h0, double h1, double del0, double del1) {
            double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
            if ((d > 0) != (del0 > 0) || del0 == 0.0) d = 0.0;
            else if ((del0 > 0) != (del1 > 0) && std::abs(d) > 3.0 * std::abs(del0))
                d = 3.0 * del0;
            return d;
        };
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

std::size_t Pchip::segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double Pchip::operator()(double x) const {
    if (x < x_.front()) return y_.front() + d_.front() * (x - x_.front());
    if (x > x_.back()) return y_.back() + d_.back() * (x - x_.back());
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::derivative(double x) const {
    if (x < x_.front()) return d_.front();
    if (x > x_.back()) return d_.back();
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6 * t2 - 6 * t) / h;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = (-6 * t2 + 6 * t) / h;
    const double dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

} // namespace degenfront
