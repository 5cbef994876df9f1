#pragma once

#include <vector>

namespace collrates {

// Natural cubic spline: C2 interpolant with zero second derivative at both
// ends. Knots must be strictly increasing; two knots degenerate to a line.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    const std::vector<double>& knots() const { return x_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
    std::size_t segment(double x) const;
};

}  // namespace collrates
