#pragma once

#include <vector>

namespace symclass {

// Shape-preserving piecewise cubic Hermite interpolant (Fritsch–Carlson slopes).
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    // Knots must be strictly increasing, at least two of them.
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    const std::vector<double>& knots() const noexcept { return x_; }
    const std::vector<double>& values() const noexcept { return y_; }

    double operator()(double x) const;
    double derivative(double x) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, m_;
};

}  // namespace symclass
