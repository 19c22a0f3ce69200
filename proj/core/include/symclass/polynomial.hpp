#pragma once

#include "symclass/linalg.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace symclass {

// Sparse multivariate polynomial in x1..xn with real coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(std::size_t dim) : dim_(dim) {}

    static Polynomial constant(std::size_t dim, double c);
    // x_{index+1}, index is 0-based.
    static Polynomial variable(std::size_t dim, std::size_t index);

    // Grammar: sums/products/integer powers of numbers, x1..xn and parentheses,
    // e.g. "x1^2 + 3*x1*x2 - 0.5". Throws ParseError on bad input.
    static Polynomial parse(std::string_view text, std::size_t dim);

    std::size_t dimension() const noexcept { return dim_; }
    const std::map<Exponents, double>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int degree() const;

    double operator()(const Vec& x) const;
    Polynomial derivative(std::size_t index) const;

    Polynomial& add_term(const Exponents& e, double c);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double s) const;
    Polynomial operator-() const { return *this * -1.0; }
    Polynomial pow(int k) const;

    std::string to_string() const;

private:
    void prune();

    std::size_t dim_ = 0;
    std::map<Exponents, double> terms_;
};

}  // namespace symclass
