#pragma once

#include "symclass/linalg.hpp"
#include "symclass/polynomial.hpp"
#include "symclass/scalar_field.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symclass {

enum class SpaceFamily { Euclidean, UserCatalog };

std::string to_string(SpaceFamily f);

// Riemannian chart: metric g_ij(x) and its Levi-Civita connection.
class MetricSpace {
public:
    using MetricFn = std::function<Mat(const Vec&)>;

    static MetricSpace euclidean(std::size_t n);
    // Metric with polynomial components; derivatives are exact.
    static MetricSpace polynomial_metric(std::vector<std::vector<Polynomial>> g);
    // Opaque evaluator; derivatives by central differences.
    static MetricSpace from_evaluator(std::size_t n, MetricFn g);

    std::size_t dimension() const noexcept { return n_; }
    SpaceFamily family() const noexcept { return family_; }
    bool is_euclidean() const noexcept { return family_ == SpaceFamily::Euclidean; }
    std::string describe() const;

    // Throws OutOfChart when g is not symmetric positive-definite at x.
    Mat metric(const Vec& x) const;
    Mat inverse_metric(const Vec& x) const;
    // D(i, j, k) = ∂_k g_ij
    Tensor3 metric_derivative(const Vec& x) const;
    // Γ(i, j, k) = Γ^i_jk
    Tensor3 christoffel(const Vec& x) const;
    // (i, j, k, l) = ∂_l Γ^i_jk
    Tensor4 christoffel_derivative(const Vec& x) const;

    bool in_chart(const Vec& x) const;

private:
    MetricSpace() = default;
    void check_dim(const Vec& x) const;
    Tensor3 christoffel_from(const Mat& ginv, const Tensor3& dg) const;

    std::size_t n_ = 0;
    SpaceFamily family_ = SpaceFamily::Euclidean;
    std::vector<std::vector<Polynomial>> g_;
    std::vector<std::vector<std::vector<Polynomial>>> dg_;               // [i][j][k]
    std::vector<std::vector<std::vector<std::vector<Polynomial>>>> ddg_;  // [i][j][k][l]
    MetricFn evaluator_;
};

// V'^i = g^ij ∂_j V
Vec raised_gradient(const MetricSpace& space, const ScalarField& V, const Vec& x);
// J(i, j) = ∂_j V'^i
Mat raised_gradient_jacobian(const MetricSpace& space, const ScalarField& V, const Vec& x);

}  // namespace symclass
