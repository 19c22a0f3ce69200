#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace symclass {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3 array T(i, j, k), row-major.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }
    double max_abs() const;
    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator*=(double s);

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Rank-4 array used for ∂_l Γ^i_jk, indexed (i, j, k, l).
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    double max_abs() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Singular values of A, descending.
Vec singular_values(const Mat& A);

// Number of singular values above rel_tol * sigma_max.
std::size_t numeric_rank(const Mat& A, double rel_tol);

// Right null space of A as columns. Singular values below rel_tol * sigma_max count as zero.
Mat null_space(const Mat& A, double rel_tol);

// Scales each row to unit Euclidean norm; zero rows are left alone.
Mat normalize_rows(const Mat& A);

// Scales each column to unit Euclidean norm; zero columns are left alone.
Mat normalize_columns(const Mat& A);

// Re-expresses a basis (columns) in reduced row-echelon form so that results
// do not depend on the SVD's arbitrary rotation inside the null space.
Mat canonical_basis(const Mat& basis);

// Canonical columns spanning a complement of span(inner) inside span(outer).
// inner must lie in span(outer).
Mat complement_within(const Mat& outer, const Mat& inner);

}  // namespace symclass
