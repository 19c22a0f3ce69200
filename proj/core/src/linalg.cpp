#include "symclass/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace symclass {

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Vec singular_values(const Mat& A) {
    if (A.size() == 0) return Vec();
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues();
}

std::size_t numeric_rank(const Mat& A, double rel_tol) {
    const Vec s = singular_values(A);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

Mat null_space(const Mat& A, double rel_tol) {
    const Eigen::Index cols = A.cols();
    if (A.rows() == 0) return Mat::Identity(cols, cols);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    Eigen::Index rank = 0;
    if (s.size() > 0 && s(0) > 0.0) {
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rel_tol * s(0)) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

Mat normalize_rows(const Mat& A) {
    Mat out = A;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double n = out.row(i).norm();
        if (n > 0.0) out.row(i) /= n;
    }
    return out;
}

Mat normalize_columns(const Mat& A) {
    Mat out = A;
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        const double n = out.col(j).norm();
        if (n > 0.0) out.col(j) /= n;
    }
    return out;
}

Mat canonical_basis(const Mat& basis) {
    if (basis.cols() == 0) return basis;
    Mat B = basis.transpose();
    const Eigen::Index rows = B.rows();
    const Eigen::Index cols = B.cols();
    const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
    Eigen::Index pivot_row = 0;
    for (Eigen::Index c = 0; c < cols && pivot_row < rows; ++c) {
        Eigen::Index best = pivot_row;
        for (Eigen::Index r = pivot_row + 1; r < rows; ++r)
            if (std::abs(B(r, c)) > std::abs(B(best, c))) best = r;
        if (std::abs(B(best, c)) < 1e-9 * scale) continue;
        B.row(pivot_row).swap(B.row(best));
        B.row(pivot_row) /= B(pivot_row, c);
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == pivot_row) continue;
            B.row(r) -= B(r, c) * B.row(pivot_row);
        }
        ++pivot_row;
    }
    for (Eigen::Index i = 0; i < B.size(); ++i)
        if (std::abs(B.data()[i]) < 1e-12) B.data()[i] = 0.0;
    return B.topRows(pivot_row).transpose();
}

Mat complement_within(const Mat& outer, const Mat& inner) {
    if (outer.cols() == 0 || inner.cols() == 0) return outer;
    const Mat coords = outer.colPivHouseholderQr().solve(inner);
    const Mat keep = null_space(coords.transpose(), 1e-8);
    if (keep.cols() == 0) return Mat(outer.rows(), 0);
    return canonical_basis(outer * keep);
}

}  // namespace symclass
