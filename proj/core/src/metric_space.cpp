#include "symclass/metric_space.hpp"

#include "symclass/errors.hpp"

#include <cmath>
#include <sstream>

namespace symclass {

std::string to_string(SpaceFamily f) { return f == SpaceFamily::Euclidean ? "Euclidean" : "UserCatalog"; }

MetricSpace MetricSpace::euclidean(std::size_t n) {
    if (n == 0) throw InvalidArgument("dimension must be >= 1");
    MetricSpace s;
    s.n_ = n;
    s.family_ = SpaceFamily::Euclidean;
    return s;
}

MetricSpace MetricSpace::polynomial_metric(std::vector<std::vector<Polynomial>> g) {
    const std::size_t n = g.size();
    if (n == 0) throw InvalidArgument("metric must be nonempty");
    for (const auto& row : g)
        if (row.size() != n) throw InvalidArgument("metric must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (g[i][j].dimension() != n) throw InvalidArgument("metric component dimension mismatch");
            if (g[i][j].terms() != g[j][i].terms()) throw InvalidArgument("metric components must be symmetric");
        }
    MetricSpace s;
    s.n_ = n;
    s.family_ = SpaceFamily::UserCatalog;
    s.dg_.assign(n, std::vector<std::vector<Polynomial>>(n));
    s.ddg_.assign(n, std::vector<std::vector<std::vector<Polynomial>>>(n, std::vector<std::vector<Polynomial>>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                s.dg_[i][j].push_back(g[i][j].derivative(k));
                for (std::size_t l = 0; l < n; ++l) s.ddg_[i][j][k].push_back(s.dg_[i][j][k].derivative(l));
            }
    s.g_ = std::move(g);
    return s;
}

MetricSpace MetricSpace::from_evaluator(std::size_t n, MetricFn g) {
    if (n == 0 || !g) throw InvalidArgument("metric evaluator needs dimension and function");
    MetricSpace s;
    s.n_ = n;
    s.family_ = SpaceFamily::UserCatalog;
    s.evaluator_ = std::move(g);
    return s;
}

std::string MetricSpace::describe() const {
    std::ostringstream os;
    if (is_euclidean()) {
        os << "E^" << n_;
        return os.str();
    }
    if (g_.empty()) {
        os << "user metric (evaluator), n=" << n_;
        return os.str();
    }
    os << "g = [";
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << g_[i][j].to_string();
    }
    os << "]";
    return os.str();
}

void MetricSpace::check_dim(const Vec& x) const {
    if (static_cast<std::size_t>(x.size()) != n_) throw InvalidArgument("point dimension does not match space");
    if (!x.allFinite()) throw OutOfChart("non-finite point");
}

Mat MetricSpace::metric(const Vec& x) const {
    check_dim(x);
    const auto n = static_cast<Eigen::Index>(n_);
    if (is_euclidean()) return Mat::Identity(n, n);
    Mat g(n, n);
    if (evaluator_) {
        g = evaluator_(x);
        if (g.rows() != n || g.cols() != n) throw InvalidArgument("metric evaluator returned wrong shape");
    } else {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) g(i, j) = g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
    }
    if (!g.allFinite() || (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw OutOfChart("metric not symmetric/finite at point");
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())) {
        std::ostringstream os;
        os << "metric not positive-definite at x = (" << x.transpose() << ")";
        throw OutOfChart(os.str());
    }
    return g;
}

Mat MetricSpace::inverse_metric(const Vec& x) const {
    if (is_euclidean()) {
        check_dim(x);
        return Mat::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    }
    const Mat g = metric(x);
    return g.llt().solve(Mat::Identity(g.rows(), g.cols()));
}

bool MetricSpace::in_chart(const Vec& x) const {
    try {
        metric(x);
        return true;
    } catch (const OutOfChart&) {
        return false;
    }
}

Tensor3 MetricSpace::metric_derivative(const Vec& x) const {
    check_dim(x);
    Tensor3 d(n_);
    if (is_euclidean()) return d;
    if (!g_.empty()) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) d(i, j, k) = dg_[i][j][k](x);
        return d;
    }
    const double h = 1e-6 * (1.0 + x.norm());
    for (std::size_t k = 0; k < n_; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        Vec p1 = x, m1 = x, p2 = x, m2 = x;
        p1(kk) += h;
        m1(kk) -= h;
        p2(kk) += 2 * h;
        m2(kk) -= 2 * h;
        const Mat dk = (metric(m2) - 8.0 * metric(m1) + 8.0 * metric(p1) - metric(p2)) / (12.0 * h);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) d(i, j, k) = dk(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return d;
}

Tensor3 MetricSpace::christoffel_from(const Mat& ginv, const Tensor3& dg) const {
    Tensor3 G(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = j; k < n_; ++k) {
                double s = 0.0;
                for (std::size_t m = 0; m < n_; ++m)
                    s += ginv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) *
                         (dg(m, k, j) + dg(m, j, k) - dg(j, k, m));
                G(i, j, k) = 0.5 * s;
                G(i, k, j) = 0.5 * s;
            }
    return G;
}

Tensor3 MetricSpace::christoffel(const Vec& x) const {
    check_dim(x);
    if (is_euclidean()) return Tensor3(n_);
    return christoffel_from(inverse_metric(x), metric_derivative(x));
}

Tensor4 MetricSpace::christoffel_derivative(const Vec& x) const {
    check_dim(x);
    Tensor4 out(n_);
    if (is_euclidean()) return out;
    if (!g_.empty()) {
        // ∂_l Γ^i_jk = ∂_l g^im Γ_mjk + g^im ∂_l Γ_mjk,  ∂_l g^im = -g^ia ∂_l g_ab g^bm
        const Mat ginv = inverse_metric(x);
        const Tensor3 dg = metric_derivative(x);
        for (std::size_t l = 0; l < n_; ++l) {
            Mat dl(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b) dl(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = dg(a, b, l);
            const Mat dginv = -ginv * dl * ginv;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    for (std::size_t k = 0; k < n_; ++k) {
                        double s = 0.0;
                        for (std::size_t m = 0; m < n_; ++m) {
                            const double first = 0.5 * (dg(m, k, j) + dg(m, j, k) - dg(j, k, m));
                            const double dfirst =
                                0.5 * (ddg_[m][k][j][l](x) + ddg_[m][j][k][l](x) - ddg_[j][k][m][l](x));
                            s += dginv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) * first +
                                 ginv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) * dfirst;
                        }
                        out(i, j, k, l) = s;
                    }
        }
        return out;
    }
    // Opaque metric: differentiate the (already numeric) Christoffels with a wider stencil.
    const double h = 1e-3 * (1.0 + x.norm());
    for (std::size_t l = 0; l < n_; ++l) {
        const auto ll = static_cast<Eigen::Index>(l);
        Vec p1 = x, m1 = x, p2 = x, m2 = x;
        p1(ll) += h;
        m1(ll) -= h;
        p2(ll) += 2 * h;
        m2(ll) -= 2 * h;
        const Tensor3 Gp1 = christoffel(p1), Gm1 = christoffel(m1), Gp2 = christoffel(p2), Gm2 = christoffel(m2);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    out(i, j, k, l) = (Gm2(i, j, k) - 8.0 * Gm1(i, j, k) + 8.0 * Gp1(i, j, k) - Gp2(i, j, k)) / (12.0 * h);
    }
    return out;
}

Vec raised_gradient(const MetricSpace& space, const ScalarField& V, const Vec& x) {
    const Vec g = V.grad(x);
    if (space.is_euclidean()) return g;
    return space.inverse_metric(x) * g;
}

Mat raised_gradient_jacobian(const MetricSpace& space, const ScalarField& V, const Vec& x) {
    const Mat H = V.hessian(x);
    if (space.is_euclidean()) return H;
    const std::size_t n = space.dimension();
    const Mat ginv = space.inverse_metric(x);
    const Tensor3 dg = space.metric_derivative(x);
    const Vec grad = V.grad(x);
    Mat J = ginv * H;
    for (std::size_t j = 0; j < n; ++j) {
        Mat dj(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) dj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = dg(a, b, j);
        J.col(static_cast<Eigen::Index>(j)) -= ginv * dj * ginv * grad;
    }
    return J;
}

}  // namespace symclass
