#include "symclass/trajectory.hpp"

#include "symclass/errors.hpp"

#include <iomanip>
#include <ostream>

namespace symclass {

Trajectory::Trajectory(std::vector<double> t, std::vector<Vec> x, std::vector<Vec> v, std::vector<Vec> a,
                       IntegrationInfo info)
    : info_(info) {
    const std::size_t m = t.size();
    if (m < 2 || x.size() != m || v.size() != m || (!a.empty() && a.size() != m))
        throw InvalidArgument("trajectory needs at least two samples with matching sizes");
    for (std::size_t k = 1; k < m; ++k)
        if (!(t[k] > t[k - 1])) throw InvalidArgument("trajectory times must increase strictly");
    dim_ = static_cast<std::size_t>(x.front().size());
    if (a.empty()) {
        a.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t lo = k == 0 ? 0 : k - 1;
            const std::size_t hi = k + 1 == m ? k : k + 1;
            a[k] = (v[hi] - v[lo]) / (t[hi] - t[lo]);
        }
    }
    const auto n = static_cast<Eigen::Index>(dim_);
    std::vector<Vec> y(m), dy(m);
    for (std::size_t k = 0; k < m; ++k) {
        y[k].resize(2 * n);
        y[k] << x[k], v[k];
        dy[k].resize(2 * n);
        dy[k] << v[k], a[k];
    }
    sol_ = std::make_shared<const ode::DenseSolution>(std::move(t), std::move(y), std::move(dy));
}

Trajectory::Trajectory(std::shared_ptr<const ode::DenseSolution> sol, std::size_t dim, IntegrationInfo info)
    : sol_(std::move(sol)), dim_(dim), info_(info) {}

Vec Trajectory::position(double t) const {
    if (!covers(t)) throw OutOfDomain("time " + std::to_string(t) + " outside trajectory");
    return (*sol_)(t).head(static_cast<Eigen::Index>(dim_));
}

Vec Trajectory::velocity(double t) const {
    if (!covers(t)) throw OutOfDomain("time " + std::to_string(t) + " outside trajectory");
    return (*sol_)(t).tail(static_cast<Eigen::Index>(dim_));
}

Vec Trajectory::acceleration(double t) const {
    if (!covers(t)) throw OutOfDomain("time " + std::to_string(t) + " outside trajectory");
    return sol_->derivative(t).tail(static_cast<Eigen::Index>(dim_));
}

std::vector<double> Trajectory::sample_times(std::size_t count) const {
    std::vector<double> out(count);
    const double a = t_front(), b = t_back();
    for (std::size_t k = 0; k < count; ++k)
        out[k] = count == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
    if (count > 1) out.back() = b;
    return out;
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "t";
    for (std::size_t i = 1; i <= dim_; ++i) os << ",x" << i;
    for (std::size_t i = 1; i <= dim_; ++i) os << ",v" << i;
    os << '\n' << std::setprecision(17);
    const auto& ts = sol_->times();
    const auto& ys = sol_->states();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        os << ts[k];
        for (Eigen::Index i = 0; i < ys[k].size(); ++i) os << ',' << ys[k](i);
        os << '\n';
    }
}

}  // namespace symclass
