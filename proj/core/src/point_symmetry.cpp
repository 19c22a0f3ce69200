#include "symclass/point_symmetry.hpp"

#include "symclass/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace symclass {

PointSymmetry::PointSymmetry(std::size_t dim, std::vector<ScalarTerm> xi, std::vector<VectorTerm> eta,
                             std::string case_tag)
    : dim_(dim), xi_(std::move(xi)), eta_(std::move(eta)), case_tag_(std::move(case_tag)) {}

double PointSymmetry::xi(double t, const Vec& x) const {
    double s = 0.0;
    for (const auto& term : xi_) s += term(t, x);
    return s;
}

Vec PointSymmetry::eta(double t, const Vec& x) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim_));
    for (const auto& term : eta_) {
        const double c = term.coefficient(t);
        if (c != 0.0) v += c * term.field(x);
    }
    return v;
}

bool PointSymmetry::xi_depends_on_time_only() const {
    for (const auto& term : xi_)
        if (term.field) return false;
    return true;
}

bool PointSymmetry::closed_form() const {
    for (const auto& term : xi_)
        if (!term.coefficient.is_closed_form()) return false;
    for (const auto& term : eta_)
        if (!term.coefficient.is_closed_form()) return false;
    return true;
}

double PointSymmetry::t_front() const {
    double t = -std::numeric_limits<double>::infinity();
    for (const auto& term : xi_) t = std::max(t, term.coefficient.t_front());
    for (const auto& term : eta_) t = std::max(t, term.coefficient.t_front());
    return t;
}

double PointSymmetry::t_back() const {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& term : xi_) t = std::min(t, term.coefficient.t_back());
    for (const auto& term : eta_) t = std::min(t, term.coefficient.t_back());
    return t;
}

std::string PointSymmetry::describe() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const TimeFunction& c, const std::string& label, const char* suffix) {
        if (c.is_zero()) return;
        if (!first) os << " + ";
        first = false;
        const std::string cs = c.describe();
        if (cs != "1") os << "(" << cs << ")";
        if (!label.empty()) os << (cs != "1" ? "*" : "") << label;
        if (*suffix) os << (cs == "1" && label.empty() ? "" : " ") << suffix;
    };
    for (const auto& term : xi_) emit(term.coefficient, term.label, "d/dt");
    for (const auto& term : eta_) emit(term.coefficient, term.label, "");
    return first ? "0" : os.str();
}

Mat generator_matrix(const std::vector<const PointSymmetry*>& syms, const std::vector<std::pair<double, Vec>>& points) {
    if (syms.empty()) return Mat();
    const auto n = static_cast<Eigen::Index>(syms.front()->dimension());
    Mat M(static_cast<Eigen::Index>(points.size()) * (n + 1), static_cast<Eigen::Index>(syms.size()));
    for (std::size_t c = 0; c < syms.size(); ++c) {
        for (std::size_t p = 0; p < points.size(); ++p) {
            const auto& [t, x] = points[p];
            const Eigen::Index r = static_cast<Eigen::Index>(p) * (n + 1);
            M(r, static_cast<Eigen::Index>(c)) = syms[c]->xi(t, x);
            M.block(r + 1, static_cast<Eigen::Index>(c), n, 1) = syms[c]->eta(t, x);
        }
    }
    return M;
}

std::vector<std::size_t> independent_subset(const std::vector<const PointSymmetry*>& syms,
                                            const std::vector<std::pair<double, Vec>>& points, double rel_tol) {
    std::vector<std::size_t> kept;
    if (syms.empty()) return kept;
    const Mat M = normalize_columns(generator_matrix(syms, points));
    Mat acc(M.rows(), 0);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < syms.size(); ++c) {
        if (M.col(static_cast<Eigen::Index>(c)).norm() == 0.0) continue;
        Mat trial(M.rows(), acc.cols() + 1);
        trial << acc, M.col(static_cast<Eigen::Index>(c));
        const std::size_t r = numeric_rank(trial, rel_tol);
        if (r > rank) {
            acc = std::move(trial);
            rank = r;
            kept.push_back(c);
        }
    }
    return kept;
}

}  // namespace symclass
