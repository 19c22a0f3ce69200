#include "symclass/classifier_common.hpp"

#include "symclass/errors.hpp"

#include <algorithm>
#include <cmath>

namespace symclass {

namespace {

std::vector<Collineation> independent_catalog(const std::vector<Collineation>& catalog, const std::vector<Vec>& pts) {
    std::vector<Collineation> out;
    if (catalog.empty()) return out;
    const Eigen::Index n = pts.front().size();
    Mat acc(static_cast<Eigen::Index>(pts.size()) * n, 0);
    std::size_t rank = 0;
    for (const auto& Y : catalog) {
        Vec col(acc.rows());
        for (std::size_t p = 0; p < pts.size(); ++p) col.segment(static_cast<Eigen::Index>(p) * n, n) = Y.value(pts[p]);
        if (col.norm() == 0.0) continue;
        Mat trial(acc.rows(), acc.cols() + 1);
        trial << acc, col / col.norm();
        const std::size_t r = numeric_rank(trial, 1e-10);
        if (r > rank) {
            acc = std::move(trial);
            rank = r;
            out.push_back(Y);
        }
    }
    return out;
}

}  // namespace

ProblemContext::ProblemContext(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                               const std::vector<Collineation>& catalog, const ClassifierSettings& settings)
    : space_(&space), V_(&V), omega_(&omega), settings_(settings) {
    const std::size_t n = space.dimension();
    if (const Polynomial* p = V.polynomial_form(); p && p->dimension() != n)
        throw InvalidArgument("potential dimension does not match space");
    for (const auto& Y : catalog)
        if (Y.dimension() != n) throw InvalidArgument("catalog vector " + Y.label() + " has wrong dimension");

    const Interval& iv = omega.validity();
    lo_ = settings.t_lo;
    hi_ = settings.t_hi;
    if (std::isfinite(iv.lo)) lo_ = std::max(lo_, iv.lo_closed ? iv.lo : iv.lo + 1e-6 * (1.0 + std::abs(iv.lo)));
    if (std::isfinite(iv.hi)) hi_ = std::min(hi_, iv.hi_closed ? iv.hi : iv.hi - 1e-6 * (1.0 + std::abs(iv.hi)));
    if (!(lo_ < hi_)) throw UnsupportedOmega("omega validity " + iv.to_string() + " does not meet the coefficient window");
    t0_ = (settings.t0 >= lo_ && settings.t0 <= hi_) ? settings.t0 : 0.5 * (lo_ + hi_);
    times_ = sample_times(settings.time_samples, lo_, hi_);

    points_ = sample_points(settings.spatial_samples, n, settings.seed, 3.0, 0.5,
                            [this](const Vec& x) { return admissible(x); });
    vprime_.reserve(points_.size());
    vprime_jac_.reserve(points_.size());
    for (const auto& x : points_) {
        vprime_.push_back(raised_gradient(space, V, x));
        vprime_jac_.push_back(raised_gradient_jacobian(space, V, x));
    }
    catalog_ = independent_catalog(catalog, points_);
}

bool ProblemContext::admissible(const Vec& x) const {
    if (V_->is_singular() && x.norm() < std::max(V_->min_radius(), 1e-3)) return false;
    if (!space_->in_chart(x)) return false;
    try {
        const Vec g = raised_gradient(*space_, *V_, x);
        return g.allFinite() && std::isfinite(V_->eval(x));
    } catch (const Error&) {
        return false;
    }
}

Vec ProblemContext::bracket_with_gradient(const Collineation& Y, std::size_t p) const {
    const Vec& x = points_[p];
    return vprime_jac_[p] * Y.value(x) - Y.jacobian(x) * vprime_[p];
}

void require_nonconstant_omega(const ProblemContext& ctx) {
    if (ctx.omega().is_constant_on(ctx.window_lo(), ctx.window_hi()))
        throw UnsupportedOmega("omega is constant on the coefficient window; omega,t != 0 is required");
}

std::vector<std::pair<double, Vec>> rank_points(const ProblemContext& ctx, std::size_t count) {
    JetBox box;
    box.t_lo = std::max(box.t_lo, ctx.window_lo());
    box.t_hi = std::min(box.t_hi, ctx.window_hi());
    if (box.t_hi <= box.t_lo) box = JetBox{ctx.window_lo(), ctx.window_hi()};
    const auto jets = sample_jets(count, ctx.dimension(), ctx.settings().seed ^ 0x9e3779b97f4a7c15ULL, box,
                                  [&ctx](const Vec& x) { return ctx.admissible(x); });
    std::vector<std::pair<double, Vec>> out;
    out.reserve(jets.size());
    for (const auto& j : jets) out.emplace_back(j.t, j.x);
    return out;
}

}  // namespace symclass
