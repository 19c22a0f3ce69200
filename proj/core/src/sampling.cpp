#include "symclass/sampling.hpp"

#include "symclass/errors.hpp"

namespace symclass {

namespace {

Vec draw_point(Rng& rng, std::size_t dim, double half_width, double r_min, const PointFilter& accept) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Vec x(static_cast<Eigen::Index>(dim));
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-half_width, half_width);
        if (x.norm() < r_min) continue;
        if (accept && !accept(x)) continue;
        return x;
    }
    throw InvalidArgument("could not draw an admissible sample point");
}

}  // namespace

std::vector<Vec> sample_points(std::size_t count, std::size_t dim, std::uint64_t seed, double half_width, double r_min,
                               const PointFilter& accept) {
    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw_point(rng, dim, half_width, r_min, accept));
    return out;
}

std::vector<Jet> sample_jets(std::size_t count, std::size_t dim, std::uint64_t seed, const JetBox& box,
                             const PointFilter& accept) {
    Rng rng(seed);
    std::vector<Jet> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Jet j;
        j.t = rng.uniform(box.t_lo, box.t_hi);
        j.x = draw_point(rng, dim, box.x_half, box.r_min, accept);
        j.v.resize(static_cast<Eigen::Index>(dim));
        for (Eigen::Index k = 0; k < j.v.size(); ++k) j.v(k) = rng.uniform(-box.v_half, box.v_half);
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<double> sample_times(std::size_t count, double a, double b) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(a + (b - a) * (static_cast<double>(i) + 0.5) / static_cast<double>(count));
    return out;
}

}  // namespace symclass
