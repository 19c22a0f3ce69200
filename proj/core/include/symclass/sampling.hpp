#pragma once

#include "symclass/linalg.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace symclass {

// Seeded generator with a platform-independent uniform draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    // Uniform on [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

struct JetBox {
    double t_lo = 1.0;
    double t_hi = 5.0;
    double x_half = 3.0;
    double r_min = 0.5;
    double v_half = 2.0;
};

struct Jet {
    double t;
    Vec x;
    Vec v;
};

using PointFilter = std::function<bool(const Vec&)>;

constexpr std::uint64_t default_seed = 20240611ULL;

// Points uniform in [-half, half]^n with |x| >= r_min that pass `accept`.
std::vector<Vec> sample_points(std::size_t count, std::size_t dim, std::uint64_t seed, double half_width,
                               double r_min, const PointFilter& accept = {});

std::vector<Jet> sample_jets(std::size_t count, std::size_t dim, std::uint64_t seed, const JetBox& box = {},
                             const PointFilter& accept = {});

// count points uniformly spaced on [a, b] (interior, offset by half a cell).
std::vector<double> sample_times(std::size_t count, double a, double b);

}  // namespace symclass
