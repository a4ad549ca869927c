#pragma once

// Sample point sets over an interval: uniform (right endpoints), random and
// convenience (user supplied).
//
// Random draws use std::mt19937_64, whose output sequence is fixed by the C++
// standard for a given seed. Doubles are formed directly from the top 53 bits
// as u = (k + 0.5) / 2^53, which lies strictly inside (0, 1), then mapped to
// a + (b - a) u. A draw that rounds onto an endpoint is discarded. Library
// distributions are not used because their output is implementation defined.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statcalc/format.hpp"
#include "statcalc/interval.hpp"

namespace statcalc {

enum class Strategy { Uniform, Random, Convenience };

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Uniform: return "uniform";
        case Strategy::Random: return "random";
        case Strategy::Convenience: return "convenience";
    }
    return "?";
}

inline std::optional<Strategy> strategy_from_name(std::string_view name) {
    if (name == "uniform") return Strategy::Uniform;
    if (name == "random") return Strategy::Random;
    if (name == "convenience") return Strategy::Convenience;
    return std::nullopt;
}

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for one cell of a repeated experiment:
///   mix64(base ^ mix64((stream << 32) | index))
/// `stream` is the trial number (or grid node), `index` the position in the
/// size list. Distinct cells get unrelated generator states.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) noexcept {
    return mix64(base ^ mix64((stream << 32) | (index & 0xffffffffULL)));
}

inline std::vector<double> uniform_sample(const Interval& iv, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_sample requires n >= 1");
    const double a = iv.a();
    const double h = iv.width() / static_cast<double>(n);
    std::vector<double> xs(n);
    for (std::size_t i = 1; i <= n; ++i) xs[i - 1] = a + static_cast<double>(i) * h;
    xs[n - 1] = iv.b();
    return xs;
}

inline std::vector<double> random_sample(const Interval& iv, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_sample requires n >= 1");
    std::mt19937_64 gen(seed);
    const double a = iv.a();
    const double w = iv.width();
    std::vector<double> xs;
    xs.reserve(n);
    while (xs.size() < n) {
        double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
        double x = a + w * u;
        if (a < x && x < iv.b()) xs.push_back(x);
    }
    return xs;
}

inline std::vector<double> convenience_sample(const Interval& iv, std::vector<double> points) {
    if (points.empty()) throw std::invalid_argument("convenience_sample requires at least one point");
    for (double p : points)
        if (!(iv.contains(p)))
            throw std::invalid_argument("convenience point " + format_real(p) + " lies outside [" +
                                        format_real(iv.a()) + ", " + format_real(iv.b()) + "]");
    std::sort(points.begin(), points.end());
    return points;
}

/// A strategy bound to an interval. Only Random uses `seed`; only
/// Convenience uses `points`.
struct SamplePlan {
    Strategy strategy = Strategy::Uniform;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> points;
    Interval interval{0.0, 1.0};

    static SamplePlan uniform(Interval iv, std::size_t n) { return {Strategy::Uniform, n, 0, {}, iv}; }
    static SamplePlan random(Interval iv, std::size_t n, std::uint64_t seed) {
        return {Strategy::Random, n, seed, {}, iv};
    }
    static SamplePlan convenience(Interval iv, std::vector<double> pts) {
        std::size_t n = pts.size();
        return {Strategy::Convenience, n, 0, std::move(pts), iv};
    }

    std::vector<double> sample() const {
        switch (strategy) {
            case Strategy::Uniform: return uniform_sample(interval, n);
            case Strategy::Random: return random_sample(interval, n, seed);
            case Strategy::Convenience: return convenience_sample(interval, points);
        }
        return {};
    }
};

/// Strategy, count and seed without an interval; instantiated per node when
/// the same rule is applied over many intervals [a, x_j].
struct PlanTemplate {
    Strategy strategy = Strategy::Uniform;
    std::size_t n = 100000;
    std::uint64_t seed = 0;

    SamplePlan instantiate(const Interval& iv, std::size_t node) const {
        switch (strategy) {
            case Strategy::Uniform: return SamplePlan::uniform(iv, n);
            case Strategy::Random: return SamplePlan::random(iv, n, derive_seed(seed, node, 0));
            case Strategy::Convenience: break;
        }
        throw std::invalid_argument("convenience sampling cannot be re-instantiated over new intervals");
    }
};

}  // namespace statcalc
