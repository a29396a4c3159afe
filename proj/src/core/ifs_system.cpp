#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "fractalab/errors.hpp"
#include "fractalab/ifs.hpp"
#include "fractalab/kernels.hpp"

namespace fractalab {

namespace {

constexpr std::uint64_t kDiameterSeed = 0x6b2f'1d3a'77c5'0e91ULL;
constexpr std::size_t kDiameterSample = 100'000;
constexpr int kBallProbes = 2000;

// Deterministic probe set for the bounding ball: center, axis extremes,
// and uniformly distributed interior/boundary points.
std::vector<Vec> ball_probes(const BoundingBall& ball) {
    const auto d = ball.center.size();
    std::vector<Vec> pts{ball.center};
    for (Eigen::Index a = 0; a < d; ++a) {
        Vec e = Vec::Zero(d);
        e[a] = ball.radius;
        pts.push_back(ball.center + e);
        pts.push_back(ball.center - e);
    }
    std::mt19937_64 rng(0x9a11'b0b5ULL);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    for (int i = 0; i < kBallProbes; ++i) {
        Vec dir(d);
        for (Eigen::Index a = 0; a < d; ++a) dir[a] = gauss(rng);
        dir.normalize();
        const double rad = (i % 2 == 0) ? ball.radius : ball.radius * std::pow(unif(rng), 1.0 / static_cast<double>(d));
        pts.push_back(ball.center + rad * dir);
    }
    return pts;
}

std::vector<Vec> directions(int d) {
    std::vector<Vec> out;
    if (d == 2) {
        for (int i = 0; i < 720; ++i) {
            const double t = std::numbers::pi * i / 720.0;
            Vec v(2);
            v << std::cos(t), std::sin(t);
            out.push_back(v);
        }
    } else {
        // Fibonacci hemisphere.
        const int n = 2000;
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            const double z = 1.0 - (i + 0.5) / n;
            const double r = std::sqrt(1.0 - z * z);
            Vec v(3);
            v << r * std::cos(golden * i), r * std::sin(golden * i), z;
            out.push_back(v);
        }
    }
    return out;
}

struct Extent {
    double diameter;
    BoundingBall ball;
    std::optional<std::pair<double, double>> interval;
    DiameterMethod method;
};

Extent exact_interval_1d(const IfsSystem& sys) {
    double lo = sys.bounding_ball().center[0] - sys.bounding_ball().radius;
    double hi = sys.bounding_ball().center[0] + sys.bounding_ball().radius;
    // Hull iteration [lo, hi] <- hull of f_i([lo, hi]); converges at rate max
    // ratio. Run to the floating-point fixed point, not just to a tolerance.
    for (int it = 0; it < 100000; ++it) {
        double nlo = std::numeric_limits<double>::infinity(), nhi = -nlo;
        for (const auto& f : sys.maps()) {
            const auto* s = f.as_similarity();
            const double a = s->ratio * s->isometry(0, 0) * lo + s->translation[0];
            const double b = s->ratio * s->isometry(0, 0) * hi + s->translation[0];
            nlo = std::min({nlo, a, b});
            nhi = std::max({nhi, a, b});
        }
        const double change = std::max(std::abs(nlo - lo), std::abs(nhi - hi));
        lo = nlo;
        hi = nhi;
        if (change == 0.0) break;
    }
    BoundingBall b{Vec::Constant(1, 0.5 * (lo + hi)), 0.5 * (hi - lo)};
    return {hi - lo, b, std::make_pair(lo, hi), DiameterMethod::ExactFixedPoint};
}

Extent sampled_extent(const IfsSystem& sys) {
    const PointCloud cloud = kernels::chaos_game(sys, uniform_weights(sys.size()), kDiameterSample, kDiameterSeed);
    const int d = cloud.dim;
    Vec lo = Vec::Constant(d, std::numeric_limits<double>::infinity());
    Vec hi = -lo;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (int k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], cloud.coords[i * d + k]);
            hi[k] = std::max(hi[k], cloud.coords[i * d + k]);
        }
    double diameter = 0.0;
    const std::size_t n = cloud.size();
    const double* xs = cloud.coords.data();
    auto dist = [&](std::size_t a, std::size_t b) {
        double s2 = 0.0;
        for (int k = 0; k < d; ++k) s2 += (xs[a * d + k] - xs[b * d + k]) * (xs[a * d + k] - xs[b * d + k]);
        return std::sqrt(s2);
    };
    std::vector<std::size_t> cand;
    if (d == 1) {
        diameter = hi[0] - lo[0];
    } else if (d == 2) {
        // Farthest pair lies on the convex hull (monotone chain).
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return xs[2 * a] != xs[2 * b] ? xs[2 * a] < xs[2 * b] : xs[2 * a + 1] < xs[2 * b + 1];
        });
        auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
            return (xs[2 * a] - xs[2 * o]) * (xs[2 * b + 1] - xs[2 * o + 1]) -
                   (xs[2 * a + 1] - xs[2 * o + 1]) * (xs[2 * b] - xs[2 * o]);
        };
        std::vector<std::size_t> hull(2 * n);
        std::size_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
            while (h >= 2 && cross(hull[h - 2], hull[h - 1], idx[i]) <= 0.0) --h;
            hull[h++] = idx[i];
        }
        for (std::size_t i = n - 1, t = h + 1; i-- > 0;) {
            while (h >= t && cross(hull[h - 2], hull[h - 1], idx[i]) <= 0.0) --h;
            hull[h++] = idx[i];
        }
        cand.assign(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(h));
    } else {
        const auto dirs = directions(d);
        cand.resize(2 * dirs.size());
        const auto nd = static_cast<std::int64_t>(dirs.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < nd; ++j) {
            const Vec& u = dirs[static_cast<std::size_t>(j)];
            std::size_t amin = 0, amax = 0;
            double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
            for (std::size_t i = 0; i < n; ++i) {
                double p = 0.0;
                for (int k = 0; k < d; ++k) p += u[k] * xs[i * d + k];
                if (p < pmin) { pmin = p; amin = i; }
                if (p > pmax) { pmax = p; amax = i; }
            }
            cand[2 * static_cast<std::size_t>(j)] = amin;
            cand[2 * static_cast<std::size_t>(j) + 1] = amax;
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::size_t a = 0; a < cand.size(); ++a)
        for (std::size_t b = a + 1; b < cand.size(); ++b) diameter = std::max(diameter, dist(cand[a], cand[b]));
    Vec center = 0.5 * (lo + hi);
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s2 = 0.0;
        for (int k = 0; k < d; ++k) s2 += (xs[i * d + k] - center[k]) * (xs[i * d + k] - center[k]);
        radius = std::max(radius, std::sqrt(s2));
    }
    return {diameter, BoundingBall{center, radius}, std::nullopt, DiameterMethod::Sampled};
}

Extent attractor_extent(const IfsSystem& sys) {
    if (sys.dim() == 1 && sys.all_similarities()) return exact_interval_1d(sys);
    return sampled_extent(sys);
}

}  // namespace

std::string to_string(DiameterMethod m) {
    return m == DiameterMethod::ExactFixedPoint ? "exact-fixed-point" : "sampled";
}

IfsSystem::IfsSystem(std::vector<ContractionMap> maps, BoundingBall ball) : maps_(std::move(maps)), ball_(std::move(ball)) {
    if (maps_.size() < 2) throw InvalidArgumentError("an IFS needs at least two maps");
    dim_ = static_cast<int>(ball_.center.size());
    if (dim_ < 1 || dim_ > kMaxDim) throw InvalidArgumentError("ambient dimension must be 1, 2 or 3");
    if (!(ball_.radius > 0.0)) throw InvalidArgumentError("bounding ball radius must be positive");
    for (const auto& f : maps_) {
        if (f.dim() != dim_) throw InvalidArgumentError("map dimension does not match the bounding ball");
        all_similarities_ = all_similarities_ && f.kind() == MapKind::Similarity;
    }
    validate_maps();

    Vec x = ball_.center;
    for (int i = 0; i < 40; ++i) x = maps_[static_cast<std::size_t>(i) % maps_.size()](x);
    base_point_ = x;

    estimate_diameter();
}

void IfsSystem::validate_maps() {
    const double tol = 1e-9 * ball_.radius;
    std::vector<Vec> probes;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        const auto& f = maps_[i];
        const std::string which = "map " + std::to_string(i + 1);
        if (const auto* s = f.as_similarity()) {
            max_contraction_ = std::max(max_contraction_, s->ratio);
            // f(B(c, R)) = B(f(c), ratio R) must lie inside B(c, R).
            if ((f(ball_.center) - ball_.center).norm() + s->ratio * ball_.radius > ball_.radius * (1.0 + 1e-12))
                throw ContractionError(which + " does not send the bounding ball into itself");
            continue;
        }
        if (probes.empty()) probes = ball_probes(ball_);
        for (const Vec& p : probes) {
            const double norm = operator_norm(f.jacobian(p));
            if (!(norm < 1.0)) throw ContractionError(which + ": Jacobian norm " + std::to_string(norm) + " >= 1 inside the bounding ball");
            max_contraction_ = std::max(max_contraction_, norm);
            if (!ball_.contains(f(p), tol)) throw ContractionError(which + " does not send the bounding ball into itself");
        }
    }
}

void IfsSystem::estimate_diameter() {
    const Extent e = attractor_extent(*this);
    if (!(e.diameter > 1e-12 * ball_.radius))
        throw DegenerateSystemError("attractor has zero diameter (all maps share a fixed point)");
    diameter_ = e.diameter;
    diameter_method_ = e.method;
    attractor_ball_ = e.ball;
    interval_ = e.interval;
}

std::vector<double> IfsSystem::ratios() const {
    std::vector<double> out;
    for (const auto& f : maps_) out.push_back(f.as_similarity() ? f.as_similarity()->ratio : std::nan(""));
    return out;
}

IfsSystem IfsSystem::with_diameter_scale(double factor) const {
    IfsSystem copy = *this;
    copy.diameter_ *= factor;
    return copy;
}

void IfsSystem::check_word(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 1 || w[i] > size())
            throw InvalidWordError("word " + w.to_string() + ": index " + std::to_string(w[i]) + " outside 1.." +
                                   std::to_string(size()));
    }
}

DiameterEstimate estimate_attractor_diameter(const IfsSystem& system) {
    const Extent e = attractor_extent(system);
    return {e.diameter, e.method};
}

}  // namespace fractalab
