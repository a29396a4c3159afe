#include <omp.h>

#include <cmath>

#include "fractalab/kernels.hpp"

namespace fractalab::kernels {

void LogSum::add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x > max) {
        // Rescale the running sum to the new maximum.
        const double scale = std::isinf(max) ? 0.0 : std::exp(max - x);
        sum *= scale;
        comp *= scale;
        max = x;
    }
    // Neumaier compensated addition of exp(x - max).
    const double term = std::exp(x - max);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) comp += (sum - t) + term;
    else comp += (term - t) + sum;
    sum = t;
}

void LogSum::merge(const LogSum& other) {
    if (std::isinf(other.max)) return;
    if (std::isinf(max)) {
        *this = other;
        return;
    }
    const double hi = std::max(max, other.max);
    const double a = std::exp(max - hi);
    const double b = std::exp(other.max - hi);
    const double s1 = sum * a, c1 = comp * a;
    const double s2 = other.sum * b, c2 = other.comp * b;
    const double t = s1 + s2;
    double c = c1 + c2;
    if (std::abs(s1) >= std::abs(s2)) c += (s1 - t) + s2;
    else c += (s2 - t) + s1;
    max = hi;
    sum = t;
    comp = c;
}

double LogSum::value() const {
    if (std::isinf(max)) return max;
    return max + std::log(sum + comp);
}

namespace {

// Depth-first walk over words built by prepending letters, so the
// derivative chain extends with one Jacobian per step:
//   f_{iw}'(z) = f_i'(f_w(z)) f_w'(z).
struct Walker {
    const IfsSystem& system;
    double s;
    int kmax;
    double log_diam_k;  // log |K|
    std::vector<LogSum>& sums;

    void similarity(int depth, double log_ratio) {
        const auto& maps = system.maps();
        for (const auto& f : maps) {
            const double lr = log_ratio + std::log(f.as_similarity()->ratio);
            sums[static_cast<std::size_t>(depth)].add(s * (lr + log_diam_k));
            if (depth + 1 < kmax) similarity(depth + 1, lr);
        }
    }

    void generic(int depth, const Vec& image, const Mat& jac) {
        for (const auto& f : system.maps()) {
            Vec y = f(image);
            Mat j = f.jacobian(image) * jac;
            const double lr = std::log(operator_norm(j));
            sums[static_cast<std::size_t>(depth)].add(s * (lr + log_diam_k));
            if (depth + 1 < kmax) generic(depth + 1, y, j);
        }
    }
};

std::vector<double> finish(const std::vector<LogSum>& sums) {
    std::vector<double> out;
    out.reserve(sums.size());
    for (const auto& l : sums) out.push_back(l.value());
    return out;
}

struct Prefix {
    double log_ratio = 0.0;
    Vec image;
    Mat jac;
};

// Splits the tree at the smallest depth with enough subtrees to share out.
int split_depth(int m, int kmax) {
    int p = 1;
    std::uint64_t count = static_cast<std::uint64_t>(m);
    while (p < kmax - 1 && count < 256) {
        ++p;
        count *= static_cast<std::uint64_t>(m);
    }
    return std::min(p, kmax);
}

}  // namespace

std::vector<double> word_power_sums(const IfsSystem& system, double s, int kmax) {
    const int m = system.size();
    const double log_k = std::log(system.attractor_diameter());
    const int p = split_depth(m, kmax);
    const bool sim = system.all_similarities();

    // Shallow levels serially, collecting the level-p prefixes in rank order.
    std::vector<LogSum> head(static_cast<std::size_t>(kmax));
    std::vector<Prefix> level{{0.0, system.base_point(), Mat::Identity(system.dim(), system.dim())}};
    for (int depth = 0; depth < p; ++depth) {
        std::vector<Prefix> next;
        next.reserve(level.size() * static_cast<std::size_t>(m));
        for (const auto& pre : level) {
            for (const auto& f : system.maps()) {
                Prefix q;
                if (sim) {
                    q.log_ratio = pre.log_ratio + std::log(f.as_similarity()->ratio);
                } else {
                    q.image = f(pre.image);
                    q.jac = f.jacobian(pre.image) * pre.jac;
                    q.log_ratio = std::log(operator_norm(q.jac));
                }
                head[static_cast<std::size_t>(depth)].add(s * (q.log_ratio + log_k));
                next.push_back(std::move(q));
            }
        }
        level = std::move(next);
    }
    if (p >= kmax) return finish(head);

    const auto n = static_cast<std::int64_t>(level.size());
    std::vector<std::vector<LogSum>> partial(level.size(), std::vector<LogSum>(static_cast<std::size_t>(kmax)));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        Walker w{system, s, kmax, log_k, partial[static_cast<std::size_t>(i)]};
        const auto& pre = level[static_cast<std::size_t>(i)];
        if (sim) w.similarity(p, pre.log_ratio);
        else w.generic(p, pre.image, pre.jac);
    }
    // Fixed merge order keeps the result independent of scheduling.
    for (const auto& part : partial)
        for (std::size_t k = 0; k < head.size(); ++k) head[k].merge(part[k]);
    return finish(head);
}

namespace serial {

std::vector<double> word_power_sums(const IfsSystem& system, double s, int kmax) {
    std::vector<LogSum> sums(static_cast<std::size_t>(kmax));
    Walker w{system, s, kmax, std::log(system.attractor_diameter()), sums};
    if (system.all_similarities()) w.similarity(0, 0.0);
    else w.generic(0, system.base_point(), Mat::Identity(system.dim(), system.dim()));
    return finish(sums);
}

}  // namespace serial

}  // namespace fractalab::kernels
