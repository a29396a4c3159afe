#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/ifs.hpp"
#include "fractalab/kernels.hpp"

namespace fractalab {

ComposedMap::ComposedMap(const IfsSystem& system, Word word) : system_(&system), word_(std::move(word)) {
    system.check_word(word_);
    if (system.all_similarities()) {
        Similarity acc = Similarity::identity(system.dim());
        for (std::size_t j = 0; j < word_.size(); ++j) acc = acc.after(*system.map(word_[j]).as_similarity());
        similarity_ = std::move(acc);
    }
}

Vec ComposedMap::operator()(const Vec& x) const {
    if (similarity_) return (*similarity_)(x);
    Vec y = x;
    for (std::size_t j = word_.size(); j-- > 0;) y = system_->map(word_[j])(y);
    return y;
}

Mat ComposedMap::jacobian(const Vec& x) const {
    if (similarity_) return similarity_->ratio * similarity_->isometry;
    Vec y = x;
    Mat jac = Mat::Identity(x.size(), x.size());
    for (std::size_t j = word_.size(); j-- > 0;) {
        const auto& f = system_->map(word_[j]);
        jac = f.jacobian(y) * jac;
        y = f(y);
    }
    return jac;
}

ComposedMap compose_word(const IfsSystem& system, const Word& word) {
    return ComposedMap(system, word);
}

double operator_norm(const Mat& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    return singular_value_range(a).second;
}

std::pair<double, double> singular_value_range(const Mat& a) {
    if (a.rows() == 1 && a.cols() == 1) return {std::abs(a(0, 0)), std::abs(a(0, 0))};
    Eigen::JacobiSVD<Mat> svd(a);
    const auto& sv = svd.singularValues();
    return {sv.minCoeff(), sv.maxCoeff()};
}

CylinderGeometry cylinder_geometry(const IfsSystem& system, const Word& word, const Vec& anchor) {
    const ComposedMap f = compose_word(system, word);
    CylinderGeometry g;
    g.word = word;
    g.anchor_image = f(anchor);
    if (f.is_similarity()) {
        g.derivative_norm = f.similarity().ratio;
    } else {
        g.derivative_norm = operator_norm(f.jacobian(anchor));
    }
    g.diameter = g.derivative_norm * system.attractor_diameter();
    return g;
}

CylinderGeometry cylinder_geometry(const IfsSystem& system, const Word& word) {
    return cylinder_geometry(system, word, system.base_point());
}

std::vector<double> uniform_weights(int m) {
    return std::vector<double>(static_cast<std::size_t>(m), 1.0 / m);
}

void check_weights(std::span<const double> weights, int m) {
    if (static_cast<int>(weights.size()) != m)
        throw InvalidWeightsError("expected " + std::to_string(m) + " weights, got " + std::to_string(weights.size()));
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw InvalidWeightsError("weights must be strictly positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidWeightsError("weights must sum to 1 (got " + std::to_string(sum) + ")");
}

PointCloud attractor_sample(const IfsSystem& system, std::span<const double> weights, std::size_t n, std::uint64_t seed) {
    check_weights(weights, system.size());
    if (n == 0) throw InvalidArgumentError("attractor_sample: n must be at least 1");
    return kernels::chaos_game(system, weights, n, seed);
}

}  // namespace fractalab
