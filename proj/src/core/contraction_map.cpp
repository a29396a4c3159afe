#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/ifs.hpp"

namespace fractalab {

Similarity Similarity::identity(int dim) {
    return {1.0, Mat::Identity(dim, dim), Vec::Zero(dim)};
}

void Similarity::apply(std::span<const double> in, std::span<double> out) const {
    const int d = dim();
    if (d == 1) {
        out[0] = ratio * isometry(0, 0) * in[0] + translation[0];
        return;
    }
    for (int r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += isometry(r, c) * in[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = ratio * acc + translation[r];
    }
}

Vec Similarity::operator()(const Vec& x) const {
    return ratio * (isometry * x) + translation;
}

Similarity Similarity::after(const Similarity& inner) const {
    return {ratio * inner.ratio, isometry * inner.isometry, ratio * (isometry * inner.translation) + translation};
}

GenericMap::GenericMap(std::vector<Expression> components, std::vector<Expression> jacobian)
    : components_(std::move(components)), jacobian_(std::move(jacobian)) {
    const auto d = components_.size();
    if (d == 0 || jacobian_.size() != d * d)
        throw InvalidArgumentError("generic map needs d components and a d x d Jacobian");
}

void GenericMap::apply(std::span<const double> in, std::span<double> out) const {
    for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](in);
}

Mat GenericMap::jacobian(std::span<const double> x) const {
    const int d = dim();
    Mat j(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) j(r, c) = jacobian_[static_cast<std::size_t>(r * d + c)](x);
    return j;
}

ContractionMap ContractionMap::similarity(double ratio, Mat isometry, Vec translation) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ContractionError("similarity ratio " + std::to_string(ratio) + " is not in (0, 1)");
    const auto d = translation.size();
    if (d < 1 || d > kMaxDim || isometry.rows() != d || isometry.cols() != d)
        throw InvalidArgumentError("similarity: isometry must be d x d with 1 <= d <= 3");
    const double err = (isometry.transpose() * isometry - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 1e-12) throw ContractionError("similarity: isometry columns are not orthonormal (error " + std::to_string(err) + ")");
    return ContractionMap(Similarity{ratio, std::move(isometry), std::move(translation)});
}

ContractionMap ContractionMap::similarity_1d(double ratio, double translation) {
    return similarity(ratio, Mat::Identity(1, 1), Vec::Constant(1, translation));
}

ContractionMap ContractionMap::generic(GenericMap map) {
    if (map.dim() > kMaxDim) throw InvalidArgumentError("generic map: dimension above 3");
    return ContractionMap(std::move(map));
}

MapKind ContractionMap::kind() const noexcept {
    return std::holds_alternative<Similarity>(impl_) ? MapKind::Similarity : MapKind::GenericC1;
}

int ContractionMap::dim() const noexcept {
    return std::visit([](const auto& f) { return f.dim(); }, impl_);
}

void ContractionMap::apply(std::span<const double> in, std::span<double> out) const {
    std::visit([&](const auto& f) { f.apply(in, out); }, impl_);
}

Vec ContractionMap::operator()(const Vec& x) const {
    Vec y(x.size());
    apply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
    return y;
}

Mat ContractionMap::jacobian(const Vec& x) const {
    if (const auto* s = as_similarity()) return s->ratio * s->isometry;
    return std::get<GenericMap>(impl_).jacobian({x.data(), static_cast<std::size_t>(x.size())});
}

}  // namespace fractalab
