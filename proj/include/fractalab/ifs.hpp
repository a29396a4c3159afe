#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fractalab/expression.hpp"
#include "fractalab/word.hpp"

namespace fractalab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Ambient dimensions above this are rejected; grid kernels pack cell
/// coordinates into 64-bit keys.
inline constexpr int kMaxDim = 3;

/// x -> ratio * isometry * x + translation.
struct Similarity {
    double ratio = 1.0;
    Mat isometry;
    Vec translation;

    static Similarity identity(int dim);

    int dim() const noexcept { return static_cast<int>(translation.size()); }
    void apply(std::span<const double> in, std::span<double> out) const;
    Vec operator()(const Vec& x) const;
    /// (*this o inner)(x) = (*this)(inner(x)).
    Similarity after(const Similarity& inner) const;
};

/// C^1 map given by per-component expressions and a row-major Jacobian.
class GenericMap {
public:
    GenericMap(std::vector<Expression> components, std::vector<Expression> jacobian);

    int dim() const noexcept { return static_cast<int>(components_.size()); }
    void apply(std::span<const double> in, std::span<double> out) const;
    Mat jacobian(std::span<const double> x) const;

    const std::vector<Expression>& components() const noexcept { return components_; }
    const std::vector<Expression>& jacobian_entries() const noexcept { return jacobian_; }

private:
    std::vector<Expression> components_;
    std::vector<Expression> jacobian_;
};

enum class MapKind { Similarity, GenericC1 };

class ContractionMap {
public:
    /// Throws ContractionError unless 0 < ratio < 1 and the isometry has
    /// orthonormal columns to 1e-12.
    static ContractionMap similarity(double ratio, Mat isometry, Vec translation);
    static ContractionMap similarity_1d(double ratio, double translation);
    static ContractionMap generic(GenericMap map);

    MapKind kind() const noexcept;
    int dim() const noexcept;

    void apply(std::span<const double> in, std::span<double> out) const;
    Vec operator()(const Vec& x) const;
    Mat jacobian(const Vec& x) const;

    const Similarity* as_similarity() const noexcept { return std::get_if<Similarity>(&impl_); }
    const GenericMap* as_generic() const noexcept { return std::get_if<GenericMap>(&impl_); }

private:
    explicit ContractionMap(std::variant<Similarity, GenericMap> impl) : impl_(std::move(impl)) {}
    std::variant<Similarity, GenericMap> impl_;
};

struct BoundingBall {
    Vec center;
    double radius = 0.0;

    bool contains(const Vec& p, double tol = 1e-12) const { return (p - center).norm() <= radius + tol; }
};

enum class DiameterMethod { ExactFixedPoint, Sampled };

std::string to_string(DiameterMethod m);

/// An ordered list of m >= 2 contractions of R^d (d <= 3) together with a
/// ball they map into itself. Immutable after construction.
class IfsSystem {
public:
    /// Validates every map and estimates |K|. Throws ContractionError,
    /// DegenerateSystemError or InvalidArgumentError.
    IfsSystem(std::vector<ContractionMap> maps, BoundingBall ball);

    int size() const noexcept { return static_cast<int>(maps_.size()); }
    int dim() const noexcept { return dim_; }
    /// 1-based, matching word indices.
    const ContractionMap& map(int index) const { return maps_[static_cast<std::size_t>(index - 1)]; }
    const std::vector<ContractionMap>& maps() const noexcept { return maps_; }
    const BoundingBall& bounding_ball() const noexcept { return ball_; }

    bool all_similarities() const noexcept { return all_similarities_; }
    /// Contraction ratios; only meaningful when all_similarities().
    std::vector<double> ratios() const;

    double attractor_diameter() const noexcept { return diameter_; }
    DiameterMethod diameter_method() const noexcept { return diameter_method_; }

    /// Fixed anchor for derivative-norm proxies: the ball center pushed 40
    /// steps through the maps taken cyclically.
    const Vec& base_point() const noexcept { return base_point_; }

    /// Ball containing K: exact hull for 1-D similarity systems, sampled otherwise.
    const BoundingBall& attractor_ball() const noexcept { return attractor_ball_; }
    /// 1-D similarity systems only: the convex hull [lo, hi] of K.
    std::optional<std::pair<double, double>> attractor_interval() const noexcept { return interval_; }

    /// Largest contraction: max ratio, or max sampled Jacobian norm.
    double max_contraction() const noexcept { return max_contraction_; }

    /// Copy with |K| multiplied by `factor`. Used to check scale invariance.
    IfsSystem with_diameter_scale(double factor) const;

    /// Throws InvalidWordError when an index is outside 1..m.
    void check_word(const Word& w) const;

private:
    void validate_maps();
    void estimate_diameter();

    std::vector<ContractionMap> maps_;
    BoundingBall ball_;
    int dim_ = 0;
    bool all_similarities_ = true;
    double diameter_ = 0.0;
    DiameterMethod diameter_method_ = DiameterMethod::Sampled;
    Vec base_point_;
    BoundingBall attractor_ball_;
    std::optional<std::pair<double, double>> interval_;
    double max_contraction_ = 0.0;
};

/// Flat, row-per-point storage.
struct PointCloud {
    int dim = 1;
    std::vector<double> coords;

    std::size_t size() const noexcept { return dim ? coords.size() / static_cast<std::size_t>(dim) : 0; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
    Vec vec(std::size_t i) const { return Eigen::Map<const Vec>(coords.data() + i * dim, dim); }
    void push_back(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
    void push_back(const Vec& p) { coords.insert(coords.end(), p.data(), p.data() + p.size()); }
};

// ---- word-level geometry -------------------------------------------------

/// f_w = f_{w1} o ... o f_{wk}. Exact closed form when every map is a similarity.
class ComposedMap {
public:
    ComposedMap(const IfsSystem& system, Word word);

    bool is_similarity() const noexcept { return similarity_.has_value(); }
    const Similarity& similarity() const { return *similarity_; }
    const Word& word() const noexcept { return word_; }

    Vec operator()(const Vec& x) const;
    /// Chain rule product f'_{w1}(f_{w2..wk}x) ... f'_{wk}(x).
    Mat jacobian(const Vec& x) const;

private:
    const IfsSystem* system_;
    Word word_;
    std::optional<Similarity> similarity_;
};

/// Throws InvalidWordError for out-of-range indices.
ComposedMap compose_word(const IfsSystem& system, const Word& word);

struct CylinderGeometry {
    Word word;
    double diameter = 0.0;
    Vec anchor_image;
    double derivative_norm = 0.0;
};

/// Similarity: diameter = (product of ratios) * |K| exactly. Otherwise the
/// bounded-distortion proxy ||f_w'(anchor)|| * |K|.
CylinderGeometry cylinder_geometry(const IfsSystem& system, const Word& word, const Vec& anchor);
CylinderGeometry cylinder_geometry(const IfsSystem& system, const Word& word);

/// Euclidean operator norm (largest singular value).
double operator_norm(const Mat& a);
/// Smallest and largest singular values.
std::pair<double, double> singular_value_range(const Mat& a);

/// Chaos-game sample of the invariant measure with the given weights.
/// Deterministic for a fixed seed, independent of the thread count.
PointCloud attractor_sample(const IfsSystem& system, std::span<const double> weights, std::size_t n,
                            std::uint64_t seed);

std::vector<double> uniform_weights(int m);

/// Throws InvalidWeightsError unless weights has m strictly positive
/// entries summing to 1 within 1e-12.
void check_weights(std::span<const double> weights, int m);

struct DiameterEstimate {
    double value = 0.0;
    DiameterMethod method = DiameterMethod::Sampled;
};

/// Exact for 1-D similarity systems (hull fixed point); otherwise the
/// farthest pair of a 10^5-point sample, which underestimates |K|.
DiameterEstimate estimate_attractor_diameter(const IfsSystem& system);

}  // namespace fractalab
