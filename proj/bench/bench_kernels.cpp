// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>
#include <string_view>

#include "fractalab/ifs_io.hpp"
#include "fractalab/kernels.hpp"

namespace {

using namespace fractalab;

const IfsSystem& cantor() {
    static const IfsSystem sys = parse_ifs(std::string_view(R"j({"dim":1,"maps":[
        {"kind":"similarity","ratio":0.3333333333333333,"translation":0},
        {"kind":"similarity","ratio":0.3333333333333333,"translation":0.6666666666666666}],
        "bounding_ball":{"center":[0.5],"radius":2}})j"));
    return sys;
}

const IfsSystem& rotations() {
    static const IfsSystem sys = parse_ifs(std::string_view(R"j({"dim":2,"maps":[
        {"kind":"expr","map":["0.4*cos(pi/6)*x1 - 0.4*sin(pi/6)*x2","0.4*sin(pi/6)*x1 + 0.4*cos(pi/6)*x2"],
         "jacobian":[["0.4*cos(pi/6)","-0.4*sin(pi/6)"],["0.4*sin(pi/6)","0.4*cos(pi/6)"]]},
        {"kind":"expr","map":["0.4*cos(pi/6)*x1 - 0.4*sin(pi/6)*x2 + 0.6","0.4*sin(pi/6)*x1 + 0.4*cos(pi/6)*x2"],
         "jacobian":[["0.4*cos(pi/6)","-0.4*sin(pi/6)"],["0.4*sin(pi/6)","0.4*cos(pi/6)"]]},
        {"kind":"expr","map":["0.4*cos(pi/6)*x1 - 0.4*sin(pi/6)*x2 + 0.3","0.4*sin(pi/6)*x1 + 0.4*cos(pi/6)*x2 + 0.5"],
         "jacobian":[["0.4*cos(pi/6)","-0.4*sin(pi/6)"],["0.4*sin(pi/6)","0.4*cos(pi/6)"]]}],
        "bounding_ball":{"center":[0.45,0.3],"radius":1.5}})j"));
    return sys;
}

template <bool Parallel>
void chaos_game(benchmark::State& st) {
    const auto w = uniform_weights(2);
    for (auto _ : st) {
        auto pts = Parallel ? kernels::chaos_game(cantor(), w, 1 << 18, 7) : kernels::serial::chaos_game(cantor(), w, 1 << 18, 7);
        benchmark::DoNotOptimize(pts.coords.data());
    }
}

template <bool Parallel>
void word_sums(benchmark::State& st) {
    for (auto _ : st) {
        auto g = Parallel ? kernels::word_power_sums(rotations(), 1.2, 9) : kernels::serial::word_power_sums(rotations(), 1.2, 9);
        benchmark::DoNotOptimize(g.data());
    }
}

struct Balls {
    PointCloud centers{1, {}};
    std::vector<double> radii;
};

const Balls& balls() {
    static const Balls b = [] {
        Balls out;
        const auto pts = kernels::serial::chaos_game(cantor(), uniform_weights(2), 1 << 16, 3);
        out.centers = pts;
        out.radii.assign(pts.size(), 1e-4);
        return out;
    }();
    return b;
}

template <bool Parallel>
void box_count(benchmark::State& st) {
    const double origin = -1.5;
    for (auto _ : st) {
        auto n = Parallel ? kernels::box_count(balls().centers, balls().radii, 1e-5, {&origin, 1}, 0.5)
                          : kernels::serial::box_count(balls().centers, balls().radii, 1e-5, {&origin, 1}, 0.5);
        benchmark::DoNotOptimize(n);
    }
}

template <bool Parallel>
void coverage(benchmark::State& st) {
    const auto pts = kernels::serial::chaos_game(cantor(), uniform_weights(2), 1 << 14, 11);
    for (auto _ : st) {
        auto f = Parallel ? kernels::covered_fraction(pts, balls().centers, balls().radii)
                          : kernels::serial::covered_fraction(pts, balls().centers, balls().radii);
        benchmark::DoNotOptimize(f);
    }
}

template <bool Parallel>
void overlap(benchmark::State& st) {
    const auto cand = kernels::serial::chaos_game(cantor(), uniform_weights(2), 1 << 11, 5);
    std::vector<int> ids(balls().radii.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i % 97);
    for (auto _ : st) {
        auto m = Parallel ? kernels::max_distinct_overlap(cand, balls().centers, balls().radii, ids, 1e-3)
                          : kernels::serial::max_distinct_overlap(cand, balls().centers, balls().radii, ids, 1e-3);
        benchmark::DoNotOptimize(m);
    }
}

}  // namespace

BENCHMARK(chaos_game<false>)->Name("chaos_game/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(chaos_game<true>)->Name("chaos_game/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(word_sums<false>)->Name("word_power_sums/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(word_sums<true>)->Name("word_power_sums/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(box_count<false>)->Name("box_count/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(box_count<true>)->Name("box_count/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(coverage<false>)->Name("covered_fraction/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(coverage<true>)->Name("covered_fraction/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(overlap<false>)->Name("max_distinct_overlap/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(overlap<true>)->Name("max_distinct_overlap/openmp")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
