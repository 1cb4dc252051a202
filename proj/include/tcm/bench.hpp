#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcm/field.hpp"

namespace tcm::bench {

/// Randomized ensemble description: independent complex Gaussian
/// coefficients, Hermitian-symmetrized, band-limited to max_mode; sample i
/// uses seed base_seed + i so nested ensembles share their prefixes.
struct EnsembleConfig {
    int n1 = 32, n2 = 32, n3 = 32;
    double l1 = Grid::two_pi(), l2 = Grid::two_pi(), l3 = Grid::two_pi();
    int max_mode = 5;
    int samples = 1000;
    std::uint64_t base_seed = 1;
};

struct SampleOutcome {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false;
};

struct SampleRow {
    int index = 0;
    std::uint64_t seed = 0;
    double ratio = 0.0;
    bool degenerate = false;
};

struct BenchReport {
    std::string id;
    std::string statement; // human-readable form, torus adaptation included
    int requested = 0;
    int evaluated = 0;
    int degenerate_skipped = 0;
    double max_ratio = 0.0;
    int argmax_index = -1;
    std::uint64_t argmax_seed = 0;
    int n1 = 0, n2 = 0, n3 = 0;
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::vector<SampleRow> rows;
};

/// Horizontal smoothing inequality
///   ||psi||^2_{L2_v(L4_h)} <= C ||psi||_{L2} ||grad_h psi||_{L2};
/// samples without horizontal variation are degenerate and skipped.
SampleOutcome evaluate_horizontal_l4(const Field& psi);
BenchReport bench_horizontal_l4(const EnsembleConfig& cfg);

/// Vertical trace inequality, periodic form: the fundamental-theorem
/// argument on the line acquires a mean term on the torus,
///   sup_{x3} ||psi(.,x3)||^2_{L2_h}
///     <= C ||psi||_{L2} ||d3 psi||_{L2} + ||psi||^2_{L2} / l3.
SampleOutcome evaluate_vertical_sup(const Field& psi);
BenchReport bench_vertical_sup(const EnsembleConfig& cfg);

/// Fractional interpolation bound with exponent p = 3/(alpha-1),
///   ||psi||_{L^p} <= C ||psi||_{L2}^{(4a-5)/(2a)}
///                      ||lambda^alpha psi||_{L2}^{(5-2a)/(2a)};
/// both sides vanish on constants, so samples are taken zero-mean (the
/// torus adaptation). alpha is accepted in [5/4, 5/2).
SampleOutcome evaluate_fractional_interp(const Field& psi, double alpha);
BenchReport bench_fractional_interp(double alpha, const EnsembleConfig& cfg);

/// Dispatch by id: "horizontal-l4", "vertical-sup", "fractional-interp"
/// (the latter using the supplied alpha). Throws on unknown ids.
BenchReport run_bench(const std::string& id, const EnsembleConfig& cfg,
                      double alpha = 1.5);

std::vector<std::string> known_bench_ids();

} // namespace tcm::bench
