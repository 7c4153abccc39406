#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dch {

/// Portable, seedable random stream.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard)
/// seeded with splitmix64(seed). Uniforms are the top 53 bits scaled to
/// [0, 1). Normals use the Box-Muller transform; the second variate of each
/// draw is cached and returned next. Standard library distributions are not
/// used because their output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform integer on [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);
    /// Standard normal draw.
    double normal();
    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream for trial `index` of a run seeded with `seed`: Rng(seed ^ index).
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) { return Rng(seed ^ index); }

/// Names recorded in run metadata.
inline constexpr std::string_view kRngEngineName = "mt19937_64 seeded by splitmix64(seed xor trial)";
inline constexpr std::string_view kNormalMethodName = "box-muller";

}  // namespace dch
