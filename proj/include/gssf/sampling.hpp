#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace gssf {

/// The single random source of the library: mt19937_64 mapped to [0,1) with
/// 53 random bits, so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::vector<std::vector<double>> sample_box(Rng& rng, int count, int dim, double lo, double hi) {
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& p : pts) {
        for (auto& c : p) c = rng.uniform(lo, hi);
    }
    return pts;
}

}  // namespace gssf
