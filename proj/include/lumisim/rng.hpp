#ifndef LUMISIM_RNG_HPP
#define LUMISIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace lumisim {

// Seeded random stream. Distributions are implemented by hand on top of
// mt19937_64 so the draw sequence does not depend on the standard library's
// distribution implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent child stream (e.g. one per run or per purpose).
    static RngStream derive(std::uint64_t seed, std::uint64_t stream_id) {
        return RngStream(splitmix(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1))));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal01() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal01(); }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lumisim

#endif  // LUMISIM_RNG_HPP
