#pragma once

#include <cmath>
#include <cstdint>

namespace isospec {

// Deterministic per-stream RNG. The state walks a fixed-stride counter and the
// output is a bijective hash of it (splitmix64), so a stream keyed on
// (seed, stream_index) yields the same draws no matter which thread runs it or
// in which order streams are consumed. That is what makes Monte Carlo results
// reproducible under ISOSPEC_THREADS > 1.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : state_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL))) {
        // burn two outputs so nearby (seed, stream) pairs decorrelate
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller; second variate cached.
    // std::normal_distribution is implementation-defined, so not used here.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 6.283185307179586476925286766559 * u2;
        cached_ = rad * std::sin(ang);
        have_cached_ = true;
        return rad * std::cos(ang);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace isospec
