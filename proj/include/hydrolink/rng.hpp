#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace hydrolink {

/// splitmix64 mixing step.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent substream seed from a master seed and a path of
/// integers (e.g. channel index, trial index). Same inputs, same output,
/// on every platform.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master ^ 0x5cc863a9d1b2f64bULL);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x452821e638d01377ULL));
    return s;
}

/// Standard-normal stream with fully specified arithmetic (Box-Muller over
/// 53-bit uniforms from mt19937_64). std::normal_distribution is
/// implementation-defined, so it cannot be used where byte-identical
/// sequences across toolchains are required.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {  // in (0,1], never 0
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hydrolink
