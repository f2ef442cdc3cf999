#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace chatsumm {

// mt19937_64 with hand-rolled transforms so draws are identical across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    void seed(std::uint64_t s) {
        gen_.seed(s);
        has_spare_ = false;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return (gen_() >> 11) * (1.0 / 9007199254740992.0); }

    // Uniform in [0, n).
    int uniform_int(int n) {
        int v = static_cast<int>(uniform() * n);
        return v >= n ? n - 1 : v;
    }

    double gaussian(double mean = 0.0, double sd = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sd * spare_;
        }
        double u1 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + sd * r * std::cos(theta);
    }

    // Knuth's method, fixed rate 1.
    int poisson1() {
        static const double kL = std::exp(-1.0);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > kL);
        return k - 1;
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace chatsumm
