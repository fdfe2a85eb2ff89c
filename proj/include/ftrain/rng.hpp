#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ftrain/interval.hpp"

namespace ft {
namespace rng {

/** Deterministic uniform sampler with an explicit bit-to-double mapping. */
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : eng_(seed) {}

    /// in [0, 1)
    double next() { return (eng_() >> 11) * 0x1.0p-53; }

    double in(const Interval& iv) { return iv.lo + next() * iv.width(); }

    std::vector<double> point(const std::vector<Interval>& domain) {
        std::vector<double> x(domain.size());
        for (std::size_t k = 0; k < domain.size(); ++k) x[k] = in(domain[k]);
        return x;
    }

private:
    std::mt19937_64 eng_;
};

/// First n primes (Halton bases).
std::vector<int> primes(int n);

/// Van der Corput radical inverse of i (i >= 1) in the given base.
double radical_inverse(int base, std::uint64_t i);

} // namespace rng
} // namespace ft
