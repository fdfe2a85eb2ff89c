#include "ftrain/rng.hpp"

namespace ft {
namespace rng {

std::vector<int> primes(int n) {
    std::vector<int> out;
    int c = 2;
    while (static_cast<int>(out.size()) < n) {
        bool prime = true;
        for (int p : out) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(c);
        ++c;
    }
    return out;
}

double radical_inverse(int base, std::uint64_t i) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

} // namespace rng
} // namespace ft
