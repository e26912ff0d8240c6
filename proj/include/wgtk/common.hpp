#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace wgtk {

using NodeId = std::uint32_t;

/// Bad input data or bad request parameters. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Anything that goes wrong after inputs were accepted. CLI maps this to exit code 2.
class RuntimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Deterministic random source. mt19937_64 raw output is pinned by the
 * standard; the bounded/real draws below avoid std::uniform_*_distribution,
 * whose mapping is implementation-defined and would break byte-reproducible
 * fixtures across toolchains.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling on the top of the range; bias-free
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    /// Uniform real in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::string version_string() { return "wgtk 0.1.0"; }

} // namespace wgtk
