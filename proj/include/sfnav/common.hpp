#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace sfnav {

// Error taxonomy. Config/map/checkpoint problems are usage errors (CLI exit 1),
// NumericsError is a runtime halt (CLI exit 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seeded RNG with explicit stream derivation so every consumer of randomness
// (env, agent, replay sampling, each evaluation) owns an independent stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Independent stream derived from (master, stream_id).
    static Rng stream(std::uint64_t master, std::uint64_t stream_id) {
        std::uint64_t s = master ^ (0xd1b54a32d192ed03ull * (stream_id + 1));
        std::uint64_t a = splitmix64(s);
        std::uint64_t b = splitmix64(s);
        return Rng(a ^ (b << 1));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform in [0, n). Requires n > 0.
    int uniform_int(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(next_u64()) *
                                         static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace sfnav
