#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace netdis {

// splitmix64 finalizer; good avalanche for seed mixing.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Child seed for (master, component tag, index). Adding a new tagged
// consumer never perturbs the streams of existing ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a offset basis
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ mix64(h) ^ mix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

// Uniform point on the unit sphere in R^n (Gaussian components, normalized).
std::vector<double> random_unit_vector(std::size_t n, std::mt19937_64& rng);

} // namespace netdis
