#include "netdis/rng.hpp"

#include "netdis/errors.hpp"

#include <cmath>

namespace netdis {

std::vector<double> random_unit_vector(std::size_t n, std::mt19937_64& rng) {
    if (n == 0) throw InvalidParam("random_unit_vector: n must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    double norm2 = 0.0;
    // Loop guards against the (measure-zero) all-zero draw.
    do {
        norm2 = 0.0;
        for (auto& x : v) {
            x = gauss(rng);
            norm2 += x * x;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

} // namespace netdis
