// Kirszbraun value of three planar samples whose values sit on the unit circle.

#include <cmath>
#include <cstdio>

#include "lipext/kpoint.hpp"

int main() {
    const double h = std::sqrt(3.0) / 2.0;
    lipext::LabeledPointSet s{{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}}, {{1.0, 0.0}, {-0.5, h}, {-0.5, -h}}};
    const lipext::Point x{0.0, 0.0};

    const auto r = lipext::kpoint_vector(s, x);
    std::printf("lambda = %.12g, point = (%.12g, %.12g), active =", r.lambda, r.point[0], r.point[1]);
    for (std::size_t i : r.active) std::printf(" %zu", i);
    std::printf("\n");

    const auto oracle = lipext::kpoint_oracle(s, x);
    std::printf("oracle lambda = %.12g\n", oracle.lambda);
}
