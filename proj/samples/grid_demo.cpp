// Solves a grid with boundary data f(x, y) = x * y and prints the interior values.

#include <cstdio>

#include "lipext/lipext.hpp"

int main() {
    auto data = lipext::make_grid(6, 6, lipext::BoundaryFunction::parse("linear-x"));
    for (auto& v : data.vertices)
        if (data.boundary.count(v.id)) data.boundary[v.id] = {v.pos[0] * v.pos[1]};
    const auto g = lipext::Graph::build(data);

    const auto r = lipext::solve_scalar(g);
    for (std::size_t x : g.interior())
        std::printf("%s (%.2f, %.2f) -> %.6f\n", g.id(x).c_str(), g.position(x)[0], g.position(x)[1], r.values[x][0]);
    std::printf("residual %.3g after %zu connecting paths\n", r.residual, r.stage_slopes->size());

    const auto check = lipext::verify_extension(g, r.values);
    std::printf("verification %s\n", check.pass() ? "passed" : "failed");
}
