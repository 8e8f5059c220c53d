// Builds the order-n subgroup on y^2 = x^3 + x + 1, embeds it on the quartic
// (x, y, x^2) and compares the geometric coplanar count with the index count.
//
//   elliptic_demo [n]

#include "polygeom/constructors.hpp"
#include "polygeom/elliptic.hpp"
#include "polygeom/geom_counters.hpp"

#include <cstdio>
#include <cstdlib>

using namespace polygeom;

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 16;
    if (n < 5) {
        std::fprintf(stderr, "usage: elliptic_demo [n >= 5]\n");
        return 2;
    }
    const auto cfg = EllipticConfig::make();
    std::printf("curve y^2 = x^3 + x + 1, real root %.12f, period %.12f\n", cfg.real_root(), cfg.period());

    const auto pts = torsion_points(cfg, n);
    std::printf("%4s %22s %22s %10s\n", "k", "x", "y", "angle");
    for (std::size_t k = 1; k < n; ++k)
        std::printf("%4zu %22.15g %22.15g %10.6f\n", k, pts[k].x, pts[k].y, angle(cfg, pts[k]));

    const auto embedded = elliptic_configuration(cfg, n);
    double worst = 0;
    for (const auto& p : embedded)
        for (double r : quadric_residuals(cfg, p)) worst = std::max(worst, r);
    const auto geometric = coplanar_naive(embedded);
    std::printf("quadric residual max %.3g\n", worst);
    std::printf("coplanar quadruples: geometric %llu, index sum %llu (%.2f ms)\n",
                static_cast<unsigned long long>(geometric.count),
                static_cast<unsigned long long>(coplanar_index_oracle(n)), geometric.elapsed_ms);
    return 0;
}
