#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "dropsim/errors.hpp"
#include "dropsim/mesh.hpp"

using namespace dropsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

GeneratingCurve sphere(double R, int N) { return make_perturbed_sphere(R, 0.0, 2, N); }

// Independent oracle: volume of the solid of revolution of rho(theta) by
// dense Simpson quadrature of (2pi/3) int rho^3 sin(theta) dtheta.
double volume_by_quadrature(double R, double eps, int samples = 20001) {
    const double y20 = 0.25 * std::sqrt(5.0 / kPi);
    auto rho3sin = [&](double theta) {
        const double c = std::cos(theta);
        const double rho = R + eps * y20 * (3.0 * c * c - 1.0);
        return rho * rho * rho * std::sin(theta);
    };
    double sum = 0.0;
    const double h = kPi / (samples - 1);
    for (int i = 0; i < samples - 1; i += 2) {
        sum += rho3sin(i * h) + 4.0 * rho3sin((i + 1) * h) + rho3sin((i + 2) * h);
    }
    return (2.0 * kPi / 3.0) * sum * h / 3.0;
}

}  // namespace

TEST_CASE("perturbed sphere sampling") {
    const double y20_pole = 0.25 * std::sqrt(5.0 / kPi) * 2.0;
    const double y20_equator = -0.25 * std::sqrt(5.0 / kPi);

    const GeneratingCurve c = make_perturbed_sphere(1.0, 0.1, 2, 64);
    REQUIRE(c.nodes.size() == 65);
    CHECK(c.nodes.front().r == 0.0);
    CHECK(c.nodes.front().z == doctest::Approx(1.0 + 0.1 * y20_pole).epsilon(1e-12));
    CHECK(c.nodes.front().z == doctest::Approx(1.0631).epsilon(1e-4));
    // theta = pi/2 is node 32 of 64.
    CHECK(c.nodes[32].r == doctest::Approx(1.0 + 0.1 * y20_equator).epsilon(1e-12));
    CHECK(c.nodes[32].r == doctest::Approx(0.96846).epsilon(1e-4));
    CHECK(c.nodes[32].z == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(c.nodes.back().r == 0.0);

    validate(c);
}

TEST_CASE("perturbed sphere rejects bad input") {
    CHECK_THROWS_AS(make_perturbed_sphere(1.0, 0.0, 2, 8), InvalidParameterError);
    CHECK_THROWS_AS(make_perturbed_sphere(1.0, 0.5, 2, 64), InvalidParameterError);
    CHECK_THROWS_AS(make_perturbed_sphere(1.0, 0.6, 2, 64), InvalidParameterError);
    CHECK_THROWS_AS(make_perturbed_sphere(1.0, 0.0, 3, 64), InvalidParameterError);
    CHECK_THROWS_AS(make_perturbed_sphere(-1.0, 0.0, 2, 64), InvalidParameterError);
}

TEST_CASE("unperturbed sphere volume") {
    CHECK(enclosed_volume(sphere(1.0, 64)) ==
          doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-3));
    CHECK(enclosed_volume(sphere(1.0, 256)) ==
          doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-5));
}

TEST_CASE("perturbed sphere volume against quadrature oracle") {
    const GeneratingCurve c = make_perturbed_sphere(1.0, 0.1, 2, 64);
    CHECK(enclosed_volume(c) == doctest::Approx(volume_by_quadrature(1.0, 0.1)).epsilon(1e-3));
}

TEST_CASE("volume invariances") {
    GeneratingCurve c = make_perturbed_sphere(1.0, 0.1, 2, 64);
    const double v = enclosed_volume(c);

    GeneratingCurve shifted = c;
    for (auto& p : shifted.nodes) p.z += 3.25;
    CHECK(enclosed_volume(shifted) == doctest::Approx(v).epsilon(1e-14));

    GeneratingCurve reversed = c;
    std::reverse(reversed.nodes.begin(), reversed.nodes.end());
    CHECK(enclosed_volume(reversed) == doctest::Approx(v).epsilon(1e-14));
}

TEST_CASE("sphere curvature") {
    for (double R : {0.5, 1.0, 2.0}) {
        const SurfaceGeometry g = geometry(sphere(R, 128));
        for (double k : g.mean_curvature) {
            CHECK(k == doctest::Approx(1.0 / R).epsilon(1e-2));
        }
    }
}

TEST_CASE("sphere curvature error shrinks with at least first order") {
    for (double R : {0.5, 1.0, 2.0}) {
        double err_coarse = 0.0, err_fine = 0.0;
        for (double k : geometry(sphere(R, 64)).mean_curvature) {
            err_coarse = std::max(err_coarse, std::abs(k - 1.0 / R));
        }
        for (double k : geometry(sphere(R, 256)).mean_curvature) {
            err_fine = std::max(err_fine, std::abs(k - 1.0 / R));
        }
        // Refining 4x must shrink the error at least 4x (order >= 1).
        CHECK(err_fine * 4.0 <= err_coarse + 1e-15);
    }
}

TEST_CASE("cylinder wall segment: half the azimuthal curvature") {
    // Open synthetic curve: straight wall r = a between z = 0 and z = 1,
    // traversed in -z so the outward normal points in +r.
    const double a = 0.75;
    GeneratingCurve c;
    for (int i = 0; i <= 32; ++i) {
        c.nodes.push_back({a, 1.0 - static_cast<double>(i) / 32});
    }
    const SurfaceGeometry g = geometry(c);
    for (std::size_t e = 0; e < g.element_count(); ++e) {
        CHECK(g.normals[e].r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g.mean_curvature[e] == doctest::Approx(1.0 / (2.0 * a)).epsilon(1e-12));
    }
}

TEST_CASE("geometry basics on the unit sphere") {
    const GeneratingCurve c = sphere(1.0, 128);
    const SurfaceGeometry g = geometry(c);

    // Unit normals, outward.
    double cr = 0.0, cz = 0.0;
    for (const auto& p : c.nodes) {
        cr += p.r;
        cz += p.z;
    }
    cr /= c.nodes.size();
    cz /= c.nodes.size();
    for (std::size_t e = 0; e < g.element_count(); ++e) {
        CHECK(std::hypot(g.normals[e].r, g.normals[e].z) == doctest::Approx(1.0).epsilon(1e-12));
        const double outward = g.normals[e].r * (g.midpoints[e].r - cr) +
                               g.normals[e].z * (g.midpoints[e].z - cz);
        CHECK(outward > 0.0);
    }

    // Ring area identity and total area.
    for (std::size_t e = 0; e < g.element_count(); ++e) {
        const double expected =
            kPi * (c.nodes[e].r + c.nodes[e + 1].r) * g.arc_lengths[e];
        CHECK(g.ring_areas[e] == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(g.total_area() == doctest::Approx(4.0 * kPi).epsilon(1e-3));
}

TEST_CASE("geometry rejects degenerate elements") {
    GeneratingCurve c = sphere(1.0, 64);
    c.nodes[10] = c.nodes[11];
    CHECK_THROWS_AS(geometry(c), DegenerateGeometryError);
}

TEST_CASE("uniform remesh equidistributes arclength") {
    GeneratingCurve c = make_perturbed_sphere(1.0, 0.1, 2, 96);
    RemeshPolicy policy;
    policy.exponent = 0.0;
    const GeneratingCurve out = remesh(c, policy);
    const SurfaceGeometry g = geometry(out);
    const double mean =
        std::accumulate(g.arc_lengths.begin(), g.arc_lengths.end(), 0.0) / g.element_count();
    for (double len : g.arc_lengths) {
        CHECK(len == doctest::Approx(mean).epsilon(0.01));
    }
}

TEST_CASE("curvature-weighted remesh concentrates nodes at the sharp caps") {
    // Prolate spheroid r = a sin(theta), z = b cos(theta): the meridian
    // curvature peaks at the poles (b/a^2 = 6 here, ~1 elsewhere).
    const double a = 0.5, b = 1.5;
    GeneratingCurve c;
    const int n = 128;
    for (int i = 0; i <= n; ++i) {
        const double theta = kPi * i / n;
        c.nodes.push_back({a * std::sin(theta), b * std::cos(theta)});
    }
    c.nodes.front().r = 0.0;
    c.nodes.back().r = 0.0;

    RemeshPolicy policy;
    policy.exponent = 1.0;
    const GeneratingCurve out = remesh(c, policy);
    const SurfaceGeometry g = geometry(out);

    std::size_t min_e = 0;
    for (std::size_t e = 0; e < g.element_count(); ++e) {
        if (g.arc_lengths[e] < g.arc_lengths[min_e]) min_e = e;
    }
    // The tightest spacing must fall in one of the polar-cap eighths.
    CHECK((min_e < g.element_count() / 8 || min_e > 7 * g.element_count() / 8));
}

TEST_CASE("remesh preserves volume and endpoints") {
    GeneratingCurve c = make_perturbed_sphere(1.0, 0.1, 2, 96);
    const double v0 = enclosed_volume(c);
    RemeshPolicy policy;
    GeneratingCurve out = remesh(c, policy);
    CHECK(out.nodes.front().r == c.nodes.front().r);
    CHECK(out.nodes.front().z == c.nodes.front().z);
    CHECK(out.nodes.back().r == c.nodes.back().r);
    CHECK(out.nodes.back().z == c.nodes.back().z);
    CHECK(enclosed_volume(out) == doctest::Approx(v0).epsilon(1e-3));

    // Repeated remeshing must not drift the volume either.
    for (int i = 0; i < 100; ++i) out = remesh(out, policy);
    CHECK(enclosed_volume(out) == doctest::Approx(v0).epsilon(1e-3));
}

TEST_CASE("remesh can change the element count") {
    GeneratingCurve c = make_perturbed_sphere(1.0, 0.05, 2, 64);
    RemeshPolicy policy;
    policy.target_n = 200;
    const GeneratingCurve out = remesh(c, policy);
    CHECK(out.element_count() == 200);
    CHECK(enclosed_volume(out) == doctest::Approx(enclosed_volume(c)).epsilon(1e-3));
}

TEST_CASE("validate rejects broken curves") {
    GeneratingCurve off_axis = sphere(1.0, 64);
    off_axis.nodes.front().r = 1e-3;
    CHECK_THROWS_AS(validate(off_axis), DegenerateGeometryError);

    GeneratingCurve inverted = sphere(1.0, 64);
    std::reverse(inverted.nodes.begin(), inverted.nodes.end());
    CHECK_THROWS_AS(validate(inverted), DegenerateGeometryError);

    GeneratingCurve negative_r = sphere(1.0, 64);
    negative_r.nodes[5].r = -negative_r.nodes[5].r;
    CHECK_THROWS_AS(validate(negative_r), DegenerateGeometryError);
}
