#include "multibrot/cli.hpp"

#include "multibrot/lobe_geometry.hpp"
#include "multibrot/membership_render.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace multibrot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kPositionTolerance = 1e-9;
constexpr int kDeterminismSize = 63;
constexpr int kDeterminismBudget = 200;
constexpr int kDeterminismWorkers = 4;
constexpr int kOracleBudget = 10'000;

void check_lobes(DegreeVerification& v) {
    const int n = v.degree;
    const std::size_t cells = static_cast<std::size_t>(kExtremaScanCellsPerLobe) * static_cast<std::size_t>(n - 1);
    const double cell = boundary_period(n) / static_cast<double>(cells);
    std::vector<double> scan(cells);
    for (std::size_t j = 0; j < cells; ++j) scan[j] = radius_squared(n, static_cast<double>(j) * cell);

    const auto minima = periodic_local_minima(scan);
    v.lobe_count = static_cast<int>(minima.size());
    v.max_minimum_position_error = 0.0;
    for (const std::size_t j : minima) {
        const double before = scan[(j + cells - 1) % cells];
        const double after = scan[(j + 1) % cells];
        const double curvature = before - 2.0 * scan[j] + after;
        const double offset = curvature > 0.0 ? 0.5 * (before - after) / curvature : 0.0;
        const double phi = (static_cast<double>(j) + offset) * cell;
        const double error = std::abs(phi - 2.0 * kPi * std::round(phi / (2.0 * kPi)));
        v.max_minimum_position_error = std::max(v.max_minimum_position_error, error);
    }
    bool consistent = true;
    try {
        radial_profile(n);
    } catch (const InternalInconsistencyError&) {
        consistent = false;
    }
    v.lobe_count_pass =
        consistent && v.lobe_count == n - 1 && v.max_minimum_position_error <= kPositionTolerance;
}

void check_x_intercepts(DegreeVerification& v) {
    if (v.degree != 2) return;
    const Complex right = boundary_point(2, 0.0);
    const Complex left = boundary_point(2, kPi);
    v.x_intercept_right = right.real();
    v.x_intercept_left = left.real();
    v.x_intercepts_pass = std::abs(right - Complex{0.25, 0.0}) <= kIdentityTolerance &&
                          std::abs(left - Complex{-0.75, 0.0}) <= kIdentityTolerance;
}

void check_extrema(DegreeVerification& v) {
    const auto [c_min, c_max] = c_extrema(v.degree);
    const auto expanded = expanded_extrema_squared(v.degree);
    v.extrema_squared_error = std::max(std::abs(c_min * c_min - expanded.c_min_squared),
                                       std::abs(c_max * c_max - expanded.c_max_squared));
    v.indent_modulus_error = std::abs(indent_points(v.degree).modulus - c_min);
    v.extrema_pass = v.extrema_squared_error <= kIdentityTolerance && v.indent_modulus_error <= kIdentityTolerance;
}

void check_oracle(DegreeVerification& v) {
    const auto report = boundary_membership_check(v.degree, kDefaultShrink, kOracleBudget);
    v.oracle_points = static_cast<int>(report.points.size());
    v.oracle_interior_passed = 0;
    v.oracle_exterior_passed = 0;
    for (const auto& point : report.points) {
        if (!point.pass()) continue;
        (point.expect_member ? v.oracle_interior_passed : v.oracle_exterior_passed) += 1;
    }
    v.oracle_pass = report.all_passed();
}

void check_convergence(DegreeVerification& v) {
    const int degrees[] = {v.degree};
    const ConvergenceRow row = convergence_report(degrees).rows.front();
    v.r_base = row.r_base;
    v.c_min = row.c_min;
    v.c_max = row.c_max;
    v.gap = row.gap;
    v.convergence_pass = v.r_base > 0.0 && v.r_base < 1.0 &&
                         std::abs(v.gap * v.degree / v.r_base - 2.0) <= kIdentityTolerance;
}

void check_determinism(DegreeVerification& v) {
    const GridSpec spec = default_grid(v.degree, kDeterminismSize, kDeterminismSize, kDeterminismBudget);
    v.hash_one_worker = fnv1a_64(encode_ppm(render(v.degree, spec, 1), Colormap::Grayscale));
    v.hash_many_workers = fnv1a_64(encode_ppm(render(v.degree, spec, kDeterminismWorkers), Colormap::Grayscale));
    v.determinism_pass = v.hash_one_worker == v.hash_many_workers;
}

std::string hex(std::uint64_t value) { return fmt::format("{:016x}", value); }

}  // namespace

GridSpec default_grid(int n, int width, int height, int max_iter) {
    GridSpec spec;
    spec.width = width;
    spec.height = height;
    spec.center = {0.0, 0.0};
    spec.max_iter = max_iter;
    spec.scale = 2.0 * 1.3 * c_extrema(n).c_max / std::max(1, std::min(width, height));
    return spec;
}

bool DegreeVerification::pass() const {
    return lobe_count_pass && x_intercepts_pass && extrema_pass && oracle_pass && convergence_pass &&
           determinism_pass;
}

VerifyReport verify_suite(std::span<const int> degrees) {
    if (degrees.empty()) {
        throw std::invalid_argument("verify needs at least one degree");
    }
    if (std::any_of(degrees.begin(), degrees.end(), [](int n) { return n < 2; })) {
        throw std::invalid_argument("every degree must be >= 2");
    }
    std::vector<int> sorted(degrees.begin(), degrees.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    VerifyReport report;
    for (const int n : sorted) {
        DegreeVerification v;
        v.degree = n;
        check_lobes(v);
        check_x_intercepts(v);
        check_extrema(v);
        check_oracle(v);
        check_convergence(v);
        check_determinism(v);
        report.degrees.push_back(v);
    }
    for (std::size_t k = 1; k < report.degrees.size(); ++k) {
        if (!(report.degrees[k].gap < report.degrees[k - 1].gap)) report.gap_strictly_decreasing = false;
    }
    report.overall_pass = report.gap_strictly_decreasing &&
                          std::all_of(report.degrees.begin(), report.degrees.end(),
                                      [](const DegreeVerification& v) { return v.pass(); });
    return report;
}

nlohmann::json to_json(const VerifyReport& report) {
    nlohmann::json per_degree = nlohmann::json::object();
    for (const auto& v : report.degrees) {
        nlohmann::json entry = {
            {"degree", v.degree},
            {"lobe_count", v.lobe_count},
            {"lobe_count_expected", v.degree - 1},
            {"max_minimum_position_error", v.max_minimum_position_error},
            {"lobe_count_pass", v.lobe_count_pass},
            {"extrema_squared_error", v.extrema_squared_error},
            {"indent_modulus_error", v.indent_modulus_error},
            {"extrema_pass", v.extrema_pass},
            {"oracle_points", v.oracle_points},
            {"oracle_interior_passed", v.oracle_interior_passed},
            {"oracle_exterior_passed", v.oracle_exterior_passed},
            {"oracle_pass", v.oracle_pass},
            {"r_base", v.r_base},
            {"c_min", v.c_min},
            {"c_max", v.c_max},
            {"gap", v.gap},
            {"convergence_pass", v.convergence_pass},
            {"hash_one_worker", hex(v.hash_one_worker)},
            {"hash_many_workers", hex(v.hash_many_workers)},
            {"determinism_pass", v.determinism_pass},
            {"pass", v.pass()},
        };
        if (v.degree == 2) {
            entry["x_intercept_right"] = v.x_intercept_right;
            entry["x_intercept_left"] = v.x_intercept_left;
            entry["x_intercepts_pass"] = v.x_intercepts_pass;
        }
        per_degree[std::to_string(v.degree)] = std::move(entry);
    }
    return {
        {"degrees", std::move(per_degree)},
        {"gap_strictly_decreasing", report.gap_strictly_decreasing},
        {"overall_pass", report.overall_pass},
    };
}

}  // namespace multibrot
