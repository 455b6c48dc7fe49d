#include "multibrot/complex_dynamics.hpp"

#include "multibrot/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace multibrot {

MultibrotParams::MultibrotParams(int n, Complex c_value) : degree(n), c(c_value) {
    if (n < 2) {
        throw std::invalid_argument("degree must be >= 2, got " + std::to_string(n));
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument("parameter c must be finite");
    }
}

Complex ipow(Complex z, int n) {
    Complex result{1.0, 0.0};
    Complex base = z;
    for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
        if (e & 1u) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

Complex iterate_step(Complex z, const MultibrotParams& params) {
    return ipow(z, params.degree) + params.c;
}

double default_escape_radius(const MultibrotParams& params) {
    return std::max(std::abs(params.c), 2.0);
}

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Orbit compute_orbit(const MultibrotParams& params, Complex z0, int max_iter, double escape_radius,
                    std::size_t storage_cap) {
    if (max_iter < 1) {
        throw std::invalid_argument("max_iter must be >= 1");
    }
    const double minimum_radius = default_escape_radius(params);
    if (!(escape_radius >= minimum_radius) || !std::isfinite(escape_radius)) {
        throw std::invalid_argument("escape radius " + format_real(escape_radius) +
                                    " is below the safe bound " + format_real(minimum_radius));
    }
    if (!is_finite(z0)) {
        throw std::invalid_argument("starting point must be finite");
    }

    Orbit orbit;
    orbit.start = z0;
    orbit.escape_radius_used = escape_radius;
    orbit.iterates.reserve(std::min<std::size_t>(storage_cap, static_cast<std::size_t>(max_iter) + 1));

    auto store = [&](Complex z) {
        if (orbit.iterates.size() < storage_cap) orbit.iterates.push_back(z);
        orbit.final_iterate = z;
    };

    Complex z = z0;
    store(z);
    for (int k = 0;; ++k) {
        const double modulus = std::abs(z);
        if (modulus > escape_radius) {
            orbit.outcome = Escaped{k, modulus};
            orbit.steps = k;
            break;
        }
        if (k == max_iter) {
            orbit.outcome = BudgetExhausted{};
            orbit.steps = k;
            break;
        }
        const Complex next = iterate_step(z, params);
        if (!is_finite(next)) {
            orbit.outcome = Escaped{k + 1, escape_radius};
            orbit.steps = k + 1;
            break;
        }
        z = next;
        store(z);
    }
    return orbit;
}

double fixed_point_tolerance(const MultibrotParams& params) {
    return 1e-10 * std::max(1.0, std::abs(params.c));
}

double fixed_point_residual(Complex w, const MultibrotParams& params) {
    return std::abs(ipow(w, params.degree) - w + params.c);
}

std::vector<Complex> fixed_points(const MultibrotParams& params) {
    const int n = params.degree;
    const double radius = std::pow(std::max(1.0, std::abs(params.c)), 1.0 / n);
    // Offset keeps the initial guesses off the real axis, where the roots of
    // a real-coefficient polynomial would trap them in conjugate pairs.
    constexpr double kAngleOffset = 0.4;

    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        roots[static_cast<std::size_t>(k)] =
            std::polar(radius, 2.0 * std::numbers::pi * k / n + kAngleOffset);
    }

    auto polynomial = [&](Complex z) { return ipow(z, n) - z + params.c; };

    for (int sweep = 0; sweep < kRootIterationCap; ++sweep) {
        double largest_correction = 0.0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            Complex denominator{1.0, 0.0};
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (j != i) denominator *= roots[i] - roots[j];
            }
            if (denominator == Complex{}) {
                roots[i] += Complex{1e-12, 1e-12};
                largest_correction = 1.0;
                continue;
            }
            const Complex correction = polynomial(roots[i]) / denominator;
            roots[i] -= correction;
            largest_correction =
                std::max(largest_correction, std::abs(correction) / std::max(1.0, std::abs(roots[i])));
        }
        if (largest_correction <= 1e-15) break;
    }

    const double tolerance = fixed_point_tolerance(params);
    for (const Complex& root : roots) {
        const double residual = fixed_point_residual(root, params);
        if (!(residual <= tolerance)) {
            throw NonConvergenceError("fixed point solver for degree " + std::to_string(n) +
                                      " left residual " + format_real(residual) + " above " +
                                      format_real(tolerance));
        }
    }
    return roots;
}

FixedPointReport classify_fixed_point(Complex w, const MultibrotParams& params) {
    FixedPointReport report;
    report.point = w;
    report.residual = fixed_point_residual(w, params);
    if (!(report.residual <= fixed_point_tolerance(params))) {
        throw std::invalid_argument("point is not a fixed point (residual " +
                                    format_real(report.residual) + ")");
    }
    report.derivative_modulus = std::abs(static_cast<double>(params.degree) * ipow(w, params.degree - 1));
    if (report.derivative_modulus < 1.0 - kNeutralTolerance) {
        report.fixed_point_class = FixedPointClass::Attractor;
    } else if (report.derivative_modulus > 1.0 + kNeutralTolerance) {
        report.fixed_point_class = FixedPointClass::Repellor;
    } else {
        report.fixed_point_class = FixedPointClass::Neutral;
    }
    return report;
}

const char* to_string(FixedPointClass c) {
    switch (c) {
        case FixedPointClass::Attractor: return "attractor";
        case FixedPointClass::Repellor: return "repellor";
        case FixedPointClass::Neutral: return "neutral";
    }
    return "unknown";
}

void write_orbit_csv(const Orbit& orbit, std::ostream& out) {
    out << "k,re,im\n";
    for (std::size_t k = 0; k < orbit.iterates.size(); ++k) {
        const Complex z = orbit.iterates[k];
        out << k << ',' << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
    }
}

void export_orbit_csv(const Orbit& orbit, const std::filesystem::path& destination) {
    auto out = open_for_write(destination);
    write_orbit_csv(orbit, out);
    finish_write(out, destination);
}

}  // namespace multibrot
