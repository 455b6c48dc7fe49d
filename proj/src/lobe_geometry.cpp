#include "multibrot/lobe_geometry.hpp"

#include "multibrot/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace multibrot {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degree(int n) {
    if (n < 2) {
        throw std::invalid_argument("degree must be >= 2, got " + std::to_string(n));
    }
}

}  // namespace

double root_base(int n) {
    require_degree(n);
    return std::exp(-std::log(static_cast<double>(n)) / (n - 1));
}

double boundary_period(int n) {
    require_degree(n);
    return 2.0 * (n - 1) * kPi;
}

Complex boundary_point(int n, double phi) {
    require_degree(n);
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("phi must be finite");
    }
    const double r = root_base(n);
    const double angle = phi / (n - 1);
    // n^(-n/(n-1)) = r / n
    return std::polar(r, angle) - std::polar(r / n, n * angle);
}

LobeBoundary sample_boundary(int n, int samples_per_lobe) {
    require_degree(n);
    if (samples_per_lobe < 8) {
        throw std::invalid_argument("samples per lobe must be >= 8, got " +
                                    std::to_string(samples_per_lobe));
    }
    LobeBoundary boundary;
    boundary.degree = n;
    boundary.period = boundary_period(n);
    const std::size_t count = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(samples_per_lobe);
    boundary.samples.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double phi = boundary.period * static_cast<double>(k) / static_cast<double>(count);
        boundary.samples.push_back({phi, boundary_point(n, phi)});
    }
    return boundary;
}

double radius_squared(int n, double phi) {
    const double r = root_base(n);
    const double r2 = r * r;
    return r2 + r2 / (static_cast<double>(n) * n) - 2.0 * std::cos(phi) * r2 / n;
}

namespace {

template <typename Better>
std::vector<std::size_t> periodic_extrema(std::span<const double> values, Better better) {
    std::vector<std::size_t> found;
    const std::size_t size = values.size();
    if (size < 3) return found;
    for (std::size_t j = 0; j < size; ++j) {
        const double before = values[(j + size - 1) % size];
        const double after = values[(j + 1) % size];
        if (better(values[j], before) && better(values[j], after)) found.push_back(j);
    }
    return found;
}

bool near_any(double phi, const std::vector<std::size_t>& cells, double cell_width) {
    return std::any_of(cells.begin(), cells.end(), [&](std::size_t j) {
        return std::abs(static_cast<double>(j) * cell_width - phi) <= cell_width * (1.0 + 1e-9);
    });
}

}  // namespace

std::vector<std::size_t> periodic_local_minima(std::span<const double> values) {
    return periodic_extrema(values, [](double a, double b) { return a < b; });
}

std::vector<std::size_t> periodic_local_maxima(std::span<const double> values) {
    return periodic_extrema(values, [](double a, double b) { return a > b; });
}

RadialProfile radial_profile(int n) {
    require_degree(n);
    const auto [c_min, c_max] = c_extrema(n);

    RadialProfile profile;
    profile.degree = n;
    for (int k = 0; k < n - 1; ++k) {
        profile.minima.push_back({2.0 * kPi * k, c_min});
        profile.maxima.push_back({(2.0 * k + 1.0) * kPi, c_max});
    }

    const std::size_t cells = static_cast<std::size_t>(kExtremaScanCellsPerLobe) * static_cast<std::size_t>(n - 1);
    const double period = boundary_period(n);
    const double cell_width = period / static_cast<double>(cells);
    std::vector<double> scan(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        scan[j] = radius_squared(n, static_cast<double>(j) * cell_width);
    }
    const auto scan_minima = periodic_local_minima(scan);
    const auto scan_maxima = periodic_local_maxima(scan);

    if (scan_minima.size() != profile.minima.size() || scan_maxima.size() != profile.maxima.size()) {
        throw InternalInconsistencyError("degree " + std::to_string(n) + ": scan found " +
                                         std::to_string(scan_minima.size()) + " minima and " +
                                         std::to_string(scan_maxima.size()) + " maxima, expected " +
                                         std::to_string(n - 1) + " of each");
    }
    for (const auto& extremum : profile.minima) {
        if (!near_any(extremum.phi, scan_minima, cell_width)) {
            throw InternalInconsistencyError("degree " + std::to_string(n) + ": no scan minimum near phi " +
                                             format_real(extremum.phi));
        }
    }
    for (const auto& extremum : profile.maxima) {
        if (!near_any(extremum.phi, scan_maxima, cell_width)) {
            throw InternalInconsistencyError("degree " + std::to_string(n) + ": no scan maximum near phi " +
                                             format_real(extremum.phi));
        }
    }
    return profile;
}

ExtremaRadii c_extrema(int n) {
    const double r = root_base(n);
    return {r * (1.0 - 1.0 / n), r * (1.0 + 1.0 / n)};
}

ExtremaSquared expanded_extrema_squared(int n) {
    require_degree(n);
    const double nd = n;
    const double a = std::pow(nd, 1.0 / (nd - 1.0));
    const double b = std::pow(nd, nd / (nd - 1.0));
    const double cross = 2.0 / std::pow(nd, (nd + 1.0) / (nd - 1.0));
    const double common = 1.0 / (a * a) + 1.0 / (b * b);
    return {common - cross, common + cross};
}

IndentSet indent_points(int n) {
    require_degree(n);
    IndentSet indents;
    indents.degree = n;
    indents.modulus = c_extrema(n).c_min;
    for (int k = 0; k < n - 1; ++k) {
        const double argument = 2.0 * kPi * k / (n - 1);
        indents.arguments.push_back(argument);
        indents.points.push_back(std::polar(indents.modulus, argument));
    }
    return indents;
}

ConvergenceReport convergence_report(std::span<const int> degrees) {
    std::vector<int> sorted(degrees.begin(), degrees.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    ConvergenceReport report;
    report.rows.reserve(sorted.size());
    for (int n : sorted) {
        const double r = root_base(n);
        const auto [c_min, c_max] = c_extrema(n);
        report.rows.push_back({n, r, c_min, c_max, c_max - c_min});
    }
    return report;
}

void write_boundary(const LobeBoundary& boundary, BoundaryFormat format, std::ostream& out) {
    if (boundary.samples.empty()) {
        throw std::invalid_argument("boundary has no samples");
    }
    if (format == BoundaryFormat::Csv) {
        out << "phi,x,y\n";
        for (const auto& s : boundary.samples) {
            out << format_real(s.phi) << ',' << format_real(s.point.real()) << ','
                << format_real(s.point.imag()) << '\n';
        }
        return;
    }
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\" "
        << "width=\"800\" height=\"800\">\n"
        << "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.002\" d=\"";
    char command = 'M';
    for (const auto& s : boundary.samples) {
        out << command << format_real(s.point.real()) << ' ' << format_real(-s.point.imag()) << ' ';
        command = 'L';
    }
    out << "Z\"/>\n</svg>\n";
}

void export_boundary(const LobeBoundary& boundary, BoundaryFormat format,
                     const std::filesystem::path& destination) {
    if (boundary.samples.empty()) {
        throw std::invalid_argument("boundary has no samples");
    }
    auto out = open_for_write(destination);
    write_boundary(boundary, format, out);
    finish_write(out, destination);
}

}  // namespace multibrot
