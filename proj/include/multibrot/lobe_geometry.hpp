#pragma once

#include "multibrot/complex_dynamics.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace multibrot {

/// Thrown when the numerical extremum scan disagrees with the analytic
/// extremum positions.
class InternalInconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// n^(-1/(n-1)), the modulus of the neutral fixed points on the main-lobe
/// boundary. Evaluated as exp(-ln(n)/(n-1)).
double root_base(int n);

/// Parameter period 2(n-1)pi over which the boundary closes.
double boundary_period(int n);

/// Main-lobe boundary point for parameter phi:
///   c = z - z^n,  z = n^(-1/(n-1)) cis(phi/(n-1)),
/// so that n z^(n-1) = cis(phi). Throws std::invalid_argument for n < 2.
Complex boundary_point(int n, double phi);

struct BoundarySample {
    double phi = 0.0;
    Complex point{};
};

struct LobeBoundary {
    int degree = 2;
    std::vector<BoundarySample> samples;
    double period = 0.0;
};

inline constexpr int kDefaultSamplesPerLobe = 1024;

/// (n-1) * samples_per_lobe samples, uniform in phi over [0, 2(n-1)pi).
/// Requires samples_per_lobe >= 8.
LobeBoundary sample_boundary(int n, int samples_per_lobe = kDefaultSamplesPerLobe);

/// |boundary_point(n, phi)|^2 in closed form:
///   n^(-2/(n-1)) + n^(-2n/(n-1)) - 2 cos(phi) n^(-(n+1)/(n-1)).
double radius_squared(int n, double phi);

struct Extremum {
    double phi = 0.0;
    double modulus = 0.0;
};

struct RadialProfile {
    int degree = 2;
    std::vector<Extremum> minima;
    std::vector<Extremum> maxima;
};

/// Grid cells per 2pi of phi used by the verification scan in radial_profile.
inline constexpr int kExtremaScanCellsPerLobe = 4096;

/// Indices of strict local minima of a periodic sequence.
std::vector<std::size_t> periodic_local_minima(std::span<const double> values);
std::vector<std::size_t> periodic_local_maxima(std::span<const double> values);

/// Minima at phi = 2 pi k with |c| = c_min, maxima at (2k+1) pi with
/// |c| = c_max, k = 0..n-2, sorted by phi. The analytic positions are
/// cross-checked against a scan of radius_squared; disagreement throws
/// InternalInconsistencyError.
RadialProfile radial_profile(int n);

struct ExtremaRadii {
    double c_min = 0.0;
    double c_max = 0.0;
};

/// c_min = r(1 - 1/n), c_max = r(1 + 1/n), r = root_base(n).
ExtremaRadii c_extrema(int n);

/// |c|_max^2 and |c|_min^2 as the sum of their three expanded power terms
/// 1/(n^(1/(n-1)))^2 + 1/(n^(n/(n-1)))^2 +- 2/n^((n+1)/(n-1)).
struct ExtremaSquared {
    double c_min_squared = 0.0;
    double c_max_squared = 0.0;
};
ExtremaSquared expanded_extrema_squared(int n);

/// Cusps where adjacent lobes meet: arguments of the (n-1)-th roots of unity
/// at modulus c_min(n).
struct IndentSet {
    int degree = 2;
    std::vector<double> arguments;
    double modulus = 0.0;
    std::vector<Complex> points;
};

IndentSet indent_points(int n);

struct ConvergenceRow {
    int degree = 2;
    double r_base = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    double gap = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};

/// One row per distinct degree, ascending.
ConvergenceReport convergence_report(std::span<const int> degrees);

enum class BoundaryFormat { Csv, Svg };

/// CSV `phi,x,y`, or an SVG with a single closed path over viewBox
/// [-1.1, 1.1]^2. SVG y runs downward, so y is written negated.
void write_boundary(const LobeBoundary& boundary, BoundaryFormat format, std::ostream& out);
void export_boundary(const LobeBoundary& boundary, BoundaryFormat format,
                     const std::filesystem::path& destination);

}  // namespace multibrot
