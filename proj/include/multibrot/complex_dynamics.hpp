#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <variant>
#include <vector>

namespace multibrot {

using Complex = std::complex<double>;

/// Thrown when the polynomial root finder misses its residual target.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degree n and parameter c of f(z) = z^n + c.
struct MultibrotParams {
    int degree = 2;
    Complex c{};

    MultibrotParams() = default;
    MultibrotParams(int n, Complex c_value);
};

/// z^n by binary exponentiation. n >= 0.
Complex ipow(Complex z, int n);

Complex iterate_step(Complex z, const MultibrotParams& params);

/// max(|c|, 2); a bound past which every orbit of z^n + c diverges, n >= 2.
double default_escape_radius(const MultibrotParams& params);

struct Escaped {
    int step = 0;
    double modulus = 0.0;
};

struct BudgetExhausted {};

using OrbitOutcome = std::variant<Escaped, BudgetExhausted>;

inline constexpr std::size_t kDefaultOrbitStorageCap = 10'000;

/// Iterate sequence z0..zK together with how the iteration ended.
///
/// `iterates` holds at most the storage cap passed to compute_orbit; when it
/// is shorter than `steps + 1` the orbit was truncated and only
/// `final_iterate` describes the tail.
struct Orbit {
    Complex start{};
    std::vector<Complex> iterates;
    OrbitOutcome outcome = BudgetExhausted{};
    double escape_radius_used = 0.0;
    int steps = 0;
    Complex final_iterate{};

    bool escaped() const { return std::holds_alternative<Escaped>(outcome); }
    bool truncated() const { return iterates.size() < static_cast<std::size_t>(steps) + 1; }
};

/// Iterates f from z0 until |z_k| > escape_radius or k == max_iter.
///
/// Throws std::invalid_argument if max_iter < 1 or escape_radius is below
/// default_escape_radius(params). An iterate that overflows to a non-finite
/// value ends the orbit as Escaped at that step with the escape radius as
/// modulus; the non-finite value itself is not stored.
Orbit compute_orbit(const MultibrotParams& params, Complex z0, int max_iter, double escape_radius,
                    std::size_t storage_cap = kDefaultOrbitStorageCap);

inline constexpr int kRootIterationCap = 500;

/// Residual bound every returned fixed point satisfies: 1e-10 * max(1, |c|).
double fixed_point_tolerance(const MultibrotParams& params);

/// |w^n - w + c|
double fixed_point_residual(Complex w, const MultibrotParams& params);

/// All n roots of z^n - z + c = 0 (with multiplicity), by simultaneous
/// Weierstrass iteration. Throws NonConvergenceError when the residual
/// target is not met within kRootIterationCap sweeps.
std::vector<Complex> fixed_points(const MultibrotParams& params);

enum class FixedPointClass { Attractor, Repellor, Neutral };

inline constexpr double kNeutralTolerance = 1e-9;

struct FixedPointReport {
    Complex point{};
    double derivative_modulus = 0.0;
    FixedPointClass fixed_point_class = FixedPointClass::Neutral;
    double residual = 0.0;
};

/// Classifies by |f'(w)| = |n w^(n-1)| against 1 +- kNeutralTolerance.
/// Throws std::invalid_argument when w is not a fixed point to within
/// fixed_point_tolerance(params).
FixedPointReport classify_fixed_point(Complex w, const MultibrotParams& params);

const char* to_string(FixedPointClass c);

/// CSV with header `k,re,im`, one row per stored iterate.
void write_orbit_csv(const Orbit& orbit, std::ostream& out);
void export_orbit_csv(const Orbit& orbit, const std::filesystem::path& destination);

}  // namespace multibrot
