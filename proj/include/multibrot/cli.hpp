#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "multibrot/membership_render.hpp"

namespace multibrot {

/// Bad command-line input; `flag` names the offending option.
class UsageError : public std::invalid_argument {
public:
    UsageError(std::string flag, const std::string& message)
        : std::invalid_argument(flag + ": " + message), flag_(std::move(flag)) {}

    const std::string& flag() const { return flag_; }

private:
    std::string flag_;
};

/// Viewport framing the whole main lobe: centre 0, half-span 1.3 * c_max(n)
/// across the shorter image side.
GridSpec default_grid(int n, int width, int height, int max_iter);

/// Parses "N" or the inclusive range "A..B"; every degree must be >= 2.
std::vector<int> parse_degrees(const std::string& text);

/// Per-degree outcome of the verification suite.
struct DegreeVerification {
    int degree = 2;

    int lobe_count = 0;
    double max_minimum_position_error = 0.0;
    bool lobe_count_pass = false;

    // Only meaningful for degree 2.
    double x_intercept_right = 0.0;
    double x_intercept_left = 0.0;
    bool x_intercepts_pass = true;

    double extrema_squared_error = 0.0;
    double indent_modulus_error = 0.0;
    bool extrema_pass = false;

    int oracle_points = 0;
    int oracle_interior_passed = 0;
    int oracle_exterior_passed = 0;
    bool oracle_pass = false;

    double r_base = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    double gap = 0.0;
    bool convergence_pass = false;

    std::uint64_t hash_one_worker = 0;
    std::uint64_t hash_many_workers = 0;
    bool determinism_pass = false;

    bool pass() const;
};

struct VerifyReport {
    std::vector<DegreeVerification> degrees;
    bool gap_strictly_decreasing = true;
    bool overall_pass = false;
};

/// Runs the analytic, oracle and determinism checks for each degree.
/// Throws std::invalid_argument on an empty list or a degree below 2.
VerifyReport verify_suite(std::span<const int> degrees);

nlohmann::json to_json(const VerifyReport& report);

/// Command-line entry point. Returns 0 on success, 1 when `verify` finds a
/// failing check, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multibrot
