#pragma once

#include "multibrot/complex_dynamics.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace multibrot {

/// Result of iterating the critical orbit z0 = 0.
struct MembershipResult {
    std::optional<int> escape_step;  // empty: budget exhausted without escape

    bool is_member() const { return !escape_step.has_value(); }
    friend bool operator==(const MembershipResult&, const MembershipResult&) = default;
};

/// Escape-time test of c with radius default_escape_radius(params).
/// Throws std::invalid_argument if max_iter < 1.
MembershipResult membership(const MultibrotParams& params, int max_iter);

inline constexpr std::size_t kDefaultPixelCap = 100'000'000;

/// Pixel grid over the c-plane. Pixel (i, j), column i and row j, maps to
///   re = center.re + scale * (i - width/2)
///   im = center.im - scale * (j - height/2)
/// with integer division, so row 0 holds the largest imaginary part and,
/// for odd sizes, the middle pixel sits exactly on `center`.
struct GridSpec {
    int width = 1;
    int height = 1;
    Complex center{};
    double scale = 1.0;
    int max_iter = 1;

    Complex pixel_to_c(int i, int j) const;
    /// Throws std::invalid_argument on non-positive sizes, scale or budget,
    /// or when width * height exceeds pixel_cap.
    void validate(std::size_t pixel_cap = kDefaultPixelCap) const;
};

inline constexpr std::int32_t kNotEscaped = -1;

/// Row-major escape steps; each value is in [1, max_iter] or kNotEscaped.
struct DwellBuffer {
    GridSpec spec;
    int degree = 2;
    std::vector<std::int32_t> dwell;

    std::int32_t at(int i, int j) const {
        return dwell[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.width) +
                     static_cast<std::size_t>(i)];
    }
};

/// Escape-time image of degree n. Rows are handed out in bands to
/// worker_count threads and written by row index, so the result is
/// independent of worker_count and scheduling.
DwellBuffer render(int n, const GridSpec& spec, int worker_count,
                   std::size_t pixel_cap = kDefaultPixelCap);

enum class Colormap { Grayscale, LogGrayscale };

/// Gray level for one dwell value.
std::uint8_t gray_level(std::int32_t dwell, int max_iter, Colormap colormap);

/// Binary PPM (P6) bytes: "P6\n<w> <h>\n255\n" then RGB triples, top row first.
std::string encode_ppm(const DwellBuffer& buffer, Colormap colormap);
void write_ppm(const DwellBuffer& buffer, Colormap colormap, const std::filesystem::path& destination);

/// 64-bit FNV-1a, used to compare renders.
std::uint64_t fnv1a_64(std::string_view bytes);

struct MembershipCheckPoint {
    int degree = 2;
    double theta = 0.0;
    double radius = 0.0;
    bool expect_member = true;
    bool actual_member = true;
    int escape_step = 0;  // 0 when actual_member

    bool pass() const { return expect_member == actual_member; }
};

struct MembershipCheckReport {
    std::vector<MembershipCheckPoint> points;

    bool all_passed() const;
};

inline constexpr double kDefaultShrink = 0.9;

/// Cross-checks the analytic main-lobe extrema against escape-time
/// membership. For each indent argument theta of indent_points(n):
///   shrink * c_min(n) * cis(theta)              expected Member
///   (c_max(n) / shrink) * cis(theta + pi/(n-1)) expected Escaped
/// Throws std::invalid_argument unless 0 < shrink < 1 and budget >= 1.
MembershipCheckReport boundary_membership_check(int n, double shrink = kDefaultShrink, int budget = 10'000);

/// CSV `n,theta,radius,expected,actual,pass`.
void write_membership_check_csv(const MembershipCheckReport& report, std::ostream& out);

}  // namespace multibrot
