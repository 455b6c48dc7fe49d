#include "multibrot/membership_render.hpp"

#include "multibrot/format.hpp"
#include "multibrot/lobe_geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

namespace multibrot {

namespace {

struct Pair {
    double re;
    double im;
};

inline Pair mul(Pair a, Pair b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

inline Pair pow_n(Pair z, int n) {
    Pair result{1.0, 0.0};
    Pair base = z;
    for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
        if (e & 1u) result = mul(result, base);
        if (e > 1) base = mul(base, base);
    }
    return result;
}

// Dwell of the critical orbit; kNotEscaped when the budget runs out.
std::int32_t critical_dwell(int n, Pair c, int max_iter) {
    // max(|c|, 2)^2, with |c|^2 formed exactly as the first iterate's is.
    const double radius_squared = std::max(c.re * c.re + c.im * c.im, 4.0);
    Pair z{0.0, 0.0};
    if (n == 2) {
        for (int k = 1; k <= max_iter; ++k) {
            const double re = z.re * z.re - z.im * z.im + c.re;
            const double im = 2.0 * z.re * z.im + c.im;
            z = {re, im};
            if (!(re * re + im * im <= radius_squared)) return k;
        }
        return kNotEscaped;
    }
    for (int k = 1; k <= max_iter; ++k) {
        const Pair p = pow_n(z, n);
        z = {p.re + c.re, p.im + c.im};
        if (!(z.re * z.re + z.im * z.im <= radius_squared)) return k;
    }
    return kNotEscaped;
}

}  // namespace

MembershipResult membership(const MultibrotParams& params, int max_iter) {
    if (max_iter < 1) {
        throw std::invalid_argument("max_iter must be >= 1");
    }
    const std::int32_t dwell = critical_dwell(params.degree, {params.c.real(), params.c.imag()}, max_iter);
    if (dwell == kNotEscaped) return {};
    return {dwell};
}

Complex GridSpec::pixel_to_c(int i, int j) const {
    const int dx = i - width / 2;
    const int dy = j - height / 2;
    return {center.real() + scale * dx, center.imag() - scale * dy};
}

void GridSpec::validate(std::size_t pixel_cap) const {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("grid width and height must be positive");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("grid scale must be positive and finite");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("max_iter must be >= 1");
    }
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
        throw std::invalid_argument("grid center must be finite");
    }
    const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (pixels > pixel_cap) {
        throw std::invalid_argument("grid of " + std::to_string(pixels) + " pixels exceeds cap of " +
                                    std::to_string(pixel_cap));
    }
}

DwellBuffer render(int n, const GridSpec& spec, int worker_count, std::size_t pixel_cap) {
    if (n < 2) {
        throw std::invalid_argument("degree must be >= 2, got " + std::to_string(n));
    }
    if (worker_count < 1) {
        throw std::invalid_argument("worker count must be >= 1");
    }
    spec.validate(pixel_cap);

    DwellBuffer buffer;
    buffer.spec = spec;
    buffer.degree = n;
    buffer.dwell.assign(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height), kNotEscaped);

    constexpr int kBandRows = 4;
    std::atomic<int> next_band{0};
    auto work = [&] {
        for (;;) {
            const int first_row = next_band.fetch_add(1, std::memory_order_relaxed) * kBandRows;
            if (first_row >= spec.height) return;
            const int last_row = std::min(first_row + kBandRows, spec.height);
            for (int j = first_row; j < last_row; ++j) {
                std::int32_t* row = buffer.dwell.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.width);
                for (int i = 0; i < spec.width; ++i) {
                    const Complex c = spec.pixel_to_c(i, j);
                    row[i] = critical_dwell(n, {c.real(), c.imag()}, spec.max_iter);
                }
            }
        }
    };

    const int bands = (spec.height + kBandRows - 1) / kBandRows;
    const int threads = std::min(worker_count, bands);
    if (threads <= 1) {
        work();
        return buffer;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    pool.clear();
    return buffer;
}

std::uint8_t gray_level(std::int32_t dwell, int max_iter, Colormap colormap) {
    if (dwell == kNotEscaped) return 0;
    double fraction = 0.0;
    if (colormap == Colormap::Grayscale) {
        fraction = 1.0 - static_cast<double>(dwell) / max_iter;
    } else if (max_iter > 1) {
        fraction = 1.0 - std::log(static_cast<double>(dwell)) / std::log(static_cast<double>(max_iter));
    }
    return static_cast<std::uint8_t>(std::clamp(std::lround(255.0 * fraction), 0L, 255L));
}

std::string encode_ppm(const DwellBuffer& buffer, Colormap colormap) {
    std::string bytes = "P6\n" + std::to_string(buffer.spec.width) + ' ' + std::to_string(buffer.spec.height) + "\n255\n";
    const std::size_t header = bytes.size();
    bytes.resize(header + buffer.dwell.size() * 3);
    std::size_t offset = header;
    for (const std::int32_t dwell : buffer.dwell) {
        const auto g = static_cast<char>(gray_level(dwell, buffer.spec.max_iter, colormap));
        bytes[offset++] = g;
        bytes[offset++] = g;
        bytes[offset++] = g;
    }
    return bytes;
}

void write_ppm(const DwellBuffer& buffer, Colormap colormap, const std::filesystem::path& destination) {
    auto out = open_for_write(destination);
    const std::string bytes = encode_ppm(buffer, colormap);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    finish_write(out, destination);
}

std::uint64_t fnv1a_64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char ch : bytes) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

bool MembershipCheckReport::all_passed() const {
    return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.pass(); });
}

MembershipCheckReport boundary_membership_check(int n, double shrink, int budget) {
    if (!(shrink > 0.0 && shrink < 1.0)) {
        throw std::invalid_argument("shrink must lie in (0, 1)");
    }
    if (budget < 1) {
        throw std::invalid_argument("budget must be >= 1");
    }
    const IndentSet indents = indent_points(n);
    const auto [c_min, c_max] = c_extrema(n);
    const double mid_lobe_offset = std::numbers::pi / (n - 1);

    MembershipCheckReport report;
    auto probe = [&](double theta, double radius, bool expect_member) {
        const MembershipResult result = membership(MultibrotParams{n, std::polar(radius, theta)}, budget);
        report.points.push_back({n, theta, radius, expect_member, result.is_member(),
                                 result.escape_step.value_or(0)});
    };
    for (const double theta : indents.arguments) {
        probe(theta, shrink * c_min, true);
        probe(theta + mid_lobe_offset, c_max / shrink, false);
    }
    return report;
}

void write_membership_check_csv(const MembershipCheckReport& report, std::ostream& out) {
    auto label = [](bool member) { return member ? "member" : "escaped"; };
    out << "n,theta,radius,expected,actual,pass\n";
    for (const auto& p : report.points) {
        out << p.degree << ',' << format_real(p.theta) << ',' << format_real(p.radius) << ','
            << label(p.expect_member) << ',' << label(p.actual_member) << ','
            << (p.pass() ? "true" : "false") << '\n';
    }
}

}  // namespace multibrot
