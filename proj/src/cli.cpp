#include "multibrot/cli.hpp"

#include "multibrot/complex_dynamics.hpp"
#include "multibrot/format.hpp"
#include "multibrot/lobe_geometry.hpp"
#include "multibrot/membership_render.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

namespace multibrot {

namespace {

double parse_real(const std::string& text, const std::string& flag) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(flag, "'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw UsageError(flag, "'" + text + "' is not a finite number");
    }
    return value;
}

Complex parse_complex(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw UsageError(flag, "expected RE,IM but got '" + text + "'");
    }
    return {parse_real(text.substr(0, comma), flag), parse_real(text.substr(comma + 1), flag)};
}

int parse_degree_value(const std::string& text) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw UsageError("--degrees", "'" + text + "' is not an integer");
    }
    if (used != text.size()) {
        throw UsageError("--degrees", "'" + text + "' is not an integer");
    }
    if (value < 2) {
        throw UsageError("--degrees", "degree must be >= 2, got " + text);
    }
    return value;
}

std::ofstream open_output(const std::string& path, const std::string& flag) {
    try {
        return open_for_write(path);
    } catch (const std::runtime_error& e) {
        throw UsageError(flag, e.what());
    }
}

void finish_output(std::ofstream& stream, const std::string& path) { finish_write(stream, path); }

struct RenderArgs {
    int degree = 2;
    int width = 800;
    int height = 800;
    std::optional<std::string> center;
    std::optional<double> scale;
    int max_iter = 500;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string colormap = "gray";
    std::string out;
};

struct BoundaryArgs {
    int degree = 2;
    int samples = kDefaultSamplesPerLobe;
    std::string out;
};

struct OrbitArgs {
    int degree = 2;
    std::string c = "0,0";
    std::string z0 = "0,0";
    int max_iter = 200;
    std::string out;
};

struct IndentArgs {
    int degree = 2;
    std::string out;
};

struct VerifyArgs {
    std::string degrees = "2..6";
    std::string report;
};

int do_render(const RenderArgs& args, std::ostream& out) {
    GridSpec spec = default_grid(args.degree, args.width, args.height, args.max_iter);
    if (args.center) spec.center = parse_complex(*args.center, "--center");
    if (args.scale) {
        if (!(*args.scale > 0.0) || !std::isfinite(*args.scale)) {
            throw UsageError("--scale", "must be positive");
        }
        spec.scale = *args.scale;
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError("--width/--height", e.what());
    }
    const Colormap colormap = args.colormap == "loggray" ? Colormap::LogGrayscale : Colormap::Grayscale;
    auto stream = open_output(args.out, "--out");

    const DwellBuffer buffer = render(args.degree, spec, args.threads);
    const std::string bytes = encode_ppm(buffer, colormap);
    stream.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    finish_output(stream, args.out);
    out << "wrote " << args.out << " (" << spec.width << "x" << spec.height << ", hash "
        << fmt::format("{:016x}", fnv1a_64(bytes)) << ")\n";
    return 0;
}

int do_boundary(const BoundaryArgs& args, std::ostream& out) {
    const auto extension = std::filesystem::path(args.out).extension().string();
    const BoundaryFormat format = extension == ".svg" ? BoundaryFormat::Svg : BoundaryFormat::Csv;
    auto stream = open_output(args.out, "--out");
    const LobeBoundary boundary = sample_boundary(args.degree, args.samples);
    write_boundary(boundary, format, stream);
    finish_output(stream, args.out);
    out << "wrote " << boundary.samples.size() << " samples to " << args.out << '\n';
    return 0;
}

int do_orbit(const OrbitArgs& args, std::ostream& out) {
    const MultibrotParams params{args.degree, parse_complex(args.c, "--c")};
    const Complex z0 = parse_complex(args.z0, "--z0");
    std::optional<std::ofstream> stream;
    if (!args.out.empty()) stream = open_output(args.out, "--out");

    const Orbit orbit = compute_orbit(params, z0, args.max_iter, default_escape_radius(params));
    if (stream) {
        write_orbit_csv(orbit, *stream);
        finish_output(*stream, args.out);
        if (const auto* escaped = std::get_if<Escaped>(&orbit.outcome)) {
            out << "escaped at step " << escaped->step << " with modulus " << format_real(escaped->modulus) << '\n';
        } else {
            out << "budget exhausted after " << orbit.steps << " steps\n";
        }
    } else {
        write_orbit_csv(orbit, out);
    }
    return 0;
}

int do_indents(const IndentArgs& args, std::ostream& out) {
    std::optional<std::ofstream> stream;
    if (!args.out.empty()) stream = open_output(args.out, "--out");
    const IndentSet indents = indent_points(args.degree);
    auto emit = [&](std::ostream& sink) {
        sink << "k,theta,modulus,re,im\n";
        for (std::size_t k = 0; k < indents.arguments.size(); ++k) {
            sink << k << ',' << format_real(indents.arguments[k]) << ',' << format_real(indents.modulus) << ','
                 << format_real(indents.points[k].real()) << ',' << format_real(indents.points[k].imag()) << '\n';
        }
    };
    emit(out);
    if (stream) {
        emit(*stream);
        finish_output(*stream, args.out);
    }
    return 0;
}

int do_verify(const VerifyArgs& args, std::ostream& out) {
    const std::vector<int> degrees = parse_degrees(args.degrees);
    std::optional<std::ofstream> stream;
    if (!args.report.empty()) stream = open_output(args.report, "--report");

    const VerifyReport report = verify_suite(degrees);
    const std::string json = to_json(report).dump(2);
    out << json << '\n';
    if (stream) {
        *stream << json << '\n';
        finish_output(*stream, args.report);
    }
    return report.overall_pass ? 0 : 1;
}

}  // namespace

std::vector<int> parse_degrees(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        return {parse_degree_value(text)};
    }
    const int first = parse_degree_value(text.substr(0, dots));
    const int last = parse_degree_value(text.substr(dots + 2));
    if (last < first) {
        throw UsageError("--degrees", "empty range '" + text + "'");
    }
    std::vector<int> degrees;
    for (int n = first; n <= last; ++n) degrees.push_back(n);
    return degrees;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multibrot main-lobe geometry, orbits and escape-time rendering", "multibrot"};
    app.require_subcommand(1);

    const auto degree_range = CLI::Range(2, INT_MAX);
    const auto positive = CLI::Range(1, INT_MAX);

    RenderArgs render_args;
    auto* render_cmd = app.add_subcommand("render", "Render an escape-time image as binary PPM");
    render_cmd->add_option("--degree", render_args.degree, "Polynomial degree n")->check(degree_range);
    render_cmd->add_option("--width", render_args.width, "Image width in pixels")->check(positive);
    render_cmd->add_option("--height", render_args.height, "Image height in pixels")->check(positive);
    render_cmd->add_option("--center", render_args.center, "Viewport centre RE,IM");
    render_cmd->add_option("--scale", render_args.scale, "Complex-plane units per pixel");
    render_cmd->add_option("--max-iter", render_args.max_iter, "Iteration budget")->check(positive);
    render_cmd->add_option("--threads", render_args.threads, "Worker threads")->check(positive);
    render_cmd->add_option("--colormap", render_args.colormap, "gray or loggray")
        ->check(CLI::IsMember({"gray", "loggray"}));
    render_cmd->add_option("--out", render_args.out, "Output PPM path")->required();

    BoundaryArgs boundary_args;
    auto* boundary_cmd = app.add_subcommand("boundary", "Sample the main-lobe boundary to CSV or SVG");
    boundary_cmd->add_option("--degree", boundary_args.degree, "Polynomial degree n")->check(degree_range);
    boundary_cmd->add_option("--samples", boundary_args.samples, "Samples per lobe")->check(CLI::Range(8, INT_MAX));
    boundary_cmd->add_option("--out", boundary_args.out, "Output path; .svg selects SVG")->required();

    OrbitArgs orbit_args;
    auto* orbit_cmd = app.add_subcommand("orbit", "Compute an orbit of z^n + c as CSV");
    orbit_cmd->add_option("--degree", orbit_args.degree, "Polynomial degree n")->check(degree_range);
    orbit_cmd->add_option("--c", orbit_args.c, "Parameter c as RE,IM");
    orbit_cmd->add_option("--z0", orbit_args.z0, "Starting point as RE,IM");
    orbit_cmd->add_option("--max-iter", orbit_args.max_iter, "Iteration budget")->check(positive);
    orbit_cmd->add_option("--out", orbit_args.out, "Output CSV path (stdout if omitted)");

    IndentArgs indent_args;
    auto* indents_cmd = app.add_subcommand("indents", "List the indent points of the main lobe");
    indents_cmd->add_option("--degree", indent_args.degree, "Polynomial degree n")->check(degree_range);
    indents_cmd->add_option("--out", indent_args.out, "Also write the CSV here");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite and emit a JSON report");
    verify_cmd->add_option("--degrees", verify_args.degrees, "Degree N or inclusive range A..B");
    verify_cmd->add_option("--report", verify_args.report, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*render_cmd) return do_render(render_args, out);
        if (*boundary_cmd) return do_boundary(boundary_args, out);
        if (*orbit_cmd) return do_orbit(orbit_args, out);
        if (*indents_cmd) return do_indents(indent_args, out);
        if (*verify_cmd) return do_verify(verify_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace multibrot
