#include "multibrot/format.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace multibrot {

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

}  // namespace multibrot
