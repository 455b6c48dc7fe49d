#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace multibrot {

/// Decimal with 17 significant digits; round-trips every double.
std::string format_real(double value);

/// Opens `path` for binary writing or throws std::runtime_error naming it.
std::ofstream open_for_write(const std::filesystem::path& path);

/// Flushes and throws std::runtime_error naming `path` if the stream failed.
void finish_write(std::ofstream& out, const std::filesystem::path& path);

}  // namespace multibrot
