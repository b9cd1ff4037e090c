#pragma once

#include "nwb/net.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace nwb {

[[nodiscard]] std::string to_json(const net& n, int indent = 2);
// Missing "contention" means minimal contention. Throws parse_error or invalid_argument.
[[nodiscard]] net net_from_json(std::string_view text);

[[nodiscard]] net load_net(const std::filesystem::path& file);
void save_net(const net& n, const std::filesystem::path& file);

[[nodiscard]] std::string to_dot(const net& n);

[[nodiscard]] std::string read_file(const std::filesystem::path& file);

} // namespace nwb
