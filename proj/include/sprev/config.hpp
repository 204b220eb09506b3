#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace sprev {

// Flat "key = value" lines; '#' starts a comment, blank lines are ignored.
// Malformed lines and repeated keys throw Errc::InvalidArgument.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

}  // namespace sprev
