#include "sprev/config.hpp"

#include <fstream>
#include <iterator>

#include "sprev/error.hpp"

namespace sprev {

namespace {

std::string_view strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidArgument, where + ": expected 'key = value'");
    }
    const std::string key(strip(line.substr(0, eq)));
    const std::string value(strip(line.substr(eq + 1)));
    if (key.empty()) throw Error(Errc::InvalidArgument, where + ": empty key");
    if (!out.emplace(key, value).second) {
      throw Error(Errc::InvalidArgument, where + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileOpen, "cannot open config file " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_config(text);
}

}  // namespace sprev
