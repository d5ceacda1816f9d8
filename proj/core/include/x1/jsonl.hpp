#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace x1 {

/// Compact UTF-8 serialization used for every line we write. Key order is
/// the json object's (sorted) order, so output is stable.
std::string dump_line(const nlohmann::json &j);

/// Calls `fn(line_number, object)` for each non-empty line. Throws
/// SchemaError naming the line on malformed JSON, IoError if unreadable.
void for_each_jsonl(const std::filesystem::path &path,
                    const std::function<void(std::size_t, const nlohmann::json &)> &fn);

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path &path);

/// Append-or-truncate JSONL writer: one object per line, LF endings, no BOM.
class JsonlWriter {
public:
  enum class Mode { truncate, append };

  explicit JsonlWriter(const std::filesystem::path &path, Mode mode = Mode::truncate);
  void write(const nlohmann::json &j);
  void flush();
  std::size_t lines_written() const noexcept { return lines_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t lines_ = 0;
};

void write_text_file(const std::filesystem::path &path, std::string_view content);
std::string read_text_file(const std::filesystem::path &path);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path &path);

} // namespace x1
