#include "x1/jsonl.hpp"

#include <array>
#include <sstream>

#include <openssl/evp.h>

#include "x1/error.hpp"

namespace x1 {

std::string dump_line(const nlohmann::json &j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void for_each_jsonl(const std::filesystem::path &path,
                    const std::function<void(std::size_t, const nlohmann::json &)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF"))
      line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw SchemaError(path.string(), lineno, e.what());
    }
    fn(lineno, j);
  }
}

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path &path) {
  std::vector<nlohmann::json> out;
  for_each_jsonl(path, [&](std::size_t, const nlohmann::json &j) { out.push_back(j); });
  return out;
}

JsonlWriter::JsonlWriter(const std::filesystem::path &path, Mode mode)
    : path_(path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary |
                      (mode == Mode::append ? std::ios::app : std::ios::trunc));
  if (!out_)
    throw IoError("cannot open " + path.string() + " for writing");
}

void JsonlWriter::write(const nlohmann::json &j) {
  out_ << dump_line(j) << '\n';
  if (!out_)
    throw IoError("write failed: " + path_.string());
  ++lines_;
}

void JsonlWriter::flush() { out_.flush(); }

void write_text_file(const std::filesystem::path &path, std::string_view content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out)
    throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(),
                 nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string file_sha256(const std::filesystem::path &path) {
  return sha256_hex(read_text_file(path));
}

} // namespace x1
