#pragma once

#include <mutex>
#include <string>
#include <sys/types.h>

#include <nlohmann/json.hpp>

namespace x1 {

/// Child process speaking one JSON object per line over stdin/stdout.
/// Requests are serialized by an internal mutex.
class JsonLinePlugin {
public:
  /// Runs `command` through /bin/sh -c. Throws IoError if it cannot start.
  explicit JsonLinePlugin(const std::string &command);
  ~JsonLinePlugin();

  JsonLinePlugin(const JsonLinePlugin &) = delete;
  JsonLinePlugin &operator=(const JsonLinePlugin &) = delete;

  /// Sends `request`, blocks for one response line. Throws IoError when the
  /// child has exited or replies with malformed JSON.
  nlohmann::json request(const nlohmann::json &request);

  const std::string &command() const noexcept { return command_; }

private:
  std::string read_line();

  std::string command_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::mutex mutex_;
};

} // namespace x1
