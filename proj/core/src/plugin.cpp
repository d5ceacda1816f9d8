#include "x1/plugin.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <sys/wait.h>
#include <unistd.h>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"

namespace x1 {

JsonLinePlugin::JsonLinePlugin(const std::string &command) : command_(command) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0)
    throw IoError("pipe: " + std::string(std::strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw IoError("pipe: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0)
    throw IoError("fork: " + std::string(std::strerror(errno)));
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  // A dead child must surface as an IoError on write, not kill us.
  std::signal(SIGPIPE, SIG_IGN);
}

JsonLinePlugin::~JsonLinePlugin() {
  if (to_child_ >= 0)
    close(to_child_);
  if (from_child_ >= 0)
    close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

std::string JsonLinePlugin::read_line() {
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    const auto n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR)
      continue;
    if (n <= 0)
      throw IoError("plugin '" + command_ + "' closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

nlohmann::json JsonLinePlugin::request(const nlohmann::json &req) {
  std::lock_guard lock(mutex_);
  const std::string line = dump_line(req) + "\n";
  std::size_t off = 0;
  while (off < line.size()) {
    const auto n = write(to_child_, line.data() + off, line.size() - off);
    if (n < 0 && errno == EINTR)
      continue;
    if (n <= 0)
      throw IoError("plugin '" + command_ + "' is not accepting input");
    off += static_cast<std::size_t>(n);
  }
  const auto reply = read_line();
  try {
    return nlohmann::json::parse(reply);
  } catch (const nlohmann::json::parse_error &e) {
    throw IoError("plugin '" + command_ + "' sent malformed JSON: " + e.what());
  }
}

} // namespace x1
