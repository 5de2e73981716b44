// SPDX-License-Identifier: Apache-2.0
#include "sumaug/provider.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "sumaug/error.hpp"

namespace sumaug {

using nlohmann::json;

ProviderProcess::ProviderProcess(const std::string& command) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw ProviderError(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ProviderError(std::string("pipe: ") + std::strerror(errno));
  }
  // a dead provider must surface as EPIPE, not kill us
  std::signal(SIGPIPE, SIG_IGN);

  pid_ = fork();
  if (pid_ < 0) throw ProviderError(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ProviderProcess::~ProviderProcess() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

std::string ProviderProcess::command_from_env() {
  const char* value = std::getenv(kProviderEnvVar);
  if (value == nullptr || *value == '\0') {
    throw ConfigError(std::string("external provider requested but ") + kProviderEnvVar + " is not set");
  }
  return value;
}

std::string ProviderProcess::read_line() {
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t got = read(from_child_, chunk, sizeof chunk);
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) throw ProviderError("provider closed its output stream");
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
}

std::string ProviderProcess::round_trip(const std::string& request_line) {
  std::string data = request_line;
  data += '\n';
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = write(to_child_, data.data() + sent, data.size() - sent);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw ProviderError(std::string("provider write failed: ") + std::strerror(errno));
    sent += static_cast<std::size_t>(n);
  }
  return read_line();
}

namespace {

json parse_response(const std::string& line, std::string_view id) {
  json resp;
  try {
    resp = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProviderError(std::string("malformed provider response: ") + e.what());
  }
  if (!resp.is_object()) throw ProviderError("provider response is not an object");
  if (!resp.contains("id") || !resp["id"].is_string() || resp["id"].get<std::string>() != id) {
    throw ProviderError("provider response id does not match request '" + std::string(id) + "'");
  }
  if (resp.contains("error")) {
    throw ProviderError("provider error for '" + std::string(id) + "': " + resp["error"].dump());
  }
  return resp;
}

}  // namespace

std::vector<std::string> ProviderProcess::paraphrase(std::string_view id, std::string_view text,
                                                     std::size_t n) {
  json req{{"op", "paraphrase"}, {"id", id}, {"text", text}, {"n", n}};
  const json resp = parse_response(round_trip(req.dump()), id);
  auto it = resp.find("paraphrases");
  if (it == resp.end() || !it->is_array()) throw ProviderError("response lacks a paraphrases array");
  std::vector<std::string> out;
  for (const auto& p : *it) {
    if (!p.is_string()) throw ProviderError("non-string paraphrase in response");
    out.push_back(p.get<std::string>());
  }
  return out;
}

double ProviderProcess::score(std::string_view id, std::string_view text) {
  json req{{"op", "score"}, {"id", id}, {"text", text}};
  const json resp = parse_response(round_trip(req.dump()), id);
  auto it = resp.find("score");
  if (it == resp.end() || !it->is_number()) throw ProviderError("response lacks a numeric score");
  return it->get<double>();
}

}  // namespace sumaug
