// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace sumaug {

/// Environment variable holding the external provider command line. The
/// value is run through /bin/sh -c, so it may carry arguments.
inline constexpr const char* kProviderEnvVar = "SUMAUG_PROVIDER";

/// Source of summary paraphrases.
class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;

  /// Returns paraphrases of `text`. Implementations are expected to return
  /// exactly `n` non-empty strings; callers verify.
  virtual std::vector<std::string> paraphrase(std::string_view id, std::string_view text,
                                              std::size_t n) = 0;

  /// True when concurrent calls are safe.
  [[nodiscard]] virtual bool reentrant() const { return false; }
};

/// A child process speaking the line-delimited JSON protocol over its
/// standard streams:
///
///   {"op":"paraphrase","id":str,"text":str,"n":int} -> {"id":str,"paraphrases":[str,...]}
///   {"op":"score","id":str,"text":str}               -> {"id":str,"score":float}
///
/// A response may instead carry {"id":str,"error":str}. Requests are
/// strictly serialized: one request line out, one response line back.
class ProviderProcess {
 public:
  explicit ProviderProcess(const std::string& command);
  ~ProviderProcess();

  ProviderProcess(const ProviderProcess&) = delete;
  ProviderProcess& operator=(const ProviderProcess&) = delete;

  /// Sends one JSON request line and returns the raw response line.
  std::string round_trip(const std::string& request_line);

  std::vector<std::string> paraphrase(std::string_view id, std::string_view text, std::size_t n);
  double score(std::string_view id, std::string_view text);

  /// Spawns the command named by SUMAUG_PROVIDER. Throws ConfigError when
  /// the variable is unset or empty.
  static std::string command_from_env();

 private:
  std::string read_line();

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

/// ParaphraseProvider adapter over a running provider process.
class ExternalParaphraser : public ParaphraseProvider {
 public:
  explicit ExternalParaphraser(ProviderProcess& process) : process_(process) {}

  std::vector<std::string> paraphrase(std::string_view id, std::string_view text,
                                      std::size_t n) override {
    return process_.paraphrase(id, text, n);
  }

 private:
  ProviderProcess& process_;
};

}  // namespace sumaug
