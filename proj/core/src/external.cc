// Copyright 2026 The cfx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfx/external.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "cfx/error.h"

extern char** environ;

namespace cfx {
namespace {

using Clock = std::chrono::steady_clock;

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kBackend, "external classifier: " + message);
}

}  // namespace

class ExternalClassifier::Process {
 public:
  Process(const Options& options, const std::string& handshake)
      : options_(options), handshake_(handshake) {}
  ~Process() { Kill(); }

  std::string Query(const std::string& line) {
    if (pid_ <= 0) Spawn();
    try {
      auto deadline = Clock::now() + options_.timeout;
      WriteLine(line, deadline, "query '" + line + "'");
      return ReadLine(deadline, "query '" + line + "'");
    } catch (...) {
      Kill();
      throw;
    }
  }

  void EnsureRunning() {
    if (pid_ <= 0) Spawn();
  }

 private:
  void Spawn() {
    IgnoreSigpipe();
    int in[2], out[2];
    if (::pipe2(in, O_CLOEXEC) != 0) Fail(std::string("pipe: ") + std::strerror(errno));
    if (::pipe2(out, O_CLOEXEC) != 0) {
      ::close(in[0]);
      ::close(in[1]);
      Fail(std::string("pipe: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out[1], STDOUT_FILENO);

    std::vector<char*> argv;
    for (const std::string& a : options_.argv) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(in[0]);
    ::close(out[1]);
    if (rc != 0) {
      ::close(in[1]);
      ::close(out[0]);
      Fail("cannot start '" + options_.argv[0] + "': " + std::strerror(rc));
    }
    pid_ = pid;
    to_child_ = in[1];
    from_child_ = out[0];
    buffer_.clear();
    try {
      auto deadline = Clock::now() + options_.timeout;
      WriteLine(handshake_, deadline, "handshake");
      std::string reply = ReadLine(deadline, "handshake");
      if (reply != "#ok") Fail("handshake rejected, expected '#ok', got '" + reply + "'");
    } catch (...) {
      Kill();
      throw;
    }
  }

  void Kill() {
    if (to_child_ >= 0) ::close(to_child_);
    if (from_child_ >= 0) ::close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      int status = 0;
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
    buffer_.clear();
  }

  static int RemainingMs(Clock::time_point deadline) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    return left.count() < 0 ? 0 : static_cast<int>(left.count());
  }

  void WriteLine(const std::string& line, Clock::time_point deadline,
                 const std::string& what) {
    std::string data = line + "\n";
    std::size_t done = 0;
    while (done < data.size()) {
      pollfd pfd{to_child_, POLLOUT, 0};
      int ready = ::poll(&pfd, 1, RemainingMs(deadline));
      if (ready == 0) Fail("timed out writing " + what);
      if (ready < 0) {
        if (errno == EINTR) continue;
        Fail("poll failed on " + what);
      }
      ssize_t n = ::write(to_child_, data.data() + done, data.size() - done);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        if (errno == EPIPE) Fail("broken pipe while sending " + what);
        Fail("write failed on " + what + ": " + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  std::string ReadLine(Clock::time_point deadline, const std::string& what) {
    while (true) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      pollfd pfd{from_child_, POLLIN, 0};
      int ready = ::poll(&pfd, 1, RemainingMs(deadline));
      if (ready == 0) {
        Fail("timed out after " + std::to_string(options_.timeout.count()) +
             " ms waiting for the answer to " + what);
      }
      if (ready < 0) {
        if (errno == EINTR) continue;
        Fail("poll failed on " + what);
      }
      char chunk[4096];
      ssize_t n = ::read(from_child_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        Fail("read failed on " + what + ": " + std::strerror(errno));
      }
      if (n == 0) Fail("process exited without answering " + what);
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  const Options& options_;
  const std::string& handshake_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

ExternalClassifier::ExternalClassifier(SchemaPtr schema, Options options)
    : Classifier(std::move(schema)), options_(std::move(options)) {
  if (options_.argv.empty()) {
    throw Error(ErrorCode::kInvalidInput, "external classifier needs a command");
  }
  if (options_.processes < 1) options_.processes = 1;
  if (options_.timeout.count() <= 0) {
    throw Error(ErrorCode::kInvalidInput, "external timeout must be positive");
  }
  handshake_ = "#schema ";
  for (std::size_t i = 0; i < this->schema().size(); ++i) {
    if (i > 0) handshake_ += ',';
    handshake_ += this->schema().feature(i).name;
  }
}

ExternalClassifier::~ExternalClassifier() = default;

ExternalClassifier::Process& ExternalClassifier::Acquire() const {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [&] {
    return !idle_.empty() ||
           pool_.size() < static_cast<std::size_t>(options_.processes);
  });
  if (!idle_.empty()) {
    Process* p = idle_.back();
    idle_.pop_back();
    return *p;
  }
  pool_.push_back(std::make_unique<Process>(options_, handshake_));
  return *pool_.back();
}

void ExternalClassifier::Release(Process& p) const {
  {
    std::lock_guard lock(mu_);
    idle_.push_back(&p);
  }
  idle_cv_.notify_one();
}

void ExternalClassifier::Start() const {
  std::vector<Process*> held;
  try {
    for (int i = 0; i < options_.processes; ++i) {
      Process& p = Acquire();
      held.push_back(&p);
      p.EnsureRunning();
    }
  } catch (...) {
    for (Process* p : held) Release(*p);
    throw;
  }
  for (Process* p : held) Release(*p);
}

Label ExternalClassifier::Classify(std::span<const ValueId> values) const {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += ',';
    line += schema().ValueName(i, values[i]);
  }
  Process& p = Acquire();
  std::string reply;
  try {
    reply = p.Query(line);
  } catch (...) {
    Release(p);
    throw;
  }
  Release(p);
  {
    std::lock_guard lock(mu_);
    ++queries_;
  }
  if (reply == "0") return Label::kZero;
  if (reply == "1") return Label::kOne;
  Fail("malformed reply '" + reply + "' to query '" + line +
       "' (expected 0 or 1)");
}

std::string ExternalClassifier::Describe() const {
  std::string cmd;
  for (const std::string& a : options_.argv) {
    if (!cmd.empty()) cmd += ' ';
    cmd += a;
  }
  return "external(" + cmd + ")";
}

std::uint64_t ExternalClassifier::queries() const {
  std::lock_guard lock(mu_);
  return queries_;
}

std::vector<std::string> ShellCommand(const std::string& command) {
  return {"/bin/sh", "-c", "exec " + command};
}

}  // namespace cfx
