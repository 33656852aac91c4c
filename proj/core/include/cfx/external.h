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

#ifndef CFX_EXTERNAL_H_
#define CFX_EXTERNAL_H_

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cfx/classify.h"

namespace cfx {

// Label function answered by a child process over a line protocol.
//
// On start the engine writes `#schema <name1>,<name2>,...` and expects the
// line `#ok`. Each query is the value names joined by `,` in schema order,
// terminated by `\n`; the child answers with exactly one line, `0` or `1`,
// per query and in order. At most one query is outstanding per process;
// with `processes > 1` the classifier keeps a pool and hands each caller an
// idle child.
//
// Any protocol failure (timeout, malformed reply, early exit, broken pipe)
// throws Error(kBackend) naming the unanswered query, and the offending child
// is killed. The next query on that slot spawns a fresh process.
class ExternalClassifier : public Classifier {
 public:
  struct Options {
    std::vector<std::string> argv;  // argv[0] is looked up on PATH
    std::chrono::milliseconds timeout{5000};
    int processes = 1;
  };

  ExternalClassifier(SchemaPtr schema, Options options);
  ~ExternalClassifier() override;

  Label Classify(std::span<const ValueId> values) const override;
  std::string Describe() const override;

  // Spawns every pool slot and performs the handshake eagerly.
  void Start() const;

  std::uint64_t queries() const;

 private:
  class Process;

  Process& Acquire() const;
  void Release(Process& p) const;

  Options options_;
  std::string handshake_;
  mutable std::mutex mu_;
  mutable std::condition_variable idle_cv_;
  mutable std::vector<std::unique_ptr<Process>> pool_;
  mutable std::vector<Process*> idle_;
  mutable std::uint64_t queries_ = 0;
};

// Wraps a shell command line as `/bin/sh -c "exec <command>"`.
std::vector<std::string> ShellCommand(const std::string& command);

}  // namespace cfx

#endif  // CFX_EXTERNAL_H_
