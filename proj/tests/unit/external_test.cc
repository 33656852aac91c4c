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

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "cfx/error.h"
#include "cfx/io.h"

namespace cfx {
namespace {

const std::string kScript = std::string(CFX_FIXTURE_DIR) + "/tennis_classifier.py";

SchemaPtr Tennis() {
  return io::SchemaFromJson(io::ReadFile(std::string(CFX_FIXTURE_DIR) + "/tennis_schema.json"));
}

ExternalClassifier::Options Opts(std::vector<std::string> args,
                                 std::chrono::milliseconds timeout = std::chrono::milliseconds(5000),
                                 int processes = 1) {
  ExternalClassifier::Options o;
  o.argv = {"python3", kScript};
  for (auto& a : args) o.argv.push_back(a);
  o.timeout = timeout;
  o.processes = processes;
  return o;
}

ValueVector V(const FeatureSchema& s, std::vector<std::string> names) {
  return s.Encode(names);
}

std::string BackendMessage(const ExternalClassifier& c, const ValueVector& v) {
  try {
    c.Classify(v);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBackend);
    return e.what();
  }
  ADD_FAILURE() << "expected a backend error";
  return "";
}

TEST(External, AnswersQueries) {
  auto s = Tennis();
  ExternalClassifier c(s, Opts({"ok"}));
  EXPECT_EQ(c.Classify(V(*s, {"sunny", "normal", "weak"})), Label::kOne);
  EXPECT_EQ(c.Classify(V(*s, {"sunny", "high", "weak"})), Label::kZero);
  EXPECT_EQ(c.Classify(V(*s, {"rain", "high", "weak"})), Label::kOne);
  EXPECT_EQ(c.queries(), 3u);
}

TEST(External, MalformedReply) {
  auto s = Tennis();
  ExternalClassifier c(s, Opts({"yes"}));
  std::string msg = BackendMessage(c, V(*s, {"sunny", "normal", "weak"}));
  EXPECT_NE(msg.find("malformed reply 'yes'"), std::string::npos) << msg;
}

TEST(External, ProcessDeathNamesTheQuery) {
  auto s = Tennis();
  ExternalClassifier c(s, Opts({"die-after", "1"}));
  EXPECT_EQ(c.Classify(V(*s, {"overcast", "high", "weak"})), Label::kOne);
  std::string msg = BackendMessage(c, V(*s, {"rain", "normal", "strong"}));
  EXPECT_NE(msg.find("rain,normal,strong"), std::string::npos) << msg;
}

TEST(External, Timeout) {
  auto s = Tennis();
  ExternalClassifier c(s, Opts({"hang"}, std::chrono::milliseconds(300)));
  auto t0 = std::chrono::steady_clock::now();
  std::string msg = BackendMessage(c, V(*s, {"sunny", "normal", "weak"}));
  auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_NE(msg.find("timed out"), std::string::npos) << msg;
  EXPECT_LT(elapsed, std::chrono::seconds(3));
}

TEST(External, BadHandshake) {
  auto s = Tennis();
  ExternalClassifier c(s, Opts({"bad-handshake"}));
  try {
    c.Start();
    FAIL() << "expected a handshake error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBackend);
    EXPECT_NE(std::string(e.what()).find("handshake"), std::string::npos);
  }
}

TEST(External, MissingProgram) {
  auto s = Tennis();
  ExternalClassifier::Options o;
  o.argv = {"/nonexistent/cfx-no-such-program"};
  ExternalClassifier c(s, o);
  EXPECT_THROW(c.Classify(V(*s, {"sunny", "normal", "weak"})), Error);
}

TEST(External, RejectsBadOptions) {
  auto s = Tennis();
  EXPECT_THROW(ExternalClassifier(s, ExternalClassifier::Options{}), Error);
  EXPECT_THROW(ExternalClassifier(s, Opts({}, std::chrono::milliseconds(0))), Error);
}

TEST(External, PoolAgreesWithTheRules) {
  auto s = Tennis();
  ExternalClassifier single(s, Opts({"ok"}));
  ExternalClassifier pool(s, Opts({"ok"}, std::chrono::milliseconds(5000), 3));
  pool.Start();
  std::vector<ValueVector> points;
  ForEachPoint(*s, [&](const ValueVector& v) {
    points.push_back(v);
    return true;
  });
  std::vector<Label> expected;
  for (const auto& v : points) expected.push_back(single.Classify(v));
  std::atomic<int> mismatches{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int r = 0; r < 5; ++r) {
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (pool.Classify(points[i]) != expected[i]) ++mismatches;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(mismatches.load(), 0);
  EXPECT_EQ(pool.queries(), 4u * 5u * points.size());
}

TEST(External, ShellCommandWrapsWithExec) {
  auto argv = ShellCommand("python3 x.py ok");
  ASSERT_EQ(argv.size(), 3u);
  EXPECT_EQ(argv[0], "/bin/sh");
  EXPECT_EQ(argv[2], "exec python3 x.py ok");
}

}  // namespace
}  // namespace cfx
