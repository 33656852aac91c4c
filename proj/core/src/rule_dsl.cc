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

#include "cfx/rule_dsl.h"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "cfx/error.h"

namespace cfx {
namespace {

struct Word {
  std::string text;
  int column;  // 1-based
};

// Splits one line into words; `=` is always a word of its own and `#` ends
// the line.
std::vector<Word> SplitLine(std::string_view line) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '=') {
      words.push_back({"=", static_cast<int>(i + 1)});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != '=' && line[i] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    words.push_back({std::string(line.substr(start, i - start)),
                     static_cast<int>(start + 1)});
  }
  return words;
}

class LineParser {
 public:
  LineParser(const FeatureSchema& schema, std::vector<Word> words, int line,
             int end_column)
      : schema_(schema), words_(std::move(words)), line_(line),
        end_column_(end_column) {}

  bool AtEnd() const { return pos_ >= words_.size(); }
  const std::string& Peek() const { return words_[pos_].text; }

  [[noreturn]] void Fail(const std::string& message) const {
    int col = AtEnd() ? end_column_ : words_[pos_].column;
    throw ParseError(line_, col, message);
  }

  void Expect(const std::string& keyword) {
    if (AtEnd() || Peek() != keyword) {
      Fail("expected '" + keyword + "'" +
           (AtEnd() ? std::string(" at end of line")
                    : ", found '" + Peek() + "'"));
    }
    ++pos_;
  }

  Label ParseLabel() {
    if (AtEnd()) Fail("expected label 0 or 1 at end of line");
    const std::string& t = Peek();
    if (t != "0" && t != "1") Fail("expected label 0 or 1, found '" + t + "'");
    ++pos_;
    return t == "0" ? Label::kZero : Label::kOne;
  }

  RuleAtom ParseAtom() {
    if (AtEnd()) Fail("expected feature name");
    const Word& name = words_[pos_];
    if (!IsIdent(name.text)) Fail("expected feature name, found '" + name.text + "'");
    auto feature = schema_.Find(name.text);
    if (!feature) Fail("unknown feature '" + name.text + "'");
    ++pos_;
    Expect("=");
    if (AtEnd()) Fail("expected a value for '" + name.text + "'");
    const Word& value = words_[pos_];
    auto v = schema_.FindValue(*feature, value.text);
    if (!v) {
      Fail("value '" + value.text + "' is not in the domain of '" +
           name.text + "'");
    }
    ++pos_;
    return RuleAtom{*feature, *v};
  }

  void ExpectEnd() {
    if (!AtEnd()) Fail("unexpected '" + Peek() + "'");
  }

 private:
  static bool IsIdent(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
      return false;
    }
    for (char c : s) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
          c != '-' && c != '.') {
        return false;
      }
    }
    return true;
  }

  const FeatureSchema& schema_;
  std::vector<Word> words_;
  std::size_t pos_ = 0;
  int line_;
  int end_column_;
};

}  // namespace

std::shared_ptr<const RuleClassifier> ParseRules(std::string_view text,
                                                 SchemaPtr schema) {
  std::vector<Rule> rules;
  std::optional<Label> fallback;
  int line_no = 0;
  int last_line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    last_line = line_no;
    auto words = SplitLine(line);
    if (!words.empty()) {
      LineParser p(*schema, std::move(words), line_no,
                   static_cast<int>(line.size() + 1));
      if (fallback) p.Fail("nothing may follow the default clause");
      if (p.Peek() == "default") {
        p.Expect("default");
        fallback = p.ParseLabel();
        p.ExpectEnd();
      } else {
        p.Expect("if");
        Rule rule;
        rule.atoms.push_back(p.ParseAtom());
        while (!p.AtEnd() && p.Peek() == "and") {
          p.Expect("and");
          rule.atoms.push_back(p.ParseAtom());
        }
        p.Expect("then");
        rule.label = p.ParseLabel();
        p.ExpectEnd();
        rules.push_back(std::move(rule));
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (!fallback) {
    throw ParseError(last_line, 1, "missing 'default <label>' clause");
  }
  return std::make_shared<const RuleClassifier>(std::move(schema),
                                                std::move(rules), *fallback);
}

}  // namespace cfx
