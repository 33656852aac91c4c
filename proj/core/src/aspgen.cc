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

#include "cfx/aspgen.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cfx/error.h"

namespace cfx {
namespace {

std::string Join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

class Emitter {
 public:
  Emitter(const Classifier& classifier, const Entity& entity,
          const CipOptions& options)
      : classifier_(Unwrap(classifier)),
        schema_(classifier.schema()),
        entity_(entity),
        opts_(options),
        n_(schema_.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
      std::string v = n_ <= 3 ? std::string(1, "XYZ"[i])
                              : "X" + std::to_string(i + 1);
      vars_.push_back(v);
      primes_.push_back(v + "p");
    }
    entity_const_ = RenderConstant(entity.id.empty() ? "e" : entity.id);
  }

  CipProgram Run() {
    schema_.CheckConforms(entity_.values);
    if (opts_.embedding == ClassifierEmbedding::kExternalStub &&
        opts_.dialect != Dialect::kAspCore2) {
      throw Error(ErrorCode::kInvalidInput,
                  "the external-stub embedding needs the asp-core-2 dialect");
    }
    opts_.hard_constraints.Validate(schema_);
    const bool dlv = opts_.dialect == Dialect::kDlvComplex;

    if (dlv) Section("header", {"#include<ListAndSet>"});
    Section("facts", FactLines());
    if (opts_.embedding != ClassifierEmbedding::kFacts) {
      Section("classifier", ClassifierRules());
    }
    Section("transition", {"ent(E," + Args(vars_) + ",tr) :- ent(E," +
                               Args(vars_) + ",o).",
                           "ent(E," + Args(vars_) + ",tr) :- ent(E," +
                               Args(vars_) + ",do)."});
    std::string p3 = InterventionRule();
    if (opts_.shift) p3 = ShiftDisjunctiveRules(p3);
    Section("intervention", SplitLines(p3));
    Section("choice", ChoiceRules());
    Section("stop", {"ent(E," + Args(vars_) + ",s) :- ent(E," + Args(vars_) +
                     ",do), cls(" + Args(vars_) + "," + Label0() + ")."});
    Section("program-constraints",
            {":- ent(E," + Args(vars_) + ",do), ent(E," + Args(vars_) + ",o).",
             "entAux(E) :- ent(E," + Args(vars_) + ",s).",
             ":- ent(E," + Args(vars_) + ",o), not entAux(E)."});
    Section("expl", ExplRules());
    Section("hard-constraints", HardConstraints());
    if (opts_.include_count) {
      Section("count", {std::string("invResp(E,M) :- #count{I: expl(E,I,_)} = M, ") +
                        (dlv ? "#int(M), " : "") + "E = " + entity_const_ + "."});
    }
    if (opts_.include_weak) Section("weak", WeakConstraints());
    return std::move(program_);
  }

 private:
  static std::string Label0() { return "0"; }

  static std::vector<std::string> SplitLines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
  }

  void Section(const std::string& name, const std::vector<std::string>& lines) {
    if (lines.empty()) return;
    if (!program_.text.empty()) {
      program_.text += '\n';
      ++line_;
    }
    CipSection s{name, line_ + 1, line_ + static_cast<int>(lines.size())};
    for (const std::string& l : lines) {
      program_.text += l;
      program_.text += '\n';
      ++line_;
    }
    program_.sections.push_back(s);
  }

  static std::string Args(const std::vector<std::string>& terms) {
    return Join(terms, ",");
  }

  std::string Value(std::size_t feature, ValueId v) const {
    return RenderConstant(schema_.ValueName(feature, v));
  }

  std::vector<std::string> FactLines() const {
    std::vector<std::string> lines;
    if (opts_.embedding == ClassifierEmbedding::kFacts) {
      const auto* table = dynamic_cast<const TableClassifier*>(&classifier_);
      if (table == nullptr || !table->IsTotal()) {
        throw Error(ErrorCode::kInvalidInput,
                    "the facts embedding needs a total table classifier");
      }
      std::string line;
      std::size_t on_line = 0;
      for (const TableClassifier::Row& row : table->rows()) {
        std::vector<std::string> args;
        for (std::size_t i = 0; i < n_; ++i) args.push_back(Value(i, row.values[i]));
        args.push_back(std::to_string(ToInt(row.label)));
        if (on_line) line += ' ';
        line += "cls(" + Args(args) + ").";
        if (++on_line == 5) {
          lines.push_back(std::move(line));
          line.clear();
          on_line = 0;
        }
      }
      if (on_line) lines.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      std::string line;
      for (ValueId v = 0; v < schema_.domain_size(i); ++v) {
        if (v) line += ' ';
        line += "dom" + std::to_string(i + 1) + "(" + Value(i, v) + ").";
      }
      lines.push_back(std::move(line));
    }
    std::vector<std::string> args{entity_const_};
    for (std::size_t i = 0; i < n_; ++i) args.push_back(Value(i, entity_.values[i]));
    args.push_back("o");
    lines.push_back("ent(" + Args(args) + ").");
    return lines;
  }

  std::string Dom(std::size_t i, const std::string& var) const {
    return "dom" + std::to_string(i + 1) + "(" + var + ")";
  }

  std::vector<std::string> AllDoms() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(Dom(i, vars_[i]));
    return out;
  }

  // Equalities in rule order followed by domain atoms for the free variables.
  std::vector<std::string> MatchBody(const Rule& rule) const {
    std::vector<std::string> body;
    std::vector<bool> bound(n_, false);
    for (const RuleAtom& a : rule.atoms) {
      body.push_back(vars_[a.feature] + " = " + Value(a.feature, a.value));
      bound[a.feature] = true;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (!bound[i]) body.push_back(Dom(i, vars_[i]));
    }
    return body;
  }

  std::vector<std::string> ClassifierRules() const {
    std::vector<std::string> lines;
    const std::string head_args = Args(vars_);
    if (opts_.embedding == ClassifierEmbedding::kExternalStub) {
      std::vector<std::string> body{"&classifier(" + head_args + ";L)"};
      for (const std::string& d : AllDoms()) body.push_back(d);
      lines.push_back("cls(" + head_args + ",L) :- " + Join(body, ", ") + ".");
      return lines;
    }
    const auto* rules = dynamic_cast<const RuleClassifier*>(&classifier_);
    if (rules == nullptr) {
      throw Error(ErrorCode::kInvalidInput,
                  "the rules embedding needs a rule classifier");
    }
    const int fallback = ToInt(rules->fallback());
    bool uniform = !rules->rules().empty();
    for (const Rule& r : rules->rules()) {
      uniform = uniform && ToInt(r.label) != fallback;
    }
    if (uniform) {
      const std::string label = std::to_string(1 - fallback);
      for (const Rule& r : rules->rules()) {
        lines.push_back("cls(" + head_args + "," + label + ") :- " +
                        Join(MatchBody(r), ", ") + ".");
      }
      std::vector<std::string> body = AllDoms();
      body.push_back("not cls(" + head_args + "," + label + ")");
      lines.push_back("cls(" + head_args + "," + std::to_string(fallback) +
                      ") :- " + Join(body, ", ") + ".");
      return lines;
    }
    // First-match semantics with mixed labels.
    const std::size_t k = rules->rules().size();
    auto match = [&](std::size_t r) {
      return "match" + std::to_string(r + 1) + "(" + head_args + ")";
    };
    for (std::size_t r = 0; r < k; ++r) {
      lines.push_back(match(r) + " :- " +
                      Join(MatchBody(rules->rules()[r]), ", ") + ".");
    }
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<std::string> body{match(r)};
      for (std::size_t q = 0; q < r; ++q) body.push_back("not " + match(q));
      lines.push_back("cls(" + head_args + "," +
                      std::to_string(ToInt(rules->rules()[r].label)) + ") :- " +
                      Join(body, ", ") + ".");
    }
    std::vector<std::string> body = AllDoms();
    for (std::size_t r = 0; r < k; ++r) body.push_back("not " + match(r));
    lines.push_back("cls(" + head_args + "," + std::to_string(fallback) +
                    ") :- " + Join(body, ", ") + ".");
    return lines;
  }

  std::vector<std::string> WithPrime(std::size_t i) const {
    std::vector<std::string> args = vars_;
    args[i] = primes_[i];
    return args;
  }

  std::string InterventionRule() const {
    const char* sep = opts_.dialect == Dialect::kDlvComplex ? " v " : " | ";
    std::vector<std::string> heads;
    for (std::size_t i = 0; i < n_; ++i) {
      heads.push_back("ent(E," + Args(WithPrime(i)) + ",do)");
    }
    std::vector<std::string> body{"ent(E," + Args(vars_) + ",tr)",
                                  "cls(" + Args(vars_) + ",1)"};
    for (std::size_t i = 0; i < n_; ++i) body.push_back(Dom(i, primes_[i]));
    for (std::size_t i = 0; i < n_; ++i) {
      body.push_back(vars_[i] + " != " + primes_[i]);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      body.push_back("chosen" + std::to_string(i + 1) + "(" + Args(vars_) +
                     "," + primes_[i] + ")");
    }
    return Join(heads, sep) + " :- " + Join(body, ", ") + ".\n";
  }

  std::vector<std::string> ChoiceRules() const {
    std::vector<std::string> lines;
    const std::string a = Args(vars_);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::string k = std::to_string(i + 1);
      lines.push_back("chosen" + k + "(" + a + ",U) :- ent(E," + a +
                      ",tr), cls(" + a + ",1), " + Dom(i, "U") + ", U != " +
                      vars_[i] + ", not diffchoice" + k + "(" + a + ",U).");
      lines.push_back("diffchoice" + k + "(" + a + ",U) :- chosen" + k + "(" +
                      a + ",Up), U != Up, " + Dom(i, "U") + ".");
    }
    return lines;
  }

  std::string ExplKeyOf(std::size_t i) const {
    if (opts_.expl_key == ExplKey::kIndex) return std::to_string(i + 1);
    std::string name = schema_.feature(i).name;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    return RenderConstant(name);
  }

  std::string OriginalAndFinal() const {
    return "ent(E," + Args(vars_) + ",o), ent(E," + Args(primes_) + ",s)";
  }

  std::vector<std::string> ExplRules() const {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < n_; ++i) {
      lines.push_back("expl(E," + ExplKeyOf(i) + "," + vars_[i] + ") :- " +
                      OriginalAndFinal() + ", " + vars_[i] + " != " +
                      primes_[i] + ".");
    }
    return lines;
  }

  std::vector<std::string> WeakConstraints() const {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < n_; ++i) {
      std::string line = ":~ " + OriginalAndFinal() + ", " + vars_[i] +
                         " != " + primes_[i] + ".";
      if (opts_.dialect == Dialect::kAspCore2) {
        line += " [1@1," + std::to_string(i + 1) + "]";
      }
      lines.push_back(std::move(line));
    }
    return lines;
  }

  std::vector<std::string> HardConstraints() const {
    std::vector<std::string> lines;
    const ConstraintSet& cs = opts_.hard_constraints;
    for (const DenialConstraint& chi : cs.denials) {
      std::vector<std::vector<const ConstraintLiteral*>> per(n_);
      for (const ConstraintLiteral& lit : chi.literals) per[lit.feature].push_back(&lit);
      std::vector<std::string> args;
      std::vector<std::string> tests;
      for (std::size_t i = 0; i < n_; ++i) {
        if (per[i].size() == 1 && per[i][0]->polarity == Polarity::kEquals) {
          args.push_back(Value(i, per[i][0]->value));
          continue;
        }
        args.push_back(vars_[i]);
        for (const ConstraintLiteral* lit : per[i]) {
          tests.push_back(vars_[i] +
                          (lit->polarity == Polarity::kEquals ? " = " : " != ") +
                          Value(i, lit->value));
        }
      }
      std::vector<std::string> body{"ent(E," + Args(args) + ",tr)"};
      body.insert(body.end(), tests.begin(), tests.end());
      lines.push_back(":- " + Join(body, ", ") + ".");
    }
    for (const ActionabilityRule& rule : cs.actionability) {
      const std::size_t i = rule.feature;
      const std::string both =
          "ent(E," + Args(vars_) + ",o), ent(E," + Args(primes_) + ",tr)";
      switch (rule.mode) {
        case ActionMode::kFree:
          break;
        case ActionMode::kFixed:
          lines.push_back(":- " + both + ", " + vars_[i] + " != " + primes_[i] +
                          ".");
          break;
        case ActionMode::kIncreaseOnly:
        case ActionMode::kDecreaseOnly: {
          const std::string rank = "rank" + std::to_string(i + 1);
          std::string facts;
          for (ValueId v = 0; v < schema_.domain_size(i); ++v) {
            if (v) facts += ' ';
            facts += rank + "(" + Value(i, v) + "," + std::to_string(v) + ").";
          }
          lines.push_back(std::move(facts));
          lines.push_back(":- " + both + ", " + rank + "(" + vars_[i] +
                          ",R), " + rank + "(" + primes_[i] + ",Rp), Rp " +
                          (rule.mode == ActionMode::kIncreaseOnly ? "<" : ">") +
                          " R.");
          break;
        }
      }
    }
    for (const OneHotGroup& group : cs.onehot) {
      auto pinned = [&](const std::vector<std::pair<std::size_t, const char*>>& fix) {
        std::vector<std::string> args = vars_;
        for (const auto& [f, v] : fix) {
          args[f] = Value(f, *schema_.FindValue(f, v));
        }
        return ":- ent(E," + Args(args) + ",tr).";
      };
      for (std::size_t a = 0; a < group.members.size(); ++a) {
        for (std::size_t b = a + 1; b < group.members.size(); ++b) {
          lines.push_back(pinned({{group.members[a], "1"}, {group.members[b], "1"}}));
        }
      }
      std::vector<std::pair<std::size_t, const char*>> zeros;
      for (std::size_t m : group.members) zeros.push_back({m, "0"});
      lines.push_back(pinned(zeros));
    }
    return lines;
  }

  const Classifier& classifier_;
  const FeatureSchema& schema_;
  const Entity& entity_;
  CipOptions opts_;
  std::size_t n_;
  std::vector<std::string> vars_;
  std::vector<std::string> primes_;
  std::string entity_const_;
  CipProgram program_;
  int line_ = 0;
};

bool IsLowerIdentifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return s != "not" && s != "v";
}

bool IsNatural(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

}  // namespace

CipProgram EmitCip(const Classifier& classifier, const Entity& entity,
                   const CipOptions& options) {
  return Emitter(classifier, entity, options).Run();
}

std::string ShiftDisjunctiveRules(std::string_view program) {
  std::vector<asp::Statement> statements = asp::Parse(program);
  std::string out;
  std::size_t cursor = 0;
  for (const asp::Statement& st : statements) {
    if (st.head.size() < 2) continue;
    out.append(program.substr(cursor, st.begin - cursor));
    for (std::size_t i = 0; i < st.head.size(); ++i) {
      std::vector<std::string> negs;
      for (std::size_t j = 0; j < st.head.size(); ++j) {
        if (j != i) negs.push_back("not " + st.head[j].text);
      }
      if (i) out += '\n';
      out += st.head[i].text + " :-";
      if (st.body.empty()) {
        out += " " + Join(negs, ", ");
      } else {
        out += st.body_text + ", " + Join(negs, ", ");
      }
      out += '.';
    }
    cursor = st.end;
  }
  out.append(program.substr(cursor));
  return out;
}

std::string RenderConstant(std::string_view value) {
  for (unsigned char c : value) {
    if (c < 0x20 || c == 0x7f) {
      throw Error(ErrorCode::kInvalidInput,
                  "value contains a control character and cannot be rendered "
                  "as a solver constant");
    }
  }
  if (IsLowerIdentifier(value) || IsNatural(value)) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string ParseConstant(std::string_view token) {
  if (token.size() < 2 || token.front() != '"' || token.back() != '"') {
    return std::string(token);
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < token.size(); ++i) {
    if (token[i] == '\\' && i + 2 < token.size()) ++i;
    out += token[i];
  }
  return out;
}

const char* DialectName(Dialect dialect) {
  switch (dialect) {
    case Dialect::kDlvComplex:
      return "dlv-complex";
    case Dialect::kAspCore2:
      return "asp-core-2";
  }
  return "unknown";
}

const char* EmbeddingName(ClassifierEmbedding embedding) {
  switch (embedding) {
    case ClassifierEmbedding::kFacts:
      return "facts";
    case ClassifierEmbedding::kRules:
      return "rules";
    case ClassifierEmbedding::kExternalStub:
      return "external-stub";
  }
  return "unknown";
}

}  // namespace cfx
