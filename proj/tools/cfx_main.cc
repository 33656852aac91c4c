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

// cfx: counterfactual explanations, responsibility scores and ASP emission
// for classifiers over categorical features.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfx/asp_syntax.h"
#include "cfx/aspgen.h"
#include "cfx/classify.h"
#include "cfx/constrain.h"
#include "cfx/distribution.h"
#include "cfx/error.h"
#include "cfx/external.h"
#include "cfx/io.h"
#include "cfx/rule_dsl.h"
#include "cfx/schema.h"
#include "cfx/score.h"
#include "cfx/search.h"

namespace {

using Json = nlohmann::ordered_json;

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitNoCounterfactual = 3,
  kExitBackend = 4,
};

struct Args {
  std::string command;
  std::string schema;
  std::string entity;
  std::string values;
  std::string table;
  std::string rules;
  std::string external;
  std::string constraints;
  std::optional<std::size_t> max_card;
  std::optional<std::uint64_t> budget;
  unsigned jobs = 1;
  std::string prob;
  std::string condition;
  std::string feature;
  std::optional<std::size_t> max_contingency;
  std::string dialect = "dlv-complex";
  bool weak = false;
  bool count = false;
  bool shift = false;
  std::string embedding;
  std::string expl_key = "index";
  std::string out;
  std::string format;
  std::string mode = "levelwise";
  std::string program;
};

struct Loaded {
  cfx::SchemaPtr schema;
  cfx::ClassifierPtr backend;
  std::shared_ptr<const cfx::MemoClassifier> memo;
  std::optional<cfx::Entity> entity;
  cfx::ConstraintSet constraints;
  bool external = false;
};

int ExitFor(cfx::ErrorCode code) {
  switch (code) {
    case cfx::ErrorCode::kBackend:
    case cfx::ErrorCode::kNondeterminism:
      return kExitBackend;
    default:
      return kExitInput;
  }
}

std::chrono::milliseconds ExternalTimeout() {
  const char* env = std::getenv("CFX_EXTERNAL_TIMEOUT_MS");
  if (env == nullptr || *env == '\0') return std::chrono::milliseconds(5000);
  char* end = nullptr;
  long ms = std::strtol(env, &end, 10);
  if (*end != '\0' || ms <= 0) {
    throw cfx::Error(cfx::ErrorCode::kInvalidInput,
                     "CFX_EXTERNAL_TIMEOUT_MS must be a positive integer");
  }
  return std::chrono::milliseconds(ms);
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

Loaded Load(const Args& a, bool need_classifier, bool need_entity) {
  Loaded l;
  l.schema = cfx::io::SchemaFromJson(cfx::io::ReadFile(a.schema));
  int sources = !a.table.empty() + !a.rules.empty() + !a.external.empty();
  if (sources > 1) {
    throw CLI::ValidationError("--table, --rules and --external are exclusive");
  }
  if (need_classifier && sources == 0) {
    throw CLI::ValidationError("one of --table, --rules or --external is required");
  }
  if (!a.table.empty()) {
    auto table = cfx::io::TableFromCsv(l.schema, cfx::io::ReadFile(a.table));
    if (!table->IsTotal()) {
      std::cerr << "cfx: table covers " << table->covered() << " of "
                << l.schema->ProductSize() << " entities\n";
    }
    l.backend = table;
  } else if (!a.rules.empty()) {
    l.backend = cfx::ParseRules(cfx::io::ReadFile(a.rules), l.schema);
  } else if (!a.external.empty()) {
    cfx::ExternalClassifier::Options opts;
    opts.argv = cfx::ShellCommand(a.external);
    opts.timeout = ExternalTimeout();
    opts.processes = static_cast<int>(std::max(1u, a.jobs));
    l.backend = std::make_shared<const cfx::ExternalClassifier>(l.schema, opts);
    l.external = true;
  }
  if (l.backend) l.memo = std::make_shared<const cfx::MemoClassifier>(l.backend);
  if (need_entity) {
    if (!a.entity.empty() && !a.values.empty()) {
      throw CLI::ValidationError("--entity and --values are exclusive");
    }
    if (!a.entity.empty()) {
      l.entity = cfx::io::EntityFromJson(*l.schema, cfx::io::ReadFile(a.entity));
    } else if (!a.values.empty()) {
      l.entity = cfx::MakeEntity(*l.schema, "e", SplitComma(a.values));
    } else {
      throw CLI::ValidationError("one of --entity or --values is required");
    }
  }
  if (!a.constraints.empty()) {
    l.constraints =
        cfx::io::ConstraintsFromJson(*l.schema, cfx::io::ReadFile(a.constraints));
  }
  return l;
}

cfx::SearchConfig MakeSearchConfig(const Args& a, const Loaded& l) {
  cfx::SearchConfig c;
  c.max_cardinality = a.max_card;
  c.budget = a.budget;
  if (!c.budget && l.external) c.budget = 10000;
  c.jobs = std::max(1u, a.jobs);
  c.mode = a.mode == "exhaustive" ? cfx::SearchMode::kExhaustiveOracle
                                  : cfx::SearchMode::kLevelwise;
  c.Validate(*l.schema);
  return c;
}

Json Manifest(const Args& a, const Loaded& l, double wall_ms) {
  Json inputs = Json::object();
  auto add = [&](const char* key, const std::string& v) {
    if (!v.empty()) inputs[key] = v;
  };
  add("schema", a.schema);
  add("entity", a.entity);
  add("values", a.values);
  add("table", a.table);
  add("rules", a.rules);
  add("external", a.external);
  add("constraints", a.constraints);
  add("prob", a.prob);
  add("condition", a.condition);
  add("program", a.program);
  Json config = Json::object();
  config["max_card"] = a.max_card ? Json(*a.max_card) : Json(nullptr);
  config["budget"] = a.budget ? Json(*a.budget) : Json(nullptr);
  config["jobs"] = a.jobs;
  config["mode"] = a.mode;
  if (a.command == "emit-asp") {
    config["dialect"] = a.dialect;
    config["weak"] = a.weak;
    config["count"] = a.count;
    config["shift"] = a.shift;
    config["classifier"] = a.embedding;
    config["expl_key"] = a.expl_key;
  }
  Json m{{"command", a.command},
         {"inputs", inputs},
         {"config", config},
         {"version", CFX_VERSION}};
  m["classifier_calls"] = l.memo ? l.memo->backend_calls() : 0;
  m["wall_time_ms"] = wall_ms;
  return m;
}

std::string Pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Renders rows as space-aligned columns.
std::string Table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 == row.size() ? row[i] : Pad(row[i], widths[i]) + "  ";
    }
    out += line + "\n";
  }
  return out;
}

std::string ChangedText(const Json& changed) {
  std::string s;
  for (const auto& [k, v] : changed.items()) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.get<std::string>();
  }
  return s.empty() ? "-" : s;
}

std::string ValuesText(const Json& values) {
  std::string s;
  for (const auto& [k, v] : values.items()) {
    if (!s.empty()) s += ",";
    s += v.get<std::string>();
  }
  return "(" + s + ")";
}

void Emit(const Args& a, Json payload, const Loaded& l, double wall_ms,
          const std::string& table_text) {
  if (a.format == "table") {
    std::cout << table_text;
    return;
  }
  payload["manifest"] = Manifest(a, l, wall_ms);
  std::cout << payload.dump(2) << "\n";
}

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int CmdExplain(const Args& a) {
  auto t0 = Clock::now();
  Loaded l = Load(a, true, true);
  cfx::SearchConfig config = MakeSearchConfig(a, l);
  cfx::SearchResult r =
      cfx::EnumerateCounterfactuals(*l.memo, *l.entity, l.constraints, config);
  Json payload = Json::parse(cfx::io::SearchResultToJson(*l.schema, r));
  std::vector<std::vector<std::string>> rows{
      {"#", "card", "changed", "counterfactual", "s-min", "c-min"}};
  std::size_t i = 0;
  for (const Json& x : payload["counterfactuals"]) {
    rows.push_back({std::to_string(++i), std::to_string(x["cardinality"].get<int>()),
                    ChangedText(x["changed"]), ValuesText(x["counterfactual"]),
                    x["s_minimal"].get<bool>() ? "yes" : "no",
                    x["c_minimal"].get<bool>() ? "yes" : "no"});
  }
  std::string text = "entity " + l.entity->id + " " +
                     ValuesText(payload["entity"]["values"]) + "\n" + Table(rows);
  if (!r.has_counterfactual()) text += "no counterfactual exists\n";
  if (!r.exhausted) text += "search truncated by --max-card or --budget\n";
  Emit(a, std::move(payload), l, Since(t0), text);
  if (!r.has_counterfactual()) {
    std::cerr << "cfx: no counterfactual exists for entity '" << l.entity->id
              << "'\n";
    return kExitNoCounterfactual;
  }
  return kExitOk;
}

cfx::DistributionPtr MakeDistribution(const Args& a, const Loaded& l) {
  cfx::DistributionPtr d;
  const std::string& p = a.prob;
  auto file_of = [&](const char* prefix) {
    std::string f = p.substr(std::string(prefix).size());
    if (f.empty()) {
      throw CLI::ValidationError(std::string("--prob ") + prefix + " needs a FILE");
    }
    return f;
  };
  if (p == "uniform") {
    d = cfx::Distribution::Uniform(l.schema);
  } else if (p.rfind("product:", 0) == 0) {
    d = cfx::Distribution::Product(
        l.schema,
        cfx::io::MarginalsFromCsv(*l.schema, cfx::io::ReadFile(file_of("product:"))));
  } else if (p.rfind("empirical:", 0) == 0) {
    auto sample =
        cfx::io::EntitiesFromCsv(*l.schema, cfx::io::ReadFile(file_of("empirical:")));
    std::vector<cfx::ValueVector> points;
    for (const cfx::Entity& e : sample) points.push_back(e.values);
    d = cfx::Distribution::Empirical(l.schema, points);
  } else {
    throw CLI::ValidationError(
        "--prob must be uniform, product:FILE or empirical:FILE");
  }
  if (!a.condition.empty()) {
    cfx::ConstraintSet chi =
        cfx::io::ConstraintsFromJson(*l.schema, cfx::io::ReadFile(a.condition));
    d = cfx::Distribution::Conditioned(d, chi.denials);
  }
  return d;
}

int CmdScore(const Args& a) {
  auto t0 = Clock::now();
  Loaded l = Load(a, true, true);
  if (a.prob.empty()) {
    if (!a.condition.empty()) {
      throw CLI::ValidationError("--condition needs --prob");
    }
    cfx::SearchConfig config = MakeSearchConfig(a, l);
    cfx::RespReport report =
        cfx::XResp(*l.memo, *l.entity, l.constraints, config);
    Json payload = Json::parse(cfx::io::RespReportToJson(*l.schema, report));
    std::vector<std::vector<std::string>> rows{{"feature", "value", "x-resp"}};
    for (const Json& f : payload["features"]) {
      rows.push_back({f["feature"].get<std::string>(), f["value"].get<std::string>(),
                      f["score"].get<std::string>()});
    }
    std::string text = Table(rows);
    if (report.no_counterfactual) text += "no counterfactual exists\n";
    Emit(a, std::move(payload), l, Since(t0), text);
    if (report.no_counterfactual) {
      std::cerr << "cfx: no counterfactual exists for entity '" << l.entity->id
                << "'\n";
      return kExitNoCounterfactual;
    }
    return kExitOk;
  }
  if (!l.constraints.empty()) {
    throw CLI::ValidationError(
        "--constraints applies to x-resp; use --condition with --prob");
  }
  cfx::DistributionPtr d = MakeDistribution(a, l);
  std::vector<std::size_t> features;
  if (!a.feature.empty()) {
    features.push_back(l.schema->IndexOf(a.feature));
  } else {
    for (std::size_t i = 0; i < l.schema->size(); ++i) features.push_back(i);
  }
  cfx::GlobalRespConfig config;
  config.max_contingency = a.max_contingency;
  Json list = Json::array();
  std::vector<std::vector<std::string>> rows{{"feature", "value", "resp", "contingency"}};
  for (std::size_t f : features) {
    cfx::GlobalResp g = cfx::GlobalRespScore(*l.memo, *d, *l.entity, f, config);
    Json j = Json::parse(cfx::io::GlobalRespToJson(*l.schema, f, *l.entity, g));
    j.erase("entity");
    std::string gamma = "-";
    if (!j["contingency"].is_null()) gamma = ChangedText(j["contingency"]);
    rows.push_back({j["feature"].get<std::string>(), j["value"].get<std::string>(),
                    j["score"].get<std::string>(), gamma});
    list.push_back(std::move(j));
  }
  Json payload{{"entity", Json::parse(cfx::io::EntityToJson(*l.schema, *l.entity))},
               {"distribution", d->Describe()},
               {"features", list}};
  Emit(a, std::move(payload), l, Since(t0), Table(rows));
  return kExitOk;
}

int CmdEmitAsp(const Args& a) {
  auto t0 = Clock::now();
  Loaded l = Load(a, false, true);
  cfx::CipOptions opts;
  if (a.dialect == "dlv-complex") {
    opts.dialect = cfx::Dialect::kDlvComplex;
  } else if (a.dialect == "asp-core-2" || a.dialect == "asp-core-2-external") {
    opts.dialect = cfx::Dialect::kAspCore2;
  } else {
    throw CLI::ValidationError("unknown dialect '" + a.dialect + "'");
  }
  std::string embedding = a.embedding;
  if (embedding.empty()) {
    embedding = !a.rules.empty() ? "rules"
                : !a.external.empty() || a.dialect == "asp-core-2-external"
                    ? "external-stub"
                    : "facts";
  }
  if (embedding == "facts") {
    opts.embedding = cfx::ClassifierEmbedding::kFacts;
  } else if (embedding == "rules") {
    opts.embedding = cfx::ClassifierEmbedding::kRules;
  } else if (embedding == "external-stub") {
    opts.embedding = cfx::ClassifierEmbedding::kExternalStub;
  } else {
    throw CLI::ValidationError("unknown classifier embedding '" + embedding + "'");
  }
  if (opts.embedding != cfx::ClassifierEmbedding::kExternalStub && !l.backend) {
    throw CLI::ValidationError("--table or --rules is required for this embedding");
  }
  opts.include_weak = a.weak;
  opts.include_count = a.count;
  opts.shift = a.shift;
  opts.expl_key = a.expl_key == "name" ? cfx::ExplKey::kName : cfx::ExplKey::kIndex;
  opts.hard_constraints = l.constraints;

  // Placeholder classifier for the external stub; only its schema is read.
  std::shared_ptr<const cfx::Classifier> source = l.backend;
  if (!source) {
    source = std::make_shared<const cfx::RuleClassifier>(
        l.schema, std::vector<cfx::Rule>{}, cfx::Label::kZero);
  }
  cfx::CipProgram program = cfx::EmitCip(*source, *l.entity, opts);
  if (a.out.empty()) {
    std::cout << program.text;
    return kExitOk;
  }
  cfx::io::WriteFile(a.out, program.text);
  Json payload = Json::parse(cfx::io::CipSectionsToJson(program));
  payload["out"] = a.out;
  std::vector<std::vector<std::string>> rows{{"section", "lines"}};
  for (const cfx::CipSection& s : program.sections) {
    rows.push_back({s.name, std::to_string(s.first_line) + "-" +
                                std::to_string(s.last_line)});
  }
  Emit(a, std::move(payload), l, Since(t0), Table(rows));
  return kExitOk;
}

int CmdClassify(const Args& a) {
  auto t0 = Clock::now();
  Loaded l = Load(a, true, true);
  cfx::Label label = cfx::Classify(*l.memo, *l.entity);
  if (a.format == "json") {
    Json payload{{"entity", Json::parse(cfx::io::EntityToJson(*l.schema, *l.entity))},
                 {"label", cfx::ToInt(label)}};
    Emit(a, std::move(payload), l, Since(t0), "");
  } else {
    std::cout << cfx::ToInt(label) << "\n";
  }
  return kExitOk;
}

int CmdLint(const Args& a) {
  std::vector<cfx::asp::Diagnostic> diags =
      cfx::asp::Lint(cfx::io::ReadFile(a.program));
  for (const cfx::asp::Diagnostic& d : diags) {
    std::cout << a.program << ":" << d.line << ": "
              << cfx::asp::DiagnosticKindName(d.kind) << ": " << d.message << "\n";
  }
  return diags.empty() ? kExitOk : kExitInput;
}

void AddInputs(CLI::App* sub, Args& a) {
  sub->add_option("--schema", a.schema, "Feature schema (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--entity", a.entity, "Entity to explain (JSON)")
      ->check(CLI::ExistingFile);
  sub->add_option("--values", a.values, "Entity values, comma separated");
  auto* table = sub->add_option("--table", a.table, "Classifier as a CSV table")
                    ->check(CLI::ExistingFile);
  auto* rules = sub->add_option("--rules", a.rules, "Classifier as a rule list")
                    ->check(CLI::ExistingFile);
  auto* ext = sub->add_option("--external", a.external,
                              "Classifier as a line-protocol command");
  table->excludes(rules)->excludes(ext);
  rules->excludes(ext);
  sub->add_option("--constraints", a.constraints, "Constraint set (JSON)")
      ->check(CLI::ExistingFile);
  sub->add_option("--jobs", a.jobs, "Worker threads and external processes")
      ->check(CLI::Range(1u, 256u));
}

void AddSearch(CLI::App* sub, Args& a) {
  sub->add_option("--max-card", a.max_card, "Largest intervention size");
  sub->add_option("--budget", a.budget, "Cap on classifier calls");
  sub->add_option("--mode", a.mode, "Search strategy")
      ->check(CLI::IsMember({"levelwise", "exhaustive"}));
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"Counterfactual explanations and responsibility scores"};
  app.set_version_flag("--version", std::string(CFX_VERSION));
  app.require_subcommand(1);

  auto* explain = app.add_subcommand("explain", "Enumerate counterfactual explanations");
  AddInputs(explain, a);
  AddSearch(explain, a);

  auto* score = app.add_subcommand("score", "Responsibility scores");
  AddInputs(score, a);
  AddSearch(score, a);
  score->add_option("--prob", a.prob,
                    "uniform | product:FILE | empirical:FILE (probabilistic score)");
  score->add_option("--condition", a.condition, "Denial constraints to condition on")
      ->check(CLI::ExistingFile);
  score->add_option("--feature", a.feature, "Score a single feature");
  score->add_option("--max-contingency", a.max_contingency,
                    "Bound on the contingency size");

  auto* emit = app.add_subcommand("emit-asp", "Write the counterfactual intervention program");
  AddInputs(emit, a);
  emit->add_option("--dialect", a.dialect, "dlv-complex | asp-core-2")
      ->check(CLI::IsMember({"dlv-complex", "asp-core-2", "asp-core-2-external"}));
  emit->add_flag("--weak", a.weak, "Add weak constraints");
  emit->add_flag("--count", a.count, "Add the invResp count rule");
  emit->add_flag("--shift", a.shift, "Replace the disjunctive rule by shifted rules");
  emit->add_option("--classifier", a.embedding, "facts | rules | external-stub")
      ->check(CLI::IsMember({"facts", "rules", "external-stub"}));
  emit->add_option("--expl-key", a.expl_key, "index | name")
      ->check(CLI::IsMember({"index", "name"}));
  emit->add_option("--out", a.out, "Program file to write");

  auto* classify = app.add_subcommand("classify", "Label one entity");
  AddInputs(classify, a);

  auto* lint = app.add_subcommand("lint", "Check an ASP program");
  lint->add_option("program", a.program, "Program file")
      ->required()
      ->check(CLI::ExistingFile);

  for (CLI::App* sub : {explain, score, emit, classify}) {
    sub->add_option("--format", a.format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (explain->parsed()) {
      a.command = "explain";
      if (a.format.empty()) a.format = "json";
      return CmdExplain(a);
    }
    if (score->parsed()) {
      a.command = "score";
      if (a.format.empty()) a.format = "json";
      return CmdScore(a);
    }
    if (emit->parsed()) {
      a.command = "emit-asp";
      if (a.format.empty()) a.format = "json";
      return CmdEmitAsp(a);
    }
    if (classify->parsed()) {
      a.command = "classify";
      return CmdClassify(a);
    }
    a.command = "lint";
    return CmdLint(a);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "cfx: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cfx::Error& e) {
    std::cerr << "cfx: " << cfx::ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e.code());
  }
}
