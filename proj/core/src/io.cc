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

#include "cfx/io.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cfx/error.h"

namespace cfx::io {
namespace {

using Json = nlohmann::ordered_json;

Json ParseJson(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                std::string("malformed ") + what + " JSON: " + e.what());
  }
}

template <typename Fn>
auto Guard(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("unexpected ") + what + " layout: " + e.what());
  }
}

Json StatsJson(const SearchStats& s) {
  return Json{{"classifier_calls", s.classifier_calls},
              {"levels_explored", s.levels_explored},
              {"inadmissible", s.inadmissible},
              {"pruned", s.pruned}};
}

Json ValuesJson(const FeatureSchema& schema, const ValueVector& values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    out[schema.feature(i).name] = schema.ValueName(i, values[i]);
  }
  return out;
}

Json EntityJson(const FeatureSchema& schema, const Entity& e) {
  return Json{{"id", e.id}, {"values", ValuesJson(schema, e.values)}};
}

Json ExplanationJson(const FeatureSchema& schema, const Explanation& x) {
  Json changed = Json::object();
  for (const FeatureValue& fv : x.changed) {
    changed[schema.feature(fv.feature).name] =
        schema.ValueName(fv.feature, fv.value);
  }
  return Json{{"changed", changed},
              {"counterfactual", ValuesJson(schema, x.counterfactual.values)},
              {"cardinality", x.cardinality()}};
}

Json RationalJson(Json& into, const Rational& r) {
  into["score"] = FormatRational(r);
  into["score_decimal"] = ToDouble(r);
  return into;
}

std::size_t HeaderIndex(const std::vector<std::string>& header,
                        const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return header.size();
}

std::vector<std::size_t> FeatureColumns(const FeatureSchema& schema,
                                        const std::vector<std::string>& header) {
  std::vector<std::size_t> cols;
  for (const Feature& f : schema.features()) {
    std::size_t c = HeaderIndex(header, f.name);
    if (c == header.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "CSV header lacks feature column '" + f.name + "'");
    }
    cols.push_back(c);
  }
  std::set<std::string> seen;
  for (const std::string& h : header) {
    if (!seen.insert(h).second) {
      throw Error(ErrorCode::kInvalidInput, "CSV header repeats '" + h + "'");
    }
  }
  return cols;
}

ValueVector RowValues(const FeatureSchema& schema,
                      const std::vector<std::size_t>& cols,
                      const std::vector<std::string>& row, std::size_t line) {
  std::vector<std::string> values;
  for (std::size_t c : cols) values.push_back(row[c]);
  try {
    return schema.Encode(values);
  } catch (const Error& e) {
    throw Error(e.code(), "CSV row " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write '" + path + "'");
}

SchemaPtr SchemaFromJson(std::string_view text) {
  Json j = ParseJson(text, "schema");
  return Guard("schema", [&] {
    std::vector<Feature> features;
    for (const Json& f : j.at("features")) {
      Feature feature;
      feature.name = f.at("name").get<std::string>();
      for (const Json& v : f.at("domain")) {
        feature.domain.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
      feature.ordered = f.value("ordered", false);
      features.push_back(std::move(feature));
    }
    return std::make_shared<const FeatureSchema>(std::move(features));
  });
}

std::string SchemaToJson(const FeatureSchema& schema) {
  Json features = Json::array();
  for (const Feature& f : schema.features()) {
    features.push_back(
        Json{{"name", f.name}, {"domain", f.domain}, {"ordered", f.ordered}});
  }
  return Json{{"features", features}}.dump();
}

Entity EntityFromJson(const FeatureSchema& schema, std::string_view text) {
  Json j = ParseJson(text, "entity");
  return Guard("entity", [&] {
    std::string id = j.value("id", std::string("e"));
    std::vector<std::string> values;
    const Json& v = j.at("values");
    if (v.is_object()) {
      for (const Feature& f : schema.features()) {
        if (!v.contains(f.name)) {
          throw Error(ErrorCode::kInvalidInput,
                      "entity lacks a value for '" + f.name + "'");
        }
        const Json& x = v.at(f.name);
        values.push_back(x.is_string() ? x.get<std::string>() : x.dump());
      }
      if (v.size() != schema.size()) {
        throw Error(ErrorCode::kInvalidInput, "entity names unknown features");
      }
    } else {
      for (const Json& x : v) {
        values.push_back(x.is_string() ? x.get<std::string>() : x.dump());
      }
    }
    return MakeEntity(schema, std::move(id), values);
  });
}

std::string EntityToJson(const FeatureSchema& schema, const Entity& entity) {
  return EntityJson(schema, entity).dump();
}

std::vector<Entity> EntitiesFromCsv(const FeatureSchema& schema,
                                    std::string_view text) {
  auto rows = ParseCsv(text);
  if (rows.empty()) throw Error(ErrorCode::kInvalidInput, "CSV has no header");
  const auto& header = rows[0];
  std::vector<std::size_t> cols = FeatureColumns(schema, header);
  std::size_t id_col = HeaderIndex(header, "id");
  std::vector<Entity> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorCode::kParse,
                  "CSV row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    Entity e;
    e.id = id_col < header.size() ? rows[r][id_col] : "e" + std::to_string(r);
    e.values = RowValues(schema, cols, rows[r], r + 1);
    out.push_back(std::move(e));
  }
  return out;
}

std::shared_ptr<const TableClassifier> TableFromCsv(SchemaPtr schema,
                                                    std::string_view text) {
  auto rows = ParseCsv(text);
  if (rows.empty()) throw Error(ErrorCode::kInvalidInput, "CSV has no header");
  const auto& header = rows[0];
  std::vector<std::size_t> cols = FeatureColumns(*schema, header);
  std::size_t label_col = HeaderIndex(header, "label");
  if (label_col == header.size()) {
    throw Error(ErrorCode::kInvalidInput, "CSV header lacks a 'label' column");
  }
  std::vector<TableClassifier::Row> table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorCode::kParse,
                  "CSV row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    const std::string& label = rows[r][label_col];
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::kInvalidInput, "CSV row " + std::to_string(r + 1) +
                                                ": label must be 0 or 1, got '" +
                                                label + "'");
    }
    table.push_back({RowValues(*schema, cols, rows[r], r + 1),
                     label == "1" ? Label::kOne : Label::kZero});
  }
  return std::make_shared<const TableClassifier>(std::move(schema),
                                                 std::move(table));
}

ConstraintSet ConstraintsFromJson(const FeatureSchema& schema,
                                  std::string_view text) {
  Json j = ParseJson(text, "constraints");
  ConstraintSet cs = Guard("constraints", [&] {
    ConstraintSet out;
    auto value_of = [&](std::size_t f, const Json& v) {
      return schema.ValueIdOf(f, v.is_string() ? v.get<std::string>() : v.dump());
    };
    for (const Json& d : j.value("denials", Json::array())) {
      DenialConstraint chi;
      const Json& lits = d.is_array() ? d : d.at("literals");
      for (const Json& l : lits) {
        ConstraintLiteral lit;
        lit.feature = schema.IndexOf(l.at("feature").get<std::string>());
        lit.value = value_of(lit.feature, l.at("value"));
        std::string pol = l.value("polarity", std::string("eq"));
        if (pol == "eq") {
          lit.polarity = Polarity::kEquals;
        } else if (pol == "neq") {
          lit.polarity = Polarity::kNotEquals;
        } else {
          throw Error(ErrorCode::kInvalidInput,
                      "polarity must be 'eq' or 'neq', got '" + pol + "'");
        }
        chi.literals.push_back(lit);
      }
      out.denials.push_back(std::move(chi));
    }
    for (const Json& a : j.value("actionability", Json::array())) {
      ActionabilityRule rule;
      rule.feature = schema.IndexOf(a.at("feature").get<std::string>());
      std::string mode = a.at("mode").get<std::string>();
      bool known = false;
      for (ActionMode m : {ActionMode::kFree, ActionMode::kFixed,
                           ActionMode::kIncreaseOnly, ActionMode::kDecreaseOnly}) {
        if (mode == ActionModeName(m)) {
          rule.mode = m;
          known = true;
        }
      }
      if (!known) {
        throw Error(ErrorCode::kInvalidInput,
                    "unknown actionability mode '" + mode + "'");
      }
      out.actionability.push_back(rule);
    }
    for (const Json& g : j.value("onehot", Json::array())) {
      OneHotGroup group;
      const Json& members = g.is_array() ? g : g.at("members");
      for (const Json& m : members) {
        group.members.push_back(schema.IndexOf(m.get<std::string>()));
      }
      out.onehot.push_back(std::move(group));
    }
    for (const auto& [key, value] : j.items()) {
      if (key != "denials" && key != "actionability" && key != "onehot") {
        throw Error(ErrorCode::kInvalidInput,
                    "unknown constraints section '" + key + "'");
      }
    }
    return out;
  });
  cs.Validate(schema);
  return cs;
}

std::vector<std::vector<Rational>> MarginalsFromCsv(const FeatureSchema& schema,
                                                    std::string_view text) {
  auto rows = ParseCsv(text);
  if (rows.empty()) throw Error(ErrorCode::kInvalidInput, "CSV has no header");
  const auto& header = rows[0];
  std::size_t fc = HeaderIndex(header, "feature");
  std::size_t vc = HeaderIndex(header, "value");
  std::size_t pc = HeaderIndex(header, "probability");
  if (fc == header.size() || vc == header.size() || pc == header.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "marginals CSV needs columns feature,value,probability");
  }
  std::vector<std::vector<Rational>> out(schema.size());
  std::vector<std::vector<bool>> seen(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    out[i].assign(schema.domain_size(i), Rational(0));
    seen[i].assign(schema.domain_size(i), false);
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorCode::kParse,
                  "CSV row " + std::to_string(r + 1) + " has the wrong width");
    }
    std::size_t f = schema.IndexOf(rows[r][fc]);
    ValueId v = schema.ValueIdOf(f, rows[r][vc]);
    if (seen[f][v]) {
      throw Error(ErrorCode::kInvalidInput,
                  "marginal for " + rows[r][fc] + "=" + rows[r][vc] +
                      " is listed twice");
    }
    seen[f][v] = true;
    Rational p = ParseRational(rows[r][pc]);
    if (p < 0) {
      throw Error(ErrorCode::kInvalidInput, "negative probability on CSV row " +
                                                std::to_string(r + 1));
    }
    out[f][v] = p;
  }
  return out;
}

std::string ExplanationToJson(const FeatureSchema& schema,
                              const Explanation& explanation) {
  return ExplanationJson(schema, explanation).dump();
}

std::string SearchResultToJson(const FeatureSchema& schema,
                               const SearchResult& result) {
  Json list = Json::array();
  for (std::size_t i = 0; i < result.counterfactuals.size(); ++i) {
    Json x = ExplanationJson(schema, result.counterfactuals[i]);
    x["s_minimal"] = i < result.s_minimal.size() && result.s_minimal[i];
    x["c_minimal"] = i < result.c_minimal.size() && result.c_minimal[i];
    list.push_back(std::move(x));
  }
  Json out{{"entity", EntityJson(schema, result.original)},
           {"counterfactuals", list}};
  auto d = result.min_cardinality();
  out["min_cardinality"] = d ? Json(*d) : Json(nullptr);
  out["no_counterfactual"] = !result.has_counterfactual();
  out["exhausted"] = result.exhausted;
  out["stats"] = StatsJson(result.stats);
  return out.dump();
}

std::string ExplanationListToJson(const FeatureSchema& schema,
                                  const Entity& original,
                                  const ExplanationList& list) {
  Json xs = Json::array();
  for (const Explanation& x : list.explanations) {
    xs.push_back(ExplanationJson(schema, x));
  }
  return Json{{"entity", EntityJson(schema, original)},
              {"explanations", xs},
              {"no_counterfactual", list.no_counterfactual()},
              {"authoritative", list.authoritative},
              {"stats", StatsJson(list.stats)}}
      .dump();
}

std::string RespReportToJson(const FeatureSchema& schema,
                             const RespReport& report) {
  Json features = Json::array();
  for (const FeatureResp& fr : report.features) {
    Json f{{"feature", schema.feature(fr.feature).name},
           {"value", schema.ValueName(fr.feature,
                                      report.entity.values[fr.feature])}};
    RationalJson(f, fr.score);
    f["witness"] =
        fr.witness ? ExplanationJson(schema, *fr.witness) : Json(nullptr);
    f["counterfactual_value_explanation"] =
        fr.counterfactual_value_explanation();
    f["actual_value_explanation"] = fr.actual_value_explanation();
    features.push_back(std::move(f));
  }
  return Json{{"entity", EntityJson(schema, report.entity)},
              {"features", features},
              {"no_counterfactual", report.no_counterfactual},
              {"authoritative", report.authoritative},
              {"stats", StatsJson(report.stats)}}
      .dump();
}

std::string GlobalRespToJson(const FeatureSchema& schema, std::size_t feature,
                             const Entity& entity, const GlobalResp& resp) {
  Json out{{"entity", EntityJson(schema, entity)},
           {"feature", schema.feature(feature).name},
           {"value", schema.ValueName(feature, entity.values[feature])}};
  RationalJson(out, resp.score);
  if (resp.witness) {
    Json gamma = Json::object();
    for (std::size_t k = 0; k < resp.witness->features.size(); ++k) {
      std::size_t f = resp.witness->features[k];
      gamma[schema.feature(f).name] = schema.ValueName(f, resp.witness->values[k]);
    }
    out["contingency"] = gamma;
  } else {
    out["contingency"] = nullptr;
  }
  out["truncated"] = resp.truncated;
  out["zero_mass_skipped"] = resp.zero_mass_skipped;
  out["classifier_calls"] = resp.classifier_calls;
  return out.dump();
}

std::string CipSectionsToJson(const CipProgram& program) {
  Json sections = Json::array();
  for (const CipSection& s : program.sections) {
    sections.push_back(Json{{"name", s.name},
                            {"first_line", s.first_line},
                            {"last_line", s.last_line}});
  }
  return Json{{"sections", sections}}.dump();
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t i = 0;
  int line = 1;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  };
  while (i < text.size()) {
    std::vector<std::string> row;
    bool any = false;
    while (true) {
      std::string field;
      bool quoted = false;
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      if (i < text.size() && text[i] == '"') {
        quoted = true;
        ++i;
        while (true) {
          if (i >= text.size()) {
            throw Error(ErrorCode::kParse,
                        "unterminated quote on CSV line " + std::to_string(line));
          }
          if (text[i] == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          field += text[i++];
        }
        while (i < text.size() && text[i] != ',' && text[i] != '\n') {
          if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
            throw Error(ErrorCode::kParse, "text after closing quote on CSV line " +
                                               std::to_string(line));
          }
          ++i;
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n') {
          field += text[i++];
        }
        field = trim(std::move(field));
      }
      any = any || quoted || !field.empty();
      row.push_back(std::move(field));
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i < text.size() && text[i] == '\n') {
      ++i;
      ++line;
    }
    if (any || row.size() > 1) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cfx::io
