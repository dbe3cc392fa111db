// Copyright 2026 The ctrlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctrlgame/json_io.h"

#include <set>
#include <utility>

#include "ctrlgame/dsl.h"
#include "ctrlgame/error.h"

namespace ctrlgame {

using nlohmann::json;

json ModelToJson(const ModelSpec& spec) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = spec.name;
  json scale = json::array();
  for (const auto& [label, value] : spec.scale.labels()) {
    scale.push_back({{"label", label}, {"value", value}});
  }
  doc["scale"] = std::move(scale);
  doc["assets"] = spec.assets;
  doc["objectives"] = spec.objectives;
  json controls = json::array();
  for (const auto& c : spec.controls) {
    json payoff = json::array();
    for (const auto& p : c.payoff) {
      json entry = {{"asset", p.cell.asset}, {"objective", p.cell.objective}};
      if (p.eff.label) {
        entry["label"] = *p.eff.label;
      } else {
        entry["value"] = p.eff.value;
      }
      payoff.push_back(std::move(entry));
    }
    controls.push_back(
        {{"id", c.id.str()}, {"name", c.name}, {"cost", c.cost}, {"payoff", std::move(payoff)}});
  }
  doc["controls"] = std::move(controls);
  doc["family"] = PrintTerm(spec.family);
  json requirements = json::array();
  for (const auto& r : spec.requirements) {
    requirements.push_back({{"antecedent", PrintTermAtom(r.antecedent)},
                            {"consequent", PrintTermAtom(r.consequent)}});
  }
  doc["requirements"] = std::move(requirements);
  doc["budget"] = spec.budget;
  json profiles = json::array();
  for (const auto& p : spec.profiles) {
    json stages = json::array();
    for (const auto& stage : p.stages) {
      json cells = json::array();
      for (const auto& cell : stage.cells) cells.push_back(cell.key());
      stages.push_back(std::move(cells));
    }
    profiles.push_back({{"name", p.name}, {"objectives", std::move(stages)}});
  }
  doc["profiles"] = std::move(profiles);
  return doc;
}

namespace {

// Thrown on the first structural violation; carries the JSON path.
struct SchemaError {
  std::string path;
  std::string code;
  std::string message;
};

class Reader {
 public:
  std::vector<Diagnostic>& diagnostics() { return diags_; }

  void Error(const std::string& path, std::string code, std::string message) {
    diags_.push_back({Severity::kError, {0, 0, path}, std::move(message), std::move(code)});
  }

  static const json& Object(const json& j, const std::string& path,
                            std::initializer_list<const char*> allowed,
                            std::initializer_list<const char*> required) {
    if (!j.is_object()) throw SchemaError{path, "type", "expected object"};
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items()) {
      if (!keys.count(k)) throw SchemaError{path + "." + k, "unknown-key", "unknown key '" + k + "'"};
    }
    for (const char* k : required) {
      if (!j.contains(k)) {
        throw SchemaError{path + "." + k, "missing-key", std::string("missing key '") + k + "'"};
      }
    }
    return j;
  }

  static const json& Array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError{path, "type", "expected array"};
    return j;
  }

  static std::string String(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError{path, "type", "expected string"};
    return j.get<std::string>();
  }

  static double Number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError{path, "type", "expected number"};
    return j.get<double>();
  }

  static Term TermAt(const json& j, const std::string& path) {
    const std::string text = String(j, path);
    try {
      return ParseTerm(text);
    } catch (const TermSyntaxError& e) {
      throw SchemaError{path, e.code(),
                        std::string(e.what()) + " (column " + std::to_string(e.column()) + ")"};
    }
  }

  static Cell CellAt(const json& j, const std::string& path) {
    const std::string key = String(j, path);
    const auto dot = key.find('.');
    if (dot == std::string::npos || key.find('.', dot + 1) != std::string::npos) {
      throw SchemaError{path, "syntax", "expected \"asset.objective\""};
    }
    return {key.substr(0, dot), key.substr(dot + 1)};
  }

  ModelSpec Read(const json& doc) {
    Object(doc, "$",
           {"schema_version", "name", "scale", "assets", "objectives", "controls", "family",
            "requirements", "budget", "profiles"},
           {"name", "assets", "objectives", "controls", "family", "budget", "profiles"});
    if (doc.contains("schema_version")) {
      const double v = Number(doc["schema_version"], "$.schema_version");
      if (v != kSchemaVersion) {
        throw SchemaError{"$.schema_version", "schema-version",
                          "unsupported schema version " + FormatNumber(v)};
      }
    }
    ModelSpec spec;
    spec.name = String(doc["name"], "$.name");
    if (doc.contains("scale")) {
      std::vector<std::pair<std::string, double>> labels;
      const auto& arr = Array(doc["scale"], "$.scale");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = "$.scale[" + std::to_string(i) + "]";
        Object(arr[i], p, {"label", "value"}, {"label", "value"});
        labels.emplace_back(String(arr[i]["label"], p + ".label"),
                            Number(arr[i]["value"], p + ".value"));
      }
      try {
        spec.scale = EffScale(std::move(labels));
      } catch (const ModelError& e) {
        throw SchemaError{"$.scale", e.code(), e.what()};
      }
    }
    spec.assets = Strings(doc["assets"], "$.assets");
    spec.objectives = Strings(doc["objectives"], "$.objectives");

    const auto& controls = Array(doc["controls"], "$.controls");
    for (std::size_t i = 0; i < controls.size(); ++i) {
      const std::string p = "$.controls[" + std::to_string(i) + "]";
      const auto& c = Object(controls[i], p, {"id", "name", "cost", "payoff"}, {"id", "name", "cost"});
      ControlSpec control;
      control.id = ControlId(String(c["id"], p + ".id"));
      control.name = String(c["name"], p + ".name");
      control.cost = Number(c["cost"], p + ".cost");
      if (c.contains("payoff")) {
        const auto& payoff = Array(c["payoff"], p + ".payoff");
        for (std::size_t j = 0; j < payoff.size(); ++j) {
          const std::string pp = p + ".payoff[" + std::to_string(j) + "]";
          const auto& e = Object(payoff[j], pp, {"asset", "objective", "label", "value"},
                                 {"asset", "objective"});
          PayoffEntry entry;
          entry.cell = {String(e["asset"], pp + ".asset"), String(e["objective"], pp + ".objective")};
          if (e.contains("label") == e.contains("value")) {
            throw SchemaError{pp, "payoff-entry", "payoff entry needs exactly one of 'label' or 'value'"};
          }
          if (e.contains("label")) {
            entry.eff.label = String(e["label"], pp + ".label");
            if (auto v = spec.scale.lookup(*entry.eff.label)) {
              entry.eff.value = *v;
            } else {
              Error(pp + ".label", "unknown-label", "unknown scale label '" + *entry.eff.label + "'");
            }
          } else {
            entry.eff.value = Number(e["value"], pp + ".value");
          }
          control.payoff.push_back(std::move(entry));
        }
      }
      spec.controls.push_back(std::move(control));
    }

    spec.family = TermAt(doc["family"], "$.family");
    if (doc.contains("requirements")) {
      const auto& reqs = Array(doc["requirements"], "$.requirements");
      for (std::size_t i = 0; i < reqs.size(); ++i) {
        const std::string p = "$.requirements[" + std::to_string(i) + "]";
        Object(reqs[i], p, {"antecedent", "consequent"}, {"antecedent", "consequent"});
        spec.requirements.push_back(
            {TermAt(reqs[i]["antecedent"], p + ".antecedent"),
             TermAt(reqs[i]["consequent"], p + ".consequent")});
      }
    }
    spec.budget = Number(doc["budget"], "$.budget");

    const auto& profiles = Array(doc["profiles"], "$.profiles");
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const std::string p = "$.profiles[" + std::to_string(i) + "]";
      Object(profiles[i], p, {"name", "objectives"}, {"name", "objectives"});
      AttackerProfile profile;
      profile.name = String(profiles[i]["name"], p + ".name");
      const auto& stages = Array(profiles[i]["objectives"], p + ".objectives");
      for (std::size_t s = 0; s < stages.size(); ++s) {
        const std::string sp = p + ".objectives[" + std::to_string(s) + "]";
        const auto& cells = Array(stages[s], sp);
        AttackerObjective ao;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          ao.cells.push_back(CellAt(cells[k], sp + "[" + std::to_string(k) + "]"));
        }
        profile.stages.push_back(std::move(ao));
      }
      spec.profiles.push_back(std::move(profile));
    }
    return spec;
  }

 private:
  static std::vector<std::string> Strings(const json& j, const std::string& path) {
    const auto& arr = Array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(String(arr[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::vector<Diagnostic> diags_;
};

}  // namespace

LoadResult ModelFromJson(const json& doc) {
  LoadResult result;
  Reader reader;
  try {
    ModelSpec spec = reader.Read(doc);
    result.diagnostics = std::move(reader.diagnostics());
    if (HasErrors(result.diagnostics)) return result;
    auto extra = Validate(spec);
    const bool failed = HasErrors(extra);
    result.diagnostics.insert(result.diagnostics.end(), extra.begin(), extra.end());
    if (!failed) result.model = std::move(spec);
  } catch (const SchemaError& e) {
    result.diagnostics.push_back({Severity::kError, {0, 0, e.path}, e.message, e.code});
  }
  return result;
}

LoadResult ModelFromJsonText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    LoadResult r;
    r.diagnostics.push_back({Severity::kError, {0, 0, "$"}, e.what(), "syntax"});
    return r;
  }
  return ModelFromJson(doc);
}

}  // namespace ctrlgame
