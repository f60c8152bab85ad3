/*
 * Copyright (c) 2026, The aba authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include "aba/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include <json.hpp>

namespace aba {

namespace {

// Output index for each input index, matched by label.
std::vector<int> input_to_output(const Domain &domain, const char *who) {
  std::vector<int> map;
  for (const auto &label : domain.input_values()) {
    auto out = domain.find_output(label);
    if (!out)
      throw Error(ErrorCode::kDomainMismatch,
                  std::string(who) + ": input value '" + label +
                      "' is not an output value");
    map.push_back(*out);
  }
  return map;
}

int parse_int(std::string_view text, const std::string &what) {
  int value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::kConfig, "bad integer in " + what);
  return value;
}

}  // namespace

ValidityProperty strong_validity(const Domain &domain) {
  auto map = input_to_output(domain, "strong");
  const int outputs = domain.output_size();
  return {"strong", [map, outputs](const SystemParams &,
                                   const InputConfiguration &config) {
            int v = 0;
            if (config.is_unanimous(&v)) return OutputSet::single(map[v]);
            return OutputSet::all(outputs);
          }};
}

ValidityProperty weak_validity(const Domain &domain) {
  auto map = input_to_output(domain, "weak");
  const int outputs = domain.output_size();
  return {"weak", [map, outputs](const SystemParams &params,
                                 const InputConfiguration &config) {
            int v = 0;
            if (config.is_maximal(params.n) && config.is_unanimous(&v))
              return OutputSet::single(map[v]);
            return OutputSet::all(outputs);
          }};
}

ValidityProperty intrusion_tolerant_strong(const Domain &domain) {
  auto map = input_to_output(domain, "it-strong");
  if (domain.output_size() != domain.input_size() + 1)
    throw Error(ErrorCode::kDomainMismatch,
                "it-strong: output domain must be inputs plus one bottom value");
  int bottom = -1;
  for (int o = 0; o < domain.output_size(); ++o)
    if (std::find(map.begin(), map.end(), o) == map.end()) bottom = o;
  return {"it-strong", [map, bottom](const SystemParams &,
                                     const InputConfiguration &config) {
            int v = 0;
            if (config.is_unanimous(&v)) return OutputSet::single(map[v]);
            OutputSet allowed = OutputSet::single(bottom);
            for (const auto &a : config.assignments()) allowed.insert(map[a.value]);
            return allowed;
          }};
}

Domain interval_domain(IntervalDomainSpec spec) {
  if (spec.lo > spec.hi)
    throw Error(ErrorCode::kInvalidArgument, "interval requires lo <= hi");
  std::vector<std::string> labels;
  for (int v = spec.lo; v <= spec.hi; ++v) labels.push_back(std::to_string(v));
  return Domain(labels, labels);
}

ValidityProperty interval_hull(IntervalDomainSpec spec) {
  if (spec.lo > spec.hi)
    throw Error(ErrorCode::kInvalidArgument, "interval requires lo <= hi");
  // Input and output index i both stand for lo + i.
  return {"interval:" + std::to_string(spec.lo) + ":" + std::to_string(spec.hi),
          [](const SystemParams &, const InputConfiguration &config) {
            int lo = OutputSet::kMaxValues, hi = -1;
            for (const auto &a : config.assignments()) {
              lo = std::min(lo, a.value);
              hi = std::max(hi, a.value);
            }
            OutputSet allowed;
            for (int v = lo; v <= hi; ++v) allowed.insert(v);
            return allowed;
          }};
}

Domain clique_domain(CliqueHullSpec spec) {
  if (spec.omega < 2 || spec.omega > 26)
    throw Error(ErrorCode::kInvalidArgument, "clique size must lie in [2, 26]");
  std::vector<std::string> labels;
  for (int v = 0; v < spec.omega; ++v) labels.push_back(std::string(1, 'a' + v));
  return Domain(labels, labels);
}

ValidityProperty clique_hull(CliqueHullSpec spec) {
  clique_domain(spec);
  return {"clique:" + std::to_string(spec.omega),
          [](const SystemParams &, const InputConfiguration &config) {
            OutputSet hull;
            for (const auto &a : config.assignments()) hull.insert(a.value);
            return hull;
          }};
}

ValidityProperty constant_validity(const Domain &domain, int output) {
  if (output < 0 || output >= domain.output_size())
    throw Error(ErrorCode::kInvalidArgument, "constant outside output domain");
  return {"const:" + domain.output_label(output),
          [output](const SystemParams &, const InputConfiguration &) {
            return OutputSet::single(output);
          }};
}

CatalogEntry catalog_lookup(std::string_view name, int value_count) {
  if (value_count < 1 || value_count > OutputSet::kMaxValues - 1)
    throw Error(ErrorCode::kConfig, "value count out of range");
  if (name == "strong") {
    Domain d = Domain::numeric(value_count);
    return {strong_validity(d), d};
  }
  if (name == "weak") {
    Domain d = Domain::numeric(value_count);
    return {weak_validity(d), d};
  }
  if (name == "it-strong") {
    Domain numeric = Domain::numeric(value_count);
    auto outputs = numeric.input_values();
    outputs.push_back("bot");
    Domain d(numeric.input_values(), outputs);
    return {intrusion_tolerant_strong(d), d};
  }
  const std::string text(name);
  if (text.rfind("interval:", 0) == 0) {
    auto rest = std::string_view(text).substr(9);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::kConfig, "expected interval:<lo>:<hi>");
    IntervalDomainSpec spec{parse_int(rest.substr(0, colon), text),
                            parse_int(rest.substr(colon + 1), text)};
    if (spec.lo > spec.hi || spec.hi - spec.lo >= OutputSet::kMaxValues)
      throw Error(ErrorCode::kConfig, "interval bounds out of range");
    return {interval_hull(spec), interval_domain(spec)};
  }
  if (text.rfind("clique:", 0) == 0) {
    CliqueHullSpec spec{parse_int(std::string_view(text).substr(7), text)};
    if (spec.omega < 2 || spec.omega > 26)
      throw Error(ErrorCode::kConfig, "clique size must lie in [2, 26]");
    return {clique_hull(spec), clique_domain(spec)};
  }
  throw Error(ErrorCode::kConfig, "unknown validity property '" + text + "'");
}

CatalogEntry load_table_property(std::string_view json_text, std::string name) {
  try {
    auto doc = nlohmann::json::parse(json_text);
    Domain domain(doc.at("input_values").get<std::vector<std::string>>(),
                  doc.at("output_values").get<std::vector<std::string>>());
    auto to_set = [&](const nlohmann::json &labels) {
      OutputSet set;
      for (const auto &label : labels) {
        auto idx = domain.find_output(label.get<std::string>());
        if (!idx)
          throw Error(ErrorCode::kConfig,
                      "table references unknown output '" +
                          label.get<std::string>() + "'");
        set.insert(*idx);
      }
      return set;
    };
    OutputSet fallback = to_set(doc.at("default"));
    std::map<InputConfiguration, OutputSet> table;
    if (doc.contains("table"))
      for (const auto &[key, labels] : doc.at("table").items())
        table[InputConfiguration::decode(key, domain)] = to_set(labels);
    return {{std::move(name),
             [table = std::move(table), fallback](const SystemParams &,
                                                  const InputConfiguration &c) {
               auto it = table.find(c);
               return it == table.end() ? fallback : it->second;
             }},
            domain};
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("bad validity table: ") + e.what());
  }
}

}  // namespace aba
