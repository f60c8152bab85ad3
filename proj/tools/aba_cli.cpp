// Copyright (c) 2026, The aba authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// `aba` command line tool. Everything goes through the C API in aba/aba.h.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aba/aba.h"

namespace {

using nlohmann::json;

struct ContextDeleter {
  void operator()(aba_context *ctx) const { aba_context_free(ctx); }
};
struct ResultDeleter {
  void operator()(aba_result *r) const { aba_result_free(r); }
};
using Context = std::unique_ptr<aba_context, ContextDeleter>;
using Result = std::unique_ptr<aba_result, ResultDeleter>;

struct PropertyArgs {
  std::string validity;
  std::string table;
  int n = 4;
  int ts = 1;
  int ta = 0;
  std::string setup = "pki";
  int values = 2;
};

void add_property_options(CLI::App *cmd, PropertyArgs &a) {
  cmd->add_option("--validity", a.validity,
                  "strong, weak, it-strong, interval:<lo>:<hi> or clique:<omega>");
  cmd->add_option("--table", a.table, "JSON table defining a custom property");
  cmd->add_option("--n", a.n, "number of parties")->required();
  cmd->add_option("--ts", a.ts, "synchronous corruption bound")->required();
  cmd->add_option("--ta", a.ta, "asynchronous corruption bound")->required();
  cmd->add_option("--setup", a.setup, "pki or none")
      ->check(CLI::IsMember({"pki", "none"}, CLI::ignore_case));
  cmd->add_option("--values", a.values, "input domain size for catalog properties")
      ->check(CLI::Range(1, 64));
}

std::string property_request(const PropertyArgs &a) {
  json doc = {{"params", {{"n", a.n}, {"ts", a.ts}, {"ta", a.ta}, {"setup", a.setup}}},
              {"values", a.values}};
  if (!a.validity.empty()) doc["validity"] = a.validity;
  if (!a.table.empty()) doc["table"] = std::filesystem::absolute(a.table).string();
  return doc.dump();
}

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::string scalar(const json &v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// Top-level scalars as "key  value" rows, arrays of flat objects as tables,
// anything else as indented JSON.
void render_pretty(std::ostream &os, const json &doc) {
  if (!doc.is_object()) {
    os << doc.dump(2) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto &[k, v] : doc.items()) width = std::max(width, k.size());
  for (const auto &[k, v] : doc.items()) {
    if (v.is_primitive()) {
      os << k << std::string(width + 2 - k.size(), ' ') << scalar(v) << "\n";
    }
  }
  for (const auto &[k, v] : doc.items()) {
    if (v.is_primitive()) continue;
    os << "\n" << k << ":\n";
    const bool table = v.is_array() && !v.empty() && v.front().is_object();
    if (!table) {
      if (v.is_object() && std::all_of(v.begin(), v.end(),
                                       [](const json &x) { return x.is_primitive(); })) {
        for (const auto &[kk, vv] : v.items())
          os << "  " << kk << " = " << scalar(vv) << "\n";
      } else {
        os << v.dump(2) << "\n";
      }
      continue;
    }
    std::vector<std::string> cols;
    for (const auto &row : v)
      for (const auto &[c, _] : row.items())
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    std::vector<std::size_t> widths(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      widths[i] = cols[i].size();
      for (const auto &row : v)
        if (row.contains(cols[i]))
          widths[i] = std::max(widths[i], scalar(row[cols[i]]).size());
    }
    auto cell = [&](const std::string &s, std::size_t i) {
      os << "  " << s << std::string(widths[i] - s.size(), ' ');
    };
    for (std::size_t i = 0; i < cols.size(); ++i) cell(cols[i], i);
    os << "\n";
    for (const auto &row : v) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        cell(row.contains(cols[i]) ? scalar(row[cols[i]]) : "-", i);
      os << "\n";
    }
  }
}

void emit(const std::string &text, bool pretty) {
  if (text.empty()) return;
  if (pretty) {
    render_pretty(std::cout, json::parse(text));
  } else {
    std::cout << text << "\n";
  }
}

int finish(aba_status status, const Result &r) {
  const char *err = aba_result_error(r.get());
  if (*err) std::cerr << "aba: " << err << "\n";
  return static_cast<int>(status);
}

// Loads a scenario or attack file; relative references resolve next to it.
std::optional<std::string> load_document(aba_context *ctx, const std::string &path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "aba: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  auto dir = std::filesystem::absolute(path).parent_path().string();
  aba_context_set_base_dir(ctx, dir.c_str());
  return text;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Network-agnostic Byzantine agreement: solvability checker, "
               "simulator and attack demonstrations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aba_version()));

  bool pretty = false;
  std::uint64_t budget_configs = 0, budget_pairs = 0;
  app.add_flag("--pretty", pretty, "human-readable rendering instead of JSON");
  app.add_option("--max-configs", budget_configs,
                 "enumeration cap on input configurations (overrides ABA_BUDGET)");
  app.add_option("--max-pair-checks", budget_pairs,
                 "cap on similarity pair checks (overrides ABA_BUDGET)");

  PropertyArgs check_args;
  auto *check = app.add_subcommand("check", "decide solvability of a validity property");
  add_property_options(check, check_args);

  PropertyArgs cert_args;
  std::string cert_out;
  auto *cert = app.add_subcommand("certificate", "write the similarity certificate");
  add_property_options(cert, cert_args);
  cert->add_option("--out,-o", cert_out, "output file (stdout when omitted)");

  std::string run_path, run_trace, run_out;
  std::optional<std::uint64_t> run_seed;
  auto *run = app.add_subcommand("run", "run one scenario");
  run->add_option("scenario", run_path, "scenario JSON file")->required();
  run->add_option("--trace", run_trace, "write the JSONL trace to this file");
  run->add_option("--seed", run_seed, "override the scenario seed");
  run->add_option("--out,-o", run_out, "write the summary to this file");

  std::string fuzz_path;
  int fuzz_seeds = 100;
  std::uint64_t fuzz_first = 1;
  auto *fuzz = app.add_subcommand("fuzz", "run a scenario template over many seeds");
  fuzz->add_option("scenario", fuzz_path, "scenario template JSON file")->required();
  fuzz->add_option("--seeds", fuzz_seeds, "number of seeds")->check(CLI::PositiveNumber);
  fuzz->add_option("--first-seed", fuzz_first, "first seed");

  std::string attack_path;
  auto *attack = app.add_subcommand("attack", "run a lower-bound attack demonstration");
  attack->add_option("description", attack_path, "attack JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ABA_CONFIG;
  }

  if (const char *env = std::getenv("ABA_BUDGET"); env && *env && budget_configs == 0) {
    std::string text(env);
    bool ok = !text.empty() &&
              text.find_first_not_of("0123456789:") == std::string::npos &&
              text.front() != ':' && text.back() != ':';
    if (!ok) {
      std::cerr << "aba: ABA_BUDGET must look like <configs> or <configs>:<pairs>\n";
      return ABA_CONFIG;
    }
  }

  Context ctx(aba_context_create());
  if (!ctx) return ABA_INTERNAL;
  if (budget_configs || budget_pairs) {
    if (aba_context_set_budget(ctx.get(), budget_configs ? budget_configs : 5'000'000,
                               budget_pairs ? budget_pairs : 1'000'000'000) != ABA_OK)
      return ABA_CONFIG;
  }

  aba_result *raw = nullptr;
  aba_status status = ABA_INTERNAL;

  if (*check) {
    status = aba_check(ctx.get(), property_request(check_args).c_str(), &raw);
    Result r(raw);
    emit(aba_result_json(r.get()), pretty);
    return finish(status, r);
  }

  if (*cert) {
    status = aba_certificate(ctx.get(), property_request(cert_args).c_str(), &raw);
    Result r(raw);
    if (status == ABA_OK) {
      std::string text = aba_result_json(r.get());
      if (cert_out.empty()) {
        emit(text, pretty);
      } else if (!write_file(cert_out, json::parse(text).dump(2) + "\n")) {
        std::cerr << "aba: cannot write '" << cert_out << "'\n";
        return ABA_CONFIG;
      }
    } else if (status == ABA_UNSOLVABLE) {
      std::cerr << aba_result_json(r.get()) << "\n";
    }
    return finish(status, r);
  }

  if (*run) {
    auto text = load_document(ctx.get(), run_path);
    if (!text) return ABA_CONFIG;
    if (run_seed) {
      try {
        json doc = json::parse(*text);
        doc["seed"] = *run_seed;
        *text = doc.dump();
      } catch (const json::exception &e) {
        std::cerr << "aba: bad scenario: " << e.what() << "\n";
        return ABA_CONFIG;
      }
    }
    status = aba_run(ctx.get(), text->c_str(), &raw);
    Result r(raw);
    if (!run_trace.empty() && *aba_result_trace(r.get()) &&
        !write_file(run_trace, aba_result_trace(r.get()))) {
      std::cerr << "aba: cannot write '" << run_trace << "'\n";
      return ABA_CONFIG;
    }
    if (run_out.empty()) {
      emit(aba_result_json(r.get()), pretty);
    } else if (*aba_result_json(r.get())) {
      write_file(run_out, std::string(aba_result_json(r.get())) + "\n");
    }
    return finish(status, r);
  }

  if (*fuzz) {
    auto text = load_document(ctx.get(), fuzz_path);
    if (!text) return ABA_CONFIG;
    status = aba_fuzz(ctx.get(), text->c_str(), fuzz_seeds, fuzz_first, &raw);
    Result r(raw);
    emit(aba_result_json(r.get()), pretty);
    return finish(status, r);
  }

  if (*attack) {
    auto text = load_document(ctx.get(), attack_path);
    if (!text) return ABA_CONFIG;
    status = aba_attack(ctx.get(), text->c_str(), &raw);
    Result r(raw);
    emit(aba_result_json(r.get()), pretty);
    return finish(status, r);
  }
  return ABA_INTERNAL;
}
