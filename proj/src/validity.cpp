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

#include "aba/validity.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <set>

#include <json.hpp>

namespace aba {

const char *to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kDomainMismatch: return "DOMAIN_MISMATCH";
    case ErrorCode::kSetupUnavailable: return "SETUP_UNAVAILABLE";
    case ErrorCode::kMissingSigmaEntry: return "MISSING_SIGMA_ENTRY";
    case ErrorCode::kConfig: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

const char *to_string(Setup setup) {
  return setup == Setup::kPki ? "pki" : "none";
}

Setup parse_setup(std::string_view text) {
  if (text == "pki" || text == "PKI") return Setup::kPki;
  if (text == "none" || text == "NONE") return Setup::kNone;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown setup '" + std::string(text) + "'");
}

const char *to_string(Reason reason) {
  switch (reason) {
    case Reason::kTrivial: return "TRIVIAL";
    case Reason::kSimilarityAndNOk: return "SIMILARITY_AND_N_OK";
    case Reason::kNTooSmall: return "N_TOO_SMALL";
    case Reason::kSimilarityFails: return "SIMILARITY_FAILS";
  }
  return "UNKNOWN";
}

void SystemParams::validate() const {
  if (n < 1 || n > 30)
    throw Error(ErrorCode::kInvalidArgument, "n must lie in [1, 30]");
  if (ta < 0 || ta > ts || ts > n - 1)
    throw Error(ErrorCode::kInvalidArgument,
                "parameters must satisfy 0 <= ta <= ts <= n - 1");
}

bool resilience_bound_holds(const SystemParams &params) {
  if (params.setup == Setup::kPki) return params.n > 2 * params.ts + params.ta;
  return params.n > 3 * params.ts;
}

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(std::vector<std::string> input_values,
               std::vector<std::string> output_values)
    : inputs_(std::move(input_values)), outputs_(std::move(output_values)) {
  if (inputs_.empty() || outputs_.empty())
    throw Error(ErrorCode::kInvalidArgument, "domain lists must be non-empty");
  if (static_cast<int>(outputs_.size()) > OutputSet::kMaxValues)
    throw Error(ErrorCode::kInvalidArgument, "output domain exceeds 64 values");
  for (const auto *list : {&inputs_, &outputs_}) {
    std::set<std::string> seen(list->begin(), list->end());
    if (seen.size() != list->size())
      throw Error(ErrorCode::kInvalidArgument, "duplicate domain label");
    for (const auto &label : *list)
      if (label.empty() || label.find_first_of(";=") != std::string::npos)
        throw Error(ErrorCode::kInvalidArgument,
                    "domain labels must be non-empty and avoid ';' and '='");
  }
}

Domain Domain::numeric(int input_count) {
  std::vector<std::string> labels;
  for (int i = 0; i < input_count; ++i) labels.push_back(std::to_string(i));
  return Domain(labels, labels);
}

std::optional<int> Domain::find_input(std::string_view label) const {
  auto it = std::find(inputs_.begin(), inputs_.end(), label);
  if (it == inputs_.end()) return std::nullopt;
  return static_cast<int>(it - inputs_.begin());
}

std::optional<int> Domain::find_output(std::string_view label) const {
  auto it = std::find(outputs_.begin(), outputs_.end(), label);
  if (it == outputs_.end()) return std::nullopt;
  return static_cast<int>(it - outputs_.begin());
}

// ---------------------------------------------------------------------------
// OutputSet

OutputSet OutputSet::all(int size) {
  if (size >= kMaxValues) return OutputSet(~std::uint64_t{0});
  return OutputSet((std::uint64_t{1} << size) - 1);
}

OutputSet OutputSet::single(int value) {
  OutputSet set;
  set.insert(value);
  return set;
}

void OutputSet::insert(int value) {
  if (value < 0 || value >= kMaxValues)
    throw Error(ErrorCode::kInvalidArgument, "output index out of range");
  bits_ |= std::uint64_t{1} << value;
}

int OutputSet::count() const { return std::popcount(bits_); }

int OutputSet::smallest() const { return std::countr_zero(bits_); }

std::vector<int> OutputSet::values() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxValues; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// InputConfiguration

InputConfiguration::InputConfiguration(std::vector<Assignment> assignments)
    : assignments_(std::move(assignments)) {
  std::sort(assignments_.begin(), assignments_.end());
  for (std::size_t i = 1; i < assignments_.size(); ++i)
    if (assignments_[i].party == assignments_[i - 1].party)
      throw Error(ErrorCode::kInvalidArgument,
                  "party " + std::to_string(assignments_[i].party) +
                      " appears twice in an input configuration");
}

std::vector<int> InputConfiguration::parties() const {
  std::vector<int> out;
  out.reserve(assignments_.size());
  for (const auto &a : assignments_) out.push_back(a.party);
  return out;
}

std::uint64_t InputConfiguration::party_mask() const {
  std::uint64_t mask = 0;
  for (const auto &a : assignments_) mask |= std::uint64_t{1} << a.party;
  return mask;
}

std::optional<int> InputConfiguration::value_of(int party) const {
  auto it = std::lower_bound(assignments_.begin(), assignments_.end(),
                             Assignment{party, -1});
  if (it == assignments_.end() || it->party != party) return std::nullopt;
  return it->value;
}

bool InputConfiguration::is_unanimous(int *value) const {
  if (assignments_.empty()) return false;
  for (const auto &a : assignments_)
    if (a.value != assignments_.front().value) return false;
  if (value) *value = assignments_.front().value;
  return true;
}

bool InputConfiguration::includes(const InputConfiguration &sub) const {
  auto it = assignments_.begin();
  for (const auto &a : sub.assignments_) {
    while (it != assignments_.end() && it->party < a.party) ++it;
    if (it == assignments_.end() || it->party != a.party || it->value != a.value)
      return false;
  }
  return true;
}

bool InputConfiguration::agrees_with(const InputConfiguration &other) const {
  auto a = assignments_.begin();
  auto b = other.assignments_.begin();
  while (a != assignments_.end() && b != other.assignments_.end()) {
    if (a->party < b->party) {
      ++a;
    } else if (b->party < a->party) {
      ++b;
    } else {
      if (a->value != b->value) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

void InputConfiguration::validate(const SystemParams &params,
                                  const Domain &domain) const {
  for (const auto &a : assignments_) {
    if (a.party < 0 || a.party >= params.n)
      throw Error(ErrorCode::kInvalidArgument,
                  "party " + std::to_string(a.party) + " out of range");
    if (a.value < 0 || a.value >= domain.input_size())
      throw Error(ErrorCode::kInvalidArgument, "input value out of range");
  }
  if (static_cast<int>(size()) < params.min_config_size())
    throw Error(ErrorCode::kInvalidArgument,
                "input configuration smaller than n - ts");
}

std::string InputConfiguration::encode(const Domain &domain) const {
  std::string out;
  for (const auto &a : assignments_) {
    if (!out.empty()) out += ';';
    out += 'p';
    out += std::to_string(a.party);
    out += '=';
    out += domain.input_label(a.value);
  }
  return out;
}

InputConfiguration InputConfiguration::decode(std::string_view text,
                                              const Domain &domain) {
  std::vector<Assignment> out;
  while (!text.empty()) {
    auto end = text.find(';');
    std::string_view item = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{}
                                         : text.substr(end + 1);
    auto eq = item.find('=');
    if (item.size() < 3 || item[0] != 'p' || eq == std::string_view::npos)
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed configuration item '" + std::string(item) + "'");
    int party = -1;
    auto digits = item.substr(1, eq - 1);
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(),
                               party);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed party id in '" + std::string(item) + "'");
    auto value = domain.find_input(item.substr(eq + 1));
    if (!value)
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown input label in '" + std::string(item) + "'");
    out.push_back({party, *value});
  }
  return InputConfiguration(std::move(out));
}

// ---------------------------------------------------------------------------
// Budget

Budget Budget::from_env() {
  Budget budget;
  const char *raw = std::getenv("ABA_BUDGET");
  if (!raw || !*raw) return budget;
  std::string_view text(raw);
  auto parse = [](std::string_view part) {
    std::uint64_t value = 0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), value);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size() ||
        value == 0)
      throw Error(ErrorCode::kConfig,
                  "ABA_BUDGET must look like <configs> or <configs>:<pairs>");
    return value;
  };
  auto colon = text.find(':');
  budget.max_configs = parse(text.substr(0, colon));
  if (colon != std::string_view::npos)
    budget.max_pair_checks = parse(text.substr(colon + 1));
  return budget;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Visits configurations whose party subset passes `keep(mask, size)`, with
// parties pinned by `fixed[p] >= 0`. Subsets go by size then
// lexicographically; free values run lexicographically, last party fastest.
template <class Keep, class Visit>
void visit_configs(int n, int min_size, int value_count,
                   const std::vector<int> &fixed, Keep keep, Visit visit) {
  std::vector<Assignment> current;
  std::vector<int> combo;
  for (int k = std::max(min_size, 0); k <= n; ++k) {
    combo.resize(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (int p : combo) mask |= std::uint64_t{1} << p;
      if (keep(mask, k)) {
        current.assign(k, Assignment{});
        std::vector<int> free_slots;
        for (int i = 0; i < k; ++i) {
          current[i].party = combo[i];
          int pin = fixed.empty() ? -1 : fixed[combo[i]];
          current[i].value = pin >= 0 ? pin : 0;
          if (pin < 0) free_slots.push_back(i);
        }
        while (true) {
          visit(current);
          int j = static_cast<int>(free_slots.size()) - 1;
          while (j >= 0 && current[free_slots[j]].value == value_count - 1) {
            current[free_slots[j]].value = 0;
            --j;
          }
          if (j < 0) break;
          ++current[free_slots[j]].value;
        }
      }
      int i = k - 1;
      while (i >= 0 && combo[i] == n - k + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
}

std::vector<int> pinned_values(const InputConfiguration &config, int n) {
  std::vector<int> fixed(n, -1);
  for (const auto &a : config.assignments()) fixed.at(a.party) = a.value;
  return fixed;
}

// Builds a configuration from an already-sorted list, skipping the re-sort.
InputConfiguration from_sorted(const std::vector<Assignment> &assignments) {
  return InputConfiguration(assignments);
}

}  // namespace

std::uint64_t count_input_configs(const SystemParams &params,
                                  const Domain &domain) {
  params.validate();
  long double total = 0;
  for (int k = params.min_config_size(); k <= params.n; ++k) {
    long double term = static_cast<long double>(binomial(params.n, k));
    for (int i = 0; i < k; ++i) term *= domain.input_size();
    total += term;
  }
  if (total > 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(total);
}

std::vector<InputConfiguration> enumerate_input_configs(
    const SystemParams &params, const Domain &domain, const Budget &budget) {
  std::uint64_t count = count_input_configs(params, domain);
  if (count > budget.max_configs)
    throw Error(ErrorCode::kBudgetExceeded,
                "enumeration of " + std::to_string(count) +
                    " configurations exceeds the cap of " +
                    std::to_string(budget.max_configs));
  std::vector<InputConfiguration> out;
  out.reserve(count);
  visit_configs(params.n, params.min_config_size(), domain.input_size(), {},
                [](std::uint64_t, int) { return true; },
                [&](const std::vector<Assignment> &a) {
                  out.push_back(from_sorted(a));
                });
  return out;
}

std::vector<InputConfiguration> neighbors(const InputConfiguration &config,
                                          const SystemParams &params,
                                          const Domain &domain) {
  config.validate(params, domain);
  std::vector<InputConfiguration> out;
  visit_configs(params.n, params.min_config_size(), domain.input_size(),
                pinned_values(config, params.n),
                [](std::uint64_t, int) { return true; },
                [&](const std::vector<Assignment> &a) {
                  out.push_back(from_sorted(a));
                });
  return out;
}

namespace {

// Subsets of parties(I) carry only pinned values, so they yield exactly the
// J ⊆ I members; the remaining subsets need |J| >= n - ta.
template <class Visit>
void visit_similar(const InputConfiguration &config, const SystemParams &params,
                   const Domain &domain, Visit visit) {
  const std::uint64_t own = config.party_mask();
  const int async_floor = params.n - params.ta;
  visit_configs(params.n, params.min_config_size(), domain.input_size(),
                pinned_values(config, params.n),
                [&](std::uint64_t mask, int size) {
                  return (mask & ~own) == 0 || size >= async_floor;
                },
                visit);
}

}  // namespace

std::vector<InputConfiguration> similar(const InputConfiguration &config,
                                        const SystemParams &params,
                                        const Domain &domain) {
  config.validate(params, domain);
  std::vector<InputConfiguration> out;
  visit_similar(config, params, domain, [&](const std::vector<Assignment> &a) {
    out.push_back(from_sorted(a));
  });
  return out;
}

ValidityProperty monotone_closure(ValidityProperty property) {
  ValidityProperty closure;
  closure.name = "closure(" + property.name + ")";
  closure.evaluate = [inner = std::move(property.evaluate)](
                         const SystemParams &params,
                         const InputConfiguration &config) {
    OutputSet result = inner(params, config);
    const auto &items = config.assignments();
    std::vector<int> fixed(params.n, -1);
    for (const auto &a : items) fixed[a.party] = a.value;
    const std::uint64_t own = config.party_mask();
    visit_configs(params.n, params.min_config_size(), 1, fixed,
                  [&](std::uint64_t mask, int) { return (mask & ~own) == 0; },
                  [&](const std::vector<Assignment> &a) {
                    result &= inner(params, from_sorted(a));
                  });
    return result;
  };
  return closure;
}

// ---------------------------------------------------------------------------
// EvaluationTable

EvaluationTable::EvaluationTable(const ValidityProperty &property,
                                 const SystemParams &params,
                                 const Domain &domain, const Budget &budget)
    : radix_(domain.input_size() + 1),
      configs_(enumerate_input_configs(params, domain, budget)) {
  long double space = 1;
  for (int i = 0; i < params.n; ++i) space *= radix_;
  if (space > static_cast<long double>(std::uint64_t{1} << 26))
    throw Error(ErrorCode::kBudgetExceeded,
                "configuration code space too large for a dense table");
  values_.assign(static_cast<std::size_t>(space), OutputSet{});
  const OutputSet universe = OutputSet::all(domain.output_size());
  for (const auto &config : configs_) {
    OutputSet value = property(params, config);
    if (!value.subset_of(universe))
      throw Error(ErrorCode::kDomainMismatch,
                  property.name + " returned a value outside the output domain");
    values_[code(config)] = value;
  }
}

std::uint64_t EvaluationTable::code(const InputConfiguration &config) const {
  std::uint64_t result = 0;
  for (const auto &a : config.assignments()) {
    std::uint64_t digit = static_cast<std::uint64_t>(a.value) + 1;
    std::uint64_t weight = 1;
    for (int i = 0; i < a.party; ++i) weight *= static_cast<std::uint64_t>(radix_);
    result += digit * weight;
  }
  return result;
}

OutputSet EvaluationTable::at(const InputConfiguration &config) const {
  return values_.at(code(config));
}

// ---------------------------------------------------------------------------
// Triviality

Triviality is_trivial(const ValidityProperty &property,
                      const SystemParams &params, const Domain &domain,
                      const Budget &budget) {
  OutputSet common = OutputSet::all(domain.output_size());
  for (const auto &config : enumerate_input_configs(params, domain, budget)) {
    common &= property(params, config);
    if (common.empty()) return {};
  }
  return {true, common.smallest()};
}

bool is_trivial_maximal(const ValidityProperty &property,
                        const SystemParams &params, const Domain &domain,
                        const Budget &budget) {
  // Only the maximal slice is needed; count the full space for the budget.
  if (count_input_configs(params, domain) > budget.max_configs)
    throw Error(ErrorCode::kBudgetExceeded,
                "enumeration exceeds the configuration cap");
  OutputSet common = OutputSet::all(domain.output_size());
  bool empty = false;
  visit_configs(params.n, params.n, domain.input_size(), {},
                [](std::uint64_t, int) { return true; },
                [&](const std::vector<Assignment> &a) {
                  if (!empty) {
                    common &= property(params, from_sorted(a));
                    empty = common.empty();
                  }
                });
  return !empty;
}

// ---------------------------------------------------------------------------
// Certificates

SimilarityCertificate::SimilarityCertificate(SystemParams params, Domain domain,
                                             std::string validity_name)
    : params_(params),
      domain_(std::move(domain)),
      validity_name_(std::move(validity_name)) {}

void SimilarityCertificate::set(const InputConfiguration &config, int output) {
  if (output < 0 || output >= domain_.output_size())
    throw Error(ErrorCode::kInvalidArgument, "sigma value outside V_O");
  std::string key = config.encode(domain_);
  auto [it, inserted] = index_.emplace(key, entries_.size());
  if (inserted) {
    entries_.emplace_back(config, output);
  } else {
    entries_[it->second].second = output;
  }
}

std::optional<int> SimilarityCertificate::lookup(
    const InputConfiguration &config) const {
  auto it = index_.find(config.encode(domain_));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].second;
}

std::string SimilarityCertificate::to_json() const {
  nlohmann::ordered_json doc;
  doc["params"] = {{"n", params_.n},
                   {"ts", params_.ts},
                   {"ta", params_.ta},
                   {"setup", to_string(params_.setup)}};
  doc["domain"] = {{"input_values", domain_.input_values()},
                   {"output_values", domain_.output_values()}};
  doc["validity"] = validity_name_;
  nlohmann::ordered_json sigma = nlohmann::ordered_json::object();
  for (const auto &[config, output] : entries_)
    sigma[config.encode(domain_)] = domain_.output_label(output);
  doc["sigma"] = std::move(sigma);
  return doc.dump(2);
}

SimilarityCertificate SimilarityCertificate::from_json(std::string_view text) {
  // Ordered parse keeps entries in file order, so a round trip is exact.
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
    const auto &p = doc.at("params");
    SystemParams params{p.at("n").get<int>(), p.at("ts").get<int>(),
                        p.at("ta").get<int>(),
                        parse_setup(p.at("setup").get<std::string>())};
    params.validate();
    Domain domain(doc.at("domain").at("input_values").get<std::vector<std::string>>(),
                  doc.at("domain").at("output_values").get<std::vector<std::string>>());
    SimilarityCertificate cert(params, domain,
                               doc.value("validity", std::string("custom")));
    for (const auto &[key, value] : doc.at("sigma").items()) {
      auto output = domain.find_output(value.get<std::string>());
      if (!output)
        throw Error(ErrorCode::kConfig, "sigma entry with unknown output label");
      auto config = InputConfiguration::decode(key, domain);
      config.validate(params, domain);
      cert.set(config, *output);
    }
    return cert;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("bad certificate json: ") + e.what());
  }
}

CertificateResult compute_similarity_certificate(
    const ValidityProperty &property, const SystemParams &params,
    const Domain &domain, const Budget &budget) {
  EvaluationTable table(property, params, domain, budget);
  CertificateResult result;
  SimilarityCertificate cert(params, domain, property.name);
  const OutputSet universe = OutputSet::all(domain.output_size());
  for (const auto &config : table.configs()) {
    OutputSet common = universe;
    visit_similar(config, params, domain, [&](const std::vector<Assignment> &j) {
      if (++result.pair_checks > budget.max_pair_checks)
        throw Error(ErrorCode::kBudgetExceeded, "pair-check cap exceeded");
      std::uint64_t code = 0, weight = 1;
      int next = 0;
      for (int p = 0; p < params.n; ++p, weight *= domain.input_size() + 1) {
        if (next < static_cast<int>(j.size()) && j[next].party == p) {
          code += weight * static_cast<std::uint64_t>(j[next].value + 1);
          ++next;
        }
      }
      common &= table.at_code(code);
    });
    if (common.empty()) {
      result.witness = config;
      return result;
    }
    cert.set(config, common.smallest());
  }
  result.certificate = std::move(cert);
  return result;
}

CertificateCheck validate_certificate(const ValidityProperty &property,
                                      const SimilarityCertificate &certificate,
                                      const Budget &budget) {
  const auto &params = certificate.params();
  const auto &domain = certificate.domain();
  EvaluationTable table(property, params, domain, budget);
  const auto &configs = table.configs();
  CertificateCheck check;
  const std::uint64_t total =
      static_cast<std::uint64_t>(configs.size()) * configs.size();
  if (total > budget.max_pair_checks)
    throw Error(ErrorCode::kBudgetExceeded, "pair-check cap exceeded");
  std::vector<OutputSet> values;
  values.reserve(configs.size());
  for (const auto &c : configs) values.push_back(table.at(c));
  const std::size_t async_floor = static_cast<std::size_t>(params.n - params.ta);
  for (const auto &i : configs) {
    auto sigma = certificate.lookup(i);
    if (!sigma) {
      check.ok = false;
      check.counterexample.emplace(i, i);
      return check;
    }
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto &j = configs[k];
      ++check.pairs_checked;
      if (!j.agrees_with(i)) continue;
      if (!(i.includes(j) || j.size() >= async_floor)) continue;
      if (!values[k].contains(*sigma)) {
        check.ok = false;
        check.counterexample.emplace(i, j);
        return check;
      }
    }
  }
  return check;
}

SolvabilityVerdict is_solvable(const ValidityProperty &property,
                               const SystemParams &params, const Domain &domain,
                               const Budget &budget) {
  params.validate();
  SolvabilityVerdict verdict;
  auto triviality = is_trivial(property, params, domain, budget);
  if (triviality.trivial) {
    verdict.solvable = true;
    verdict.reason = Reason::kTrivial;
    verdict.common_value = triviality.common_value;
    return verdict;
  }
  if (!resilience_bound_holds(params)) {
    verdict.reason = Reason::kNTooSmall;
    return verdict;
  }
  auto cert = compute_similarity_certificate(property, params, domain, budget);
  if (cert.certificate) {
    verdict.solvable = true;
    verdict.reason = Reason::kSimilarityAndNOk;
  } else {
    verdict.reason = Reason::kSimilarityFails;
    verdict.witness = cert.witness;
  }
  return verdict;
}

}  // namespace aba
