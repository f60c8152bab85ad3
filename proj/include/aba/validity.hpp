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

// Input configurations, validity properties and the solvability decision for
// network-agnostic Byzantine Agreement over finite domains.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aba/error.hpp"

namespace aba {

enum class Setup { kNone, kPki };

const char *to_string(Setup setup);
Setup parse_setup(std::string_view text);

struct SystemParams {
  int n = 1;
  int ts = 0;  // corruption bound when the network is synchronous
  int ta = 0;  // corruption bound when the network is asynchronous
  Setup setup = Setup::kPki;

  // Throws kInvalidArgument unless 0 <= ta <= ts <= n - 1.
  void validate() const;
  int min_config_size() const { return n - ts; }

  bool operator==(const SystemParams &) const = default;
};

// n > 2ts + ta with a PKI, n > 3ts without.
bool resilience_bound_holds(const SystemParams &params);

// Finite, ordered value universes. Values are referred to by index; labels
// only matter for encoding and reports.
class Domain {
 public:
  Domain(std::vector<std::string> input_values,
         std::vector<std::string> output_values);

  // Labels "0", "1", ..., on both sides.
  static Domain numeric(int input_count);

  int input_size() const { return static_cast<int>(inputs_.size()); }
  int output_size() const { return static_cast<int>(outputs_.size()); }
  const std::string &input_label(int index) const { return inputs_.at(index); }
  const std::string &output_label(int index) const {
    return outputs_.at(index);
  }
  const std::vector<std::string> &input_values() const { return inputs_; }
  const std::vector<std::string> &output_values() const { return outputs_; }

  std::optional<int> find_input(std::string_view label) const;
  std::optional<int> find_output(std::string_view label) const;

  bool operator==(const Domain &) const = default;

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

// Set of output indices. Output domains are capped at 64 values.
class OutputSet {
 public:
  static constexpr int kMaxValues = 64;

  OutputSet() = default;
  static OutputSet all(int size);
  static OutputSet single(int value);
  static OutputSet from_bits(std::uint64_t bits) { return OutputSet(bits); }

  bool contains(int value) const {
    return value >= 0 && value < kMaxValues && ((bits_ >> value) & 1U) != 0;
  }
  void insert(int value);
  bool empty() const { return bits_ == 0; }
  int count() const;
  // Smallest index in the set; the set must not be empty.
  int smallest() const;
  std::vector<int> values() const;
  std::uint64_t bits() const { return bits_; }

  OutputSet operator&(OutputSet other) const {
    return OutputSet(bits_ & other.bits_);
  }
  OutputSet &operator&=(OutputSet other) {
    bits_ &= other.bits_;
    return *this;
  }
  bool subset_of(OutputSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  bool operator==(const OutputSet &) const = default;

 private:
  explicit OutputSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

struct Assignment {
  int party = 0;
  int value = 0;
  auto operator<=>(const Assignment &) const = default;
};

// A set of (party, input) pairs, kept sorted by party so that set equality is
// structural equality.
class InputConfiguration {
 public:
  InputConfiguration() = default;
  explicit InputConfiguration(std::vector<Assignment> assignments);

  std::span<const Assignment> assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }
  std::vector<int> parties() const;
  std::uint64_t party_mask() const;
  std::optional<int> value_of(int party) const;

  bool is_maximal(int n) const { return static_cast<int>(size()) == n; }
  // True if every input value present is the same; writes it to `value`.
  bool is_unanimous(int *value = nullptr) const;

  // sub ⊆ *this: sub's parties are ours and hold the same values.
  bool includes(const InputConfiguration &sub) const;
  // Every party present in both holds the same value in both.
  bool agrees_with(const InputConfiguration &other) const;

  // Checks party range, minimum size and value range.
  void validate(const SystemParams &params, const Domain &domain) const;

  // "p0=v;p2=w" with parties ascending and input labels as values.
  std::string encode(const Domain &domain) const;
  static InputConfiguration decode(std::string_view text, const Domain &domain);

  auto operator<=>(const InputConfiguration &) const = default;

 private:
  std::vector<Assignment> assignments_;
};

using ValidityEvaluator =
    std::function<OutputSet(const SystemParams &, const InputConfiguration &)>;

struct ValidityProperty {
  std::string name;
  ValidityEvaluator evaluate;

  OutputSet operator()(const SystemParams &params,
                       const InputConfiguration &config) const {
    return evaluate(params, config);
  }
};

struct Budget {
  std::uint64_t max_configs = 5'000'000;
  std::uint64_t max_pair_checks = 1'000'000'000;

  // Reads ABA_BUDGET ("configs" or "configs:pairs"), falling back to defaults.
  static Budget from_env();
};

// Number of configurations in inputconfigs, without enumerating them.
std::uint64_t count_input_configs(const SystemParams &params,
                                  const Domain &domain);

// Every configuration of size >= n - ts: party subsets by size then
// lexicographically, value assignments lexicographically within a subset.
std::vector<InputConfiguration> enumerate_input_configs(
    const SystemParams &params, const Domain &domain, const Budget &budget = {});

std::vector<InputConfiguration> neighbors(const InputConfiguration &config,
                                          const SystemParams &params,
                                          const Domain &domain);

// {J in neighbors(I) : J ⊆ I} ∪ {J in neighbors(I) : |J| >= n - ta}.
std::vector<InputConfiguration> similar(const InputConfiguration &config,
                                        const SystemParams &params,
                                        const Domain &domain);

// closure(V)(I) = intersection of V(J) over all J ⊆ I in inputconfigs.
ValidityProperty monotone_closure(ValidityProperty property);

struct Triviality {
  bool trivial = false;
  std::optional<int> common_value;  // smallest common output when trivial
};

Triviality is_trivial(const ValidityProperty &property,
                      const SystemParams &params, const Domain &domain,
                      const Budget &budget = {});

bool is_trivial_maximal(const ValidityProperty &property,
                        const SystemParams &params, const Domain &domain,
                        const Budget &budget = {});

// Dense memo of a property over every configuration of the parameter tuple.
// Keys are mixed-radix codes: digit 0 for an absent party, value + 1 else.
class EvaluationTable {
 public:
  EvaluationTable(const ValidityProperty &property, const SystemParams &params,
                  const Domain &domain, const Budget &budget);

  const std::vector<InputConfiguration> &configs() const { return configs_; }
  std::uint64_t code(const InputConfiguration &config) const;
  OutputSet at(const InputConfiguration &config) const;
  OutputSet at_code(std::uint64_t code) const { return values_[code]; }

 private:
  int radix_;
  std::vector<InputConfiguration> configs_;
  std::vector<OutputSet> values_;
};

class SimilarityCertificate {
 public:
  SimilarityCertificate(SystemParams params, Domain domain,
                        std::string validity_name);

  const SystemParams &params() const { return params_; }
  const Domain &domain() const { return domain_; }
  const std::string &validity_name() const { return validity_name_; }

  void set(const InputConfiguration &config, int output);
  std::optional<int> lookup(const InputConfiguration &config) const;
  // Entries in insertion (canonical enumeration) order.
  const std::vector<std::pair<InputConfiguration, int>> &entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

  // {"params": {...}, "domain": {...}, "validity": name,
  //  "sigma": {encoded-config: output-label}}
  std::string to_json() const;
  static SimilarityCertificate from_json(std::string_view text);

 private:
  SystemParams params_;
  Domain domain_;
  std::string validity_name_;
  std::vector<std::pair<InputConfiguration, int>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CertificateResult {
  std::optional<SimilarityCertificate> certificate;
  std::optional<InputConfiguration> witness;  // some I with empty intersection
  std::uint64_t pair_checks = 0;
};

// For each I, intersects V(J) over similar(I); sigma(I) is the smallest
// output of that intersection.
CertificateResult compute_similarity_certificate(
    const ValidityProperty &property, const SystemParams &params,
    const Domain &domain, const Budget &budget = {});

struct CertificateCheck {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<InputConfiguration, InputConfiguration>>
      counterexample;
};

// Brute-force re-check over all configuration pairs, independent of the
// generator used by compute_similarity_certificate.
CertificateCheck validate_certificate(const ValidityProperty &property,
                                      const SimilarityCertificate &certificate,
                                      const Budget &budget = {});

enum class Reason {
  kTrivial,
  kSimilarityAndNOk,
  kNTooSmall,
  kSimilarityFails,
};

const char *to_string(Reason reason);

struct SolvabilityVerdict {
  bool solvable = false;
  Reason reason = Reason::kNTooSmall;
  std::optional<InputConfiguration> witness;
  std::optional<int> common_value;
};

SolvabilityVerdict is_solvable(const ValidityProperty &property,
                               const SystemParams &params,
                               const Domain &domain,
                               const Budget &budget = {});

}  // namespace aba
