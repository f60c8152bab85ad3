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

#pragma once

#include <string>
#include <string_view>

#include "aba/validity.hpp"

namespace aba {

struct CliqueHullSpec {
  int omega = 2;  // vertices of the complete graph K_omega
};

struct IntervalDomainSpec {
  int lo = 0;
  int hi = 1;
};

/// Output v when every present party holds v, anything otherwise.
/// Throws kDomainMismatch unless every input label is also an output label.
ValidityProperty strong_validity(const Domain &domain);

/// Output v only when all n parties are present and hold v.
ValidityProperty weak_validity(const Domain &domain);

/// Unanimous v forces v; otherwise any present input or the bottom symbol.
/// The output domain must be the input domain plus exactly one extra label.
ValidityProperty intrusion_tolerant_strong(const Domain &domain);

ValidityProperty interval_hull(IntervalDomainSpec spec);
Domain interval_domain(IntervalDomainSpec spec);

// The monophonic hull of a vertex set in a clique is the set itself.
ValidityProperty clique_hull(CliqueHullSpec spec);
Domain clique_domain(CliqueHullSpec spec);

// Every configuration admits `output`; trivially solvable.
ValidityProperty constant_validity(const Domain &domain, int output);

struct CatalogEntry {
  ValidityProperty property;
  Domain domain;
};

// Resolves `strong`, `weak`, `it-strong`, `interval:<lo>:<hi>`, `clique:<omega>`.
// `value_count` sizes the input domain of the first three; the bottom label
// of `it-strong` is "bot".
CatalogEntry catalog_lookup(std::string_view name, int value_count = 2);

// {"input_values": [...], "output_values": [...], "default": [...],
//  "table": {encoded-config: [...]}}
CatalogEntry load_table_property(std::string_view json_text,
                                 std::string name = "table");

}  // namespace aba
