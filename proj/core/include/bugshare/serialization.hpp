// Copyright 2026 The bugshare Authors
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


#ifndef BUGSHARE_SERIALIZATION_HPP_
#define BUGSHARE_SERIALIZATION_HPP_

#include <nlohmann/json.hpp>

#include "bugshare/audit.hpp"
#include "bugshare/distributions.hpp"
#include "bugshare/lowerbound.hpp"
#include "bugshare/mechanisms.hpp"
#include "bugshare/simulate.hpp"

// JSON mappings for the public report types. Non-finite numbers and empty
// optionals are written as null; from_json accepts what to_json writes.
namespace bugshare {

void to_json(nlohmann::json& j, const TypeProfile& profile);

void to_json(nlohmann::json& j, const DistributionSpec& spec);
void from_json(const nlohmann::json& j, DistributionSpec& spec);

void to_json(nlohmann::json& j, const Outcome& outcome);
void from_json(const nlohmann::json& j, Outcome& outcome);

void to_json(nlohmann::json& j, const DeadlineResult& result);
void from_json(const nlohmann::json& j, DeadlineResult& result);

void to_json(nlohmann::json& j, const GcsodExpectation& e);
void from_json(const nlohmann::json& j, GcsodExpectation& e);

void to_json(nlohmann::json& j, const Violation& v);
void from_json(const nlohmann::json& j, Violation& v);

void to_json(nlohmann::json& j, const AuditReport& report);
void from_json(const nlohmann::json& j, AuditReport& report);

void to_json(nlohmann::json& j, const CompetitiveReport& report);
void from_json(const nlohmann::json& j, CompetitiveReport& report);

void to_json(nlohmann::json& j, const LowerBoundDetail& detail);
void from_json(const nlohmann::json& j, LowerBoundDetail& detail);

void to_json(nlohmann::json& j, const SimulationReport& report);
void from_json(const nlohmann::json& j, SimulationReport& report);

void to_json(nlohmann::json& j, const TableRow& row);
void from_json(const nlohmann::json& j, TableRow& row);

}  // namespace bugshare

#endif  // BUGSHARE_SERIALIZATION_HPP_
