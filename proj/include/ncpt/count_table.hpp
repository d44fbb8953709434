// Copyright 2026 The ncpt Authors
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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncpt {

/// One observer's binary decision as received by the coordinator.
struct Decision {
    int observer = 0;  // 1-based observer id
    int value = 0;     // 0 or 1

    friend auto operator<=>(const Decision&, const Decision&) = default;
};

/// Decisions in the order the coordinator collected them.
using DecisionSequence = std::vector<Decision>;

/// Text key "D2=1,D1=0,D3=1".
std::string sequence_key(const DecisionSequence& seq);
/// Inverse of sequence_key; throws InvariantViolation on malformed input.
DecisionSequence parse_sequence_key(const std::string& key);

/// Per-hypothesis counts of collected decision sequences. Merging is
/// associative and commutative, so tables built on separate shards can be combined.
class CountTable {
 public:
    void add(int h, const DecisionSequence& seq, std::uint64_t n = 1);
    void merge(const CountTable& other);

    std::uint64_t total(int h) const { return totals_.at(static_cast<std::size_t>(h)); }
    const std::map<DecisionSequence, std::uint64_t>& counts(int h) const {
        return counts_.at(static_cast<std::size_t>(h));
    }

    friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
    std::array<std::map<DecisionSequence, std::uint64_t>, 2> counts_;
    std::array<std::uint64_t, 2> totals_{0, 0};
};

}  // namespace ncpt
