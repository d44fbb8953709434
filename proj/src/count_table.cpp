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

#include "ncpt/count_table.hpp"

#include <sstream>

#include "ncpt/error.hpp"

namespace ncpt {

std::string sequence_key(const DecisionSequence& seq) {
    std::string out;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += 'D' + std::to_string(seq[k].observer) + '=' + std::to_string(seq[k].value);
    }
    return out;
}

DecisionSequence parse_sequence_key(const std::string& key) {
    DecisionSequence seq;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (item.size() < 4 || item[0] != 'D' || eq == std::string::npos || eq + 2 != item.size()) {
            throw InvariantViolation("CountTable.key", "malformed decision '" + item + "' in '" + key + "'");
        }
        Decision d;
        try {
            d.observer = std::stoi(item.substr(1, eq - 1));
        } catch (const std::exception&) {
            throw InvariantViolation("CountTable.key", "malformed observer id in '" + key + "'");
        }
        char v = item[eq + 1];
        if ((v != '0' && v != '1') || d.observer <= 0) {
            throw InvariantViolation("CountTable.key", "malformed decision '" + item + "'");
        }
        d.value = v - '0';
        seq.push_back(d);
    }
    return seq;
}

void CountTable::add(int h, const DecisionSequence& seq, std::uint64_t n) {
    if (h != 0 && h != 1) {
        throw InvariantViolation("CountTable.hypothesis", "hypothesis must be 0 or 1");
    }
    counts_[static_cast<std::size_t>(h)][seq] += n;
    totals_[static_cast<std::size_t>(h)] += n;
}

void CountTable::merge(const CountTable& other) {
    for (std::size_t h = 0; h < 2; ++h) {
        for (const auto& [seq, n] : other.counts_[h]) {
            counts_[h][seq] += n;
        }
        totals_[h] += other.totals_[h];
    }
}

}  // namespace ncpt
