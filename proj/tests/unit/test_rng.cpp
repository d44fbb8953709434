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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ncpt/rng.hpp"

namespace ncpt {
namespace {

using Counter = Philox4x32::Counter;

TEST(Philox4x32, KnownAnswerVectors) {
    EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(PhiloxStream, SameIdentifiersGiveSameSequence) {
    PhiloxStream a(7, 123, 2);
    PhiloxStream b(7, 123, 2);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a(), b());
    }
    EXPECT_EQ(a.blocks_consumed(), 25U);
}

TEST(PhiloxStream, DistinctIdentifiersDiffer) {
    std::set<std::uint32_t> firsts;
    for (std::uint64_t run = 0; run < 4; ++run) {
        for (std::uint32_t stream = 0; stream < 4; ++stream) {
            firsts.insert(PhiloxStream(7, run, stream)());
        }
    }
    firsts.insert(PhiloxStream(8, 0, 0)());
    EXPECT_EQ(firsts.size(), 17U);
}

TEST(PhiloxStream, UniformIsInUnitIntervalWithCorrectMean) {
    PhiloxStream s(1, 0, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Standard error of the mean is 1/sqrt(12 n) ~ 6.5e-4.
    EXPECT_NEAR(sum / n, 0.5, 5 * 6.5e-4);
}

TEST(PhiloxStream, WorksWithStandardDistributions) {
    PhiloxStream s(3, 0, 0);
    std::uniform_int_distribution<int> die(1, 6);
    for (int i = 0; i < 1000; ++i) {
        int v = die(s);
        ASSERT_GE(v, 1);
        ASSERT_LE(v, 6);
    }
}

}  // namespace
}  // namespace ncpt
