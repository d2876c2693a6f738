/*
 * Copyright 2026 The pimgold Authors
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

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "doctest.h"
#include "pimgold/errors.hpp"
#include "pimgold/pim_block.hpp"

using namespace pimgold;

namespace {

constexpr RegOperand kSrc{0, 16};
constexpr RegOperand kAcc{64, 32};

std::vector<PimBlock> make_row(unsigned n, unsigned k = 16) {
  std::vector<PimBlock> row;
  for (unsigned c = 0; c < n; ++c) row.emplace_back(BlockId{0, c}, k, 1024);
  return row;
}

}  // namespace

TEST_SUITE("pim_block") {

TEST_CASE("selection predicates") {
  const BlockId b{3, 5};
  CHECK(IdPredicate::all().matches(b));
  CHECK(IdPredicate::eq(3, 5).matches(b));
  CHECK_FALSE(IdPredicate::eq(3, 4).matches(b));
  CHECK(IdPredicate::eq(IdPredicate::kAny, 5).matches(b));
  CHECK(IdPredicate::eq(3, IdPredicate::kAny).matches(b));
  CHECK(IdPredicate::col_mask(1u << 5).matches(b));
  CHECK_FALSE(IdPredicate::col_mask(1u << 4).matches(b));
  CHECK(IdPredicate::stride(2, 1).matches(b));
  CHECK_FALSE(IdPredicate::stride(2, 0).matches(b));
  CHECK_FALSE(IdPredicate::stride(0, 0).matches(b));
  CHECK(IdPredicate::window(4, 6).matches(b));
  CHECK_FALSE(IdPredicate::window(3, 6).matches(b));
  CHECK(IdPredicate::eq(1, 2).to_string() == "EQ(1,2)");

  PimBlock blk(b, 16, 1024);
  blk.set_select(IdPredicate::eq(0, 0));
  CHECK_FALSE(blk.enabled());
  blk.set_select(IdPredicate::all());
  CHECK(blk.enabled());
}

TEST_CASE("pointer register range") {
  PimBlock blk({0, 0}, 16, 1024);
  blk.set_ptr_reg(1023);
  CHECK(blk.ptr_reg() == 1023);
  CHECK_THROWS_AS(blk.set_ptr_reg(1024), OutOfRange);
}

TEST_CASE("in-block reduction: 144 cycles at W=32, k=16") {
  PimBlock blk({0, 0}, 16, 1024);
  std::int64_t want = 0;
  for (unsigned l = 0; l < 16; ++l) {
    const std::int64_t v = static_cast<std::int64_t>(l * 1000) - 7000;
    blk.pe(l).regfile.store(kSrc, v);
    want += v;
  }
  CHECK(blk.inblock_reduce(kSrc, kAcc, 32, 4) == 144);
  CHECK(blk.pe(0).regfile.load_signed(kAcc) == want);
  CHECK_FALSE(blk.pe(0).overflow);
}

TEST_CASE("in-block reduction at other widths and k") {
  PimBlock blk({0, 0}, 4, 1024);
  for (unsigned l = 0; l < 4; ++l) blk.pe(l).regfile.store({0, 8}, 1);
  CHECK(blk.inblock_reduce({0, 8}, {16, 8}, 32, 4) == 24);
  CHECK(blk.pe(0).regfile.load_signed({16, 8}) == 4);
}

TEST_CASE("in-block overflow is detected") {
  PimBlock blk({0, 0}, 16, 1024);
  for (unsigned l = 0; l < 16; ++l) blk.pe(l).regfile.store({0, 8}, 100);
  blk.inblock_reduce({0, 8}, {16, 8}, 32, 4);
  CHECK(blk.pe(0).overflow);
}

TEST_CASE("in-block operand checks") {
  PimBlock blk({0, 0}, 16, 1024);
  CHECK_THROWS_AS(blk.inblock_reduce(kSrc, {64, 0}, 32, 4), WidthError);
  CHECK_THROWS_AS(blk.inblock_reduce(kSrc, {64, 33}, 32, 4), WidthError);
  CHECK_THROWS_AS(blk.inblock_reduce(kSrc, {8, 32}, 32, 4), OverlapError);
  CHECK_THROWS_AS(blk.inblock_reduce(kSrc, {1000, 32}, 32, 4), OutOfRange);
}

TEST_CASE("disabled block keeps its state") {
  PimBlock blk({0, 0}, 16, 1024);
  for (unsigned l = 0; l < 16; ++l) blk.pe(l).regfile.store(kSrc, 5);
  blk.set_select(IdPredicate::eq(9, 9));
  const auto before = std::vector<PeState>(blk.pes().begin(), blk.pes().end());
  CHECK(blk.inblock_reduce(kSrc, kAcc, 32, 4) == 0);
  CHECK(std::equal(before.begin(), before.end(), blk.pes().begin()));
}

TEST_CASE("property: in-block sum is invariant under lane permutation") {
  std::mt19937_64 g(99);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::int64_t> vals(16);
    for (auto& v : vals) v = static_cast<std::int64_t>(g() % 65536) - 32768;
    PimBlock a({0, 0}, 16, 1024), b({0, 0}, 16, 1024);
    auto perm = vals;
    std::shuffle(perm.begin(), perm.end(), g);
    for (unsigned l = 0; l < 16; ++l) {
      a.pe(l).regfile.store(kSrc, vals[l]);
      b.pe(l).regfile.store(kSrc, perm[l]);
    }
    a.inblock_reduce(kSrc, kAcc, 32, 4);
    b.inblock_reduce(kSrc, kAcc, 32, 4);
    const auto want = std::accumulate(vals.begin(), vals.end(), std::int64_t{0});
    REQUIRE(a.pe(0).regfile.load_signed(kAcc) == want);
    REQUIRE(b.pe(0).regfile.load_signed(kAcc) == want);
  }
}

TEST_CASE("truncation check for wide sources") {
  PimBlock blk({0, 0}, 2, 1024);
  blk.pe(0).regfile.store({0, 64}, -5);
  blk.pe(1).regfile.store({0, 64}, 7);
  CHECK_FALSE(blk.truncation_overflow({0, 64}, 32));
  blk.pe(1).regfile.store({0, 64}, std::int64_t{1} << 40);
  CHECK(blk.truncation_overflow({0, 64}, 32));
  CHECK_FALSE(blk.truncation_overflow({0, 16}, 32));
}

TEST_CASE("hop roles") {
  CHECK(hop_is_sender(1, 0));
  CHECK(hop_is_receiver(0, 0));
  CHECK(hop_is_receiver(2, 0));
  CHECK(hop_is_sender(2, 1));
  CHECK(hop_is_sender(6, 1));
  CHECK_FALSE(hop_is_sender(4, 1));
  CHECK(hop_is_receiver(4, 1));
  CHECK_FALSE(hop_is_receiver(2, 1));
}

TEST_CASE("one hop level: d + W + 4 cycles, pairwise sums") {
  auto row = make_row(4);
  const std::int64_t v[4] = {10, -3, 1000000, 77};
  for (unsigned c = 0; c < 4; ++c) row[c].pe(0).regfile.store(kAcc, v[c]);
  CHECK(hop_level(row, kAcc, kAcc, 1, 4) == 37);
  CHECK(row[0].pe(0).regfile.load_signed(kAcc) == 7);
  CHECK(row[2].pe(0).regfile.load_signed(kAcc) == 1000077);
  CHECK(hop_level(row, kAcc, kAcc, 2, 4) == 38);
  CHECK(row[0].pe(0).regfile.load_signed(kAcc) == 1000084);
}

TEST_CASE("hop level topology errors") {
  auto row = make_row(4);
  CHECK_THROWS_AS(hop_level(row, kAcc, kAcc, 0, 4), TopologyError);
  CHECK_THROWS_AS(hop_level(row, kAcc, kAcc, 3, 4), TopologyError);
  CHECK_THROWS_AS(hop_level(row, kAcc, kAcc, 4, 4), TopologyError);
  CHECK_THROWS_AS(array_reduce(row, 5, kAcc, 4), TopologyError);
  CHECK_THROWS_AS(array_reduce(row, 0, kAcc, 4), TopologyError);
}

TEST_CASE("array reduction cycle counts") {
  auto row = make_row(64);
  CHECK(array_reduce(row, 1, kAcc, 4) == 0);
  CHECK(array_reduce(row, 2, kAcc, 4) == 37);
  CHECK(array_reduce(row, 4, kAcc, 4) == 75);
  CHECK(array_reduce(row, 16, kAcc, 4) == 159);
  CHECK(array_reduce(row, 64, kAcc, 4) == 36 * 6 + 63);
  CHECK(array_reduce(row, 3, kAcc, 4) == 75);
}

TEST_CASE("hop destination pointer differs from the accumulator") {
  auto row = make_row(2);
  const RegOperand dst{200, 32};
  row[0].pe(0).regfile.store(kAcc, 5);
  row[1].pe(0).regfile.store(kAcc, 6);
  hop_level(row, kAcc, dst, 1, 4);
  CHECK(row[0].pe(0).regfile.load_signed(dst) == 11);
  CHECK(row[0].pe(0).regfile.load_signed(kAcc) == 5);
}

TEST_CASE("property: array reduction sums the first P blocks only") {
  std::mt19937_64 g(4242);
  for (unsigned p = 1; p <= 24; ++p) {
    auto row = make_row(24, 2);
    std::int64_t want = 0;
    std::vector<std::int64_t> vals(24);
    for (unsigned c = 0; c < 24; ++c) {
      vals[c] = static_cast<std::int64_t>(g() % 2000001) - 1000000;
      row[c].pe(0).regfile.store(kAcc, vals[c]);
      if (c < p) want += vals[c];
    }
    const unsigned levels = p <= 1 ? 0 : static_cast<unsigned>(std::bit_width(p - 1));
    CAPTURE(p);
    CHECK(array_reduce(row, p, kAcc, 4) == Cycles{36} * levels + ((Cycles{1} << levels) - 1));
    CHECK(row[0].pe(0).regfile.load_signed(kAcc) == want);
    for (unsigned c = p; c < 24; ++c) REQUIRE(row[c].pe(0).regfile.load_signed(kAcc) == vals[c]);
  }
}

TEST_CASE("array reduction overflow raises the receiver flag") {
  auto row = make_row(2);
  row[0].pe(0).regfile.store(kAcc, 2147483647);
  row[1].pe(0).regfile.store(kAcc, 1);
  array_reduce(row, 2, kAcc, 4);
  CHECK(row[0].pe(0).overflow);
}

}  // TEST_SUITE
