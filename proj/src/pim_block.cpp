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

#include "pimgold/pim_block.hpp"

#include <bit>
#include <limits>

#include "pimgold/errors.hpp"

namespace pimgold {

bool IdPredicate::matches(const BlockId& id) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Eq:
      return (a == kAny || id.row == a) && (b == kAny || id.col == b);
    case Kind::ColMask:
      return id.col < 32 && ((a >> id.col) & 1u);
    case Kind::Stride:
      return a != 0 && id.col % a == b;
    case Kind::Window:
      return id.row < a && id.col < b;
  }
  return false;
}

std::string IdPredicate::to_string() const {
  switch (kind) {
    case Kind::All: return "ALL";
    case Kind::Eq: return "EQ(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::ColMask: return "COL_MASK(" + std::to_string(a) + ")";
    case Kind::Stride: return "STRIDE(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::Window: return "WINDOW(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return "?";
}

PimBlock::PimBlock(BlockId id, unsigned k, unsigned regfile_bits)
    : id_(id), pes_(k, PeState(regfile_bits)) {}

void PimBlock::set_ptr_reg(unsigned cell) {
  const unsigned bits = pes_.empty() ? 0 : pes_.front().regfile.size();
  if (cell >= bits) {
    throw OutOfRange("pointer register value " + std::to_string(cell) + " outside " +
                     std::to_string(bits) + " cells");
  }
  ptr_reg_ = cell;
}

void PimBlock::clear_flags() {
  for (auto& pe : pes_) pe.clear_flags();
}

void PimBlock::check_inblock(const RegOperand& src, const RegOperand& dst,
                             unsigned accum_width) const {
  if (dst.width == 0 || dst.width > accum_width) {
    throw WidthError("reduction width " + std::to_string(dst.width) + " must be in [1, " +
                     std::to_string(accum_width) + "]");
  }
  const auto& rf = pes_.front().regfile;
  rf.check(src);
  rf.check(dst);
  if (overlaps(src, dst) && !(src == dst)) {
    throw OverlapError("in-block reduction source and destination partially overlap");
  }
}

void PimBlock::inblock_step(const RegOperand& src, const RegOperand& dst, unsigned level,
                            unsigned bit) {
  const unsigned stride = 1u << level;
  const unsigned k = this->k();
  const bool first = bit == 0;
  const bool msb = bit + 1 == dst.width;
  for (unsigned i = 0; i + stride < k; i += 2 * stride) {
    PeState& lo = pes_[i];
    const PeState& hi = pes_[i + stride];
    bool a, b;
    if (level == 0) {
      a = read_extended(lo.regfile, src, bit);
      b = read_extended(hi.regfile, src, bit);
    } else {
      a = lo.regfile.get(dst.base + bit);
      b = hi.regfile.get(dst.base + bit);
    }
    lo.regfile.set(dst.base + bit, alu_bit(lo, AluOp::Add, a, b, first, msb));
  }
}

Cycles PimBlock::inblock_reduce(const RegOperand& src, const RegOperand& dst,
                                unsigned accum_width, unsigned pipe_overhead) {
  check_inblock(src, dst, accum_width);
  if (!enabled_) return 0;
  clear_flags();
  const unsigned levels = static_cast<unsigned>(std::countr_zero(std::bit_ceil(k())));
  Cycles cycles = 0;
  for (unsigned level = 0; level < levels; ++level) {
    for (unsigned bit = 0; bit < dst.width; ++bit) inblock_step(src, dst, level, bit);
    cycles += bitserial_op_cycles(dst.width, pipe_overhead);
  }
  return cycles;
}

bool PimBlock::truncation_overflow(const RegOperand& src, unsigned width) const {
  if (src.width <= width) return false;
  for (const auto& pe : pes_) {
    const bool sign = pe.regfile.get(src.base + width - 1);
    for (unsigned i = width; i < src.width; ++i) {
      if (pe.regfile.get(src.base + i) != sign) return true;
    }
  }
  return false;
}

bool PimBlock::hop_send(const RegOperand& src, unsigned bit) const {
  if (bit >= src.width) return false;
  return pes_.front().regfile.get(src.base + bit);
}

void PimBlock::hop_receive(const RegOperand& acc, const RegOperand& dst, unsigned bit,
                           bool incoming) {
  PeState& pe = pes_.front();
  const bool a = pe.regfile.get(acc.base + bit);
  pe.regfile.set(dst.base + bit,
                 alu_bit(pe, AluOp::Add, a, incoming, bit == 0, bit + 1 == dst.width));
}

void hop_cycle(std::span<PimBlock> row, const RegOperand& acc, const RegOperand& dst,
               unsigned distance, unsigned cycle, unsigned width) {
  const unsigned level = static_cast<unsigned>(std::countr_zero(distance));
  const auto n = row.size();

  if (cycle >= distance && cycle - distance < width) {
    const unsigned bit = cycle - distance;
    for (std::size_t c = 0; c < n; c += 2 * distance) {
      PimBlock& blk = row[c];
      if (blk.enabled()) blk.hop_receive(acc, dst, bit, blk.link());
    }
  }

  // Synchronous update: every link register samples its east neighbour's
  // previous-cycle state, so compute west-to-east before anything changes.
  for (std::size_t c = 0; c < n; ++c) {
    bool next = false;
    if (c + 1 < n) {
      const PimBlock& east = row[c + 1];
      const auto east_col = static_cast<unsigned>(c + 1);
      if (east.enabled() && hop_is_sender(east_col, level)) {
        next = east.hop_send(acc, cycle);
      } else {
        next = east.link();
      }
    }
    row[c].set_link(next);
  }
}

Cycles hop_level(std::span<PimBlock> row, const RegOperand& acc, const RegOperand& dst,
                 unsigned distance, unsigned pipe_overhead) {
  if (distance == 0) throw TopologyError("hop distance 0 sends a block to itself");
  if (!std::has_single_bit(distance)) {
    throw TopologyError("hop distance " + std::to_string(distance) + " is not a power of two");
  }
  if (distance >= row.size()) {
    throw TopologyError("hop distance " + std::to_string(distance) +
                        " crosses the fabric edge of a " + std::to_string(row.size()) +
                        "-block row");
  }
  for (auto& blk : row) {
    blk.set_link(false);
    if (blk.enabled()) blk.clear_flags();
  }
  const unsigned width = dst.width;
  const Cycles active = Cycles{distance} + width;
  for (unsigned t = 0; t < active; ++t) hop_cycle(row, acc, dst, distance, t, width);
  return active + pipe_overhead;
}

Cycles array_reduce(std::span<PimBlock> row, unsigned p, const RegOperand& acc,
                    unsigned pipe_overhead) {
  if (p == 0 || p > row.size()) {
    throw TopologyError("reduction span " + std::to_string(p) + " does not fit a " +
                        std::to_string(row.size()) + "-block row");
  }
  const auto window = IdPredicate::window(std::numeric_limits<unsigned>::max(), p);
  for (auto& blk : row) blk.set_select(window);
  Cycles cycles = 0;
  for (unsigned d = 1; d < p; d <<= 1) cycles += hop_level(row, acc, acc, d, pipe_overhead);
  return cycles;
}

}  // namespace pimgold
