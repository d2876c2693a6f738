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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pimgold/bitserial_pe.hpp"

namespace pimgold {

/// Fabric-global block coordinates; column 0 is the west edge.
struct BlockId {
  unsigned row = 0;
  unsigned col = 0;

  friend bool operator==(const BlockId&, const BlockId&) = default;
};

/// Block-ID selection predicate broadcast by the SELECT instruction.
struct IdPredicate {
  enum class Kind : std::uint8_t {
    All = 0,
    Eq = 1,       // row == a && col == b; kAny matches every index
    ColMask = 2,  // bit `col` of mask (columns 0..19)
    Stride = 3,   // col % a == b
    Window = 4,   // row < a && col < b
  };
  static constexpr unsigned kAny = 0x3FF;

  Kind kind = Kind::All;
  unsigned a = 0;
  unsigned b = 0;

  static IdPredicate all() { return {Kind::All, 0, 0}; }
  static IdPredicate eq(unsigned row, unsigned col) { return {Kind::Eq, row, col}; }
  static IdPredicate col_mask(std::uint32_t mask) { return {Kind::ColMask, mask, 0}; }
  static IdPredicate stride(unsigned step, unsigned phase) { return {Kind::Stride, step, phase}; }
  static IdPredicate window(unsigned rows, unsigned cols) { return {Kind::Window, rows, cols}; }

  bool matches(const BlockId& id) const;
  std::string to_string() const;

  friend bool operator==(const IdPredicate&, const IdPredicate&) = default;
};

/// One PIM block: k PEs behind a shared block interface. In-block reduction
/// goes through the operand mux (a PE reads its partner's bitline directly),
/// so partial sums never need across-bitline copies.
class PimBlock {
 public:
  PimBlock(BlockId id, unsigned k, unsigned regfile_bits);

  const BlockId& id() const { return id_; }
  unsigned k() const { return static_cast<unsigned>(pes_.size()); }

  bool enabled() const { return enabled_; }
  void set_select(const IdPredicate& predicate) { enabled_ = predicate.matches(id_); }

  unsigned ptr_reg() const { return ptr_reg_; }
  void set_ptr_reg(unsigned cell);

  std::span<PeState> pes() { return pes_; }
  std::span<const PeState> pes() const { return pes_; }
  PeState& pe(unsigned lane) { return pes_.at(lane); }
  const PeState& pe(unsigned lane) const { return pes_.at(lane); }

  /// East-edge boundary register of the hop network (one bit per cycle).
  bool link() const { return link_; }
  void set_link(bool v) { link_ = v; }

  void clear_flags();

  /// Checks for an in-block reduction from `src` into a W-bit `dst`.
  void check_inblock(const RegOperand& src, const RegOperand& dst, unsigned accum_width) const;

  /// Cycle `bit` of reduction step `level`: PE i (i a multiple of 2^(level+1))
  /// adds PE i + 2^level. Level 0 reads `src`, later levels read `dst`.
  void inblock_step(const RegOperand& src, const RegOperand& dst, unsigned level, unsigned bit);

  /// Entire in-block reduction with pipeline fill; the sum lands in PE 0.
  Cycles inblock_reduce(const RegOperand& src, const RegOperand& dst, unsigned accum_width,
                        unsigned pipe_overhead);

  /// Some lane's `src` value does not fit in `width` signed bits.
  bool truncation_overflow(const RegOperand& src, unsigned width) const;

  /// Bit `bit` of PE 0's `src`, as driven onto the westward link when sending.
  bool hop_send(const RegOperand& src, unsigned bit) const;
  /// Fuse one incoming bit into PE 0: dst[bit] = acc[bit] + incoming.
  void hop_receive(const RegOperand& acc, const RegOperand& dst, unsigned bit, bool incoming);

 private:
  BlockId id_;
  std::vector<PeState> pes_;
  bool enabled_ = true;
  unsigned ptr_reg_ = 0;
  bool link_ = false;
};

/// Sender/receiver roles of hop level `level` (distance 2^level).
inline bool hop_is_sender(unsigned col, unsigned level) {
  return ((col >> level) & 1u) && (col & ((1u << level) - 1)) == 0;
}
inline bool hop_is_receiver(unsigned col, unsigned level) {
  return (col & ((2u << level) - 1)) == 0;
}

/// One synchronous cycle of a hop level across one row of blocks. Receivers
/// consume their link register (written one cycle earlier), then every link
/// register loads its east neighbour's emission or forwarded bit.
void hop_cycle(std::span<PimBlock> row, const RegOperand& acc, const RegOperand& dst,
               unsigned distance, unsigned cycle, unsigned width);

/// One hop level across a row: enabled senders at col % 2d == d stream their
/// PE-0 `acc` to col - d. Costs distance + width + pipe_overhead cycles.
Cycles hop_level(std::span<PimBlock> row, const RegOperand& acc, const RegOperand& dst,
                 unsigned distance, unsigned pipe_overhead);

/// All ceil(log2 P) hop levels over the first P blocks of a row.
Cycles array_reduce(std::span<PimBlock> row, unsigned p, const RegOperand& acc,
                    unsigned pipe_overhead);

}  // namespace pimgold
