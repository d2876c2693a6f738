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
#include <vector>

#include "pimgold/arch_config.hpp"

namespace pimgold {

/// A register in the transposed layout: `width` consecutive bit-cells starting
/// at `base`, least-significant bit first.
struct RegOperand {
  unsigned base = 0;
  unsigned width = 0;

  unsigned end() const { return base + width; }
  friend bool operator==(const RegOperand&, const RegOperand&) = default;
};

inline bool overlaps(const RegOperand& x, const RegOperand& y) {
  return x.base < y.end() && y.base < x.end();
}

/// The bit-cells under one PE (one BRAM bitline). Out-of-range access throws
/// OutOfRange; there is no wraparound.
class BitRegisterFile {
 public:
  explicit BitRegisterFile(unsigned bits);

  unsigned size() const { return bits_; }

  bool get(unsigned cell) const {
    check_cell(cell);
    return (words_[cell >> 6] >> (cell & 63)) & 1u;
  }
  void set(unsigned cell, bool value) {
    check_cell(cell);
    const std::uint64_t mask = std::uint64_t{1} << (cell & 63);
    if (value) words_[cell >> 6] |= mask;
    else words_[cell >> 6] &= ~mask;
  }

  void check(const RegOperand& op) const;

  /// Host-side access (not cycle-charged). Width must be <= 64.
  std::uint64_t load_unsigned(const RegOperand& op) const;
  std::int64_t load_signed(const RegOperand& op) const;
  void store(const RegOperand& op, std::int64_t value);

  friend bool operator==(const BitRegisterFile&, const BitRegisterFile&) = default;

 private:
  void check_cell(unsigned cell) const;

  unsigned bits_;
  std::vector<std::uint64_t> words_;
};

struct FullAdd {
  bool sum;
  bool carry;
};

constexpr FullAdd full_add(bool a, bool b, bool c) {
  return FullAdd{static_cast<bool>(a ^ b ^ c), static_cast<bool>((a & b) | (a & c) | (b & c))};
}

/// Micro-architectural state of one PE.
struct PeState {
  explicit PeState(unsigned regfile_bits) : regfile(regfile_bits) {}

  BitRegisterFile regfile;
  bool carry = false;
  /// bit 1: multiplier bit of the current Booth iteration, bit 0: previous one.
  std::uint8_t booth_pair = 0;
  /// Sticky signed-overflow flag raised on a most-significant step.
  bool overflow = false;

  /// Called by the controller at the start of every multicycle instruction.
  void clear_flags() {
    carry = false;
    booth_pair = 0;
    overflow = false;
  }

  friend bool operator==(const PeState&, const PeState&) = default;
};

enum class AluOp : std::uint8_t { Add, Sub };

/// One cycle of the 1-bit ALU. `first` loads the operation's carry-in,
/// `msb` marks the sign step so signed overflow is latched.
bool alu_bit(PeState& pe, AluOp op, bool a, bool b, bool first, bool msb);

/// Bit i of an operand, sign-extended past its width.
inline bool read_extended(const BitRegisterFile& rf, const RegOperand& op, unsigned i) {
  return rf.get(op.base + (i < op.width ? i : op.width - 1));
}

/// dst[i] = a[i] + b[i] + carry. Operands narrower than dst are sign-extended.
void step_add(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
              unsigned i);
void step_sub(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
              unsigned i);

/// Cycle i of Booth radix-2 iteration j. The product region doubles as a
/// sliding N+1-bit accumulator window at offset j, so no shift cycles exist.
void booth_step(PeState& pe, const RegOperand& multiplicand, const RegOperand& multiplier,
                const RegOperand& product, unsigned j, unsigned i);

// Whole operations: functional result plus the cycles they occupy.
Cycles add(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
           unsigned pipe_overhead);
Cycles sub(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
           unsigned pipe_overhead);
Cycles copy(PeState& pe, const RegOperand& src, const RegOperand& dst, unsigned pipe_overhead);
Cycles multiply_booth2(PeState& pe, const RegOperand& multiplicand, const RegOperand& multiplier,
                       const RegOperand& product, unsigned pipe_overhead);

/// Pre-checks shared by the fabric and the whole-op helpers above.
void check_two_operand(const BitRegisterFile& rf, const RegOperand& a, const RegOperand& b,
                       const RegOperand& dst);
void check_multiply(const BitRegisterFile& rf, const RegOperand& multiplicand,
                    const RegOperand& multiplier, const RegOperand& product);

constexpr Cycles bitserial_op_cycles(unsigned bits, unsigned pipe_overhead) {
  return Cycles{bits} + pipe_overhead;
}
constexpr Cycles booth2_cycles(unsigned n, unsigned pipe_overhead) {
  return Cycles{n} * (Cycles{n} + pipe_overhead);
}

}  // namespace pimgold
