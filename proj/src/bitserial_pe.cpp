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

#include "pimgold/bitserial_pe.hpp"

#include <string>

#include "pimgold/errors.hpp"

namespace pimgold {

namespace {

std::string describe(const RegOperand& op) {
  return "[" + std::to_string(op.base) + ", " + std::to_string(op.end()) + ")";
}

// Destination may alias a source only when the regions are identical.
void check_alias(const RegOperand& src, const RegOperand& dst) {
  if (overlaps(src, dst) && !(src == dst)) {
    throw OverlapError("destination " + describe(dst) + " partially overlaps source " +
                       describe(src));
  }
}

}  // namespace

BitRegisterFile::BitRegisterFile(unsigned bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

void BitRegisterFile::check_cell(unsigned cell) const {
  if (cell >= bits_) {
    throw OutOfRange("bit-cell " + std::to_string(cell) + " outside register file of " +
                     std::to_string(bits_) + " cells");
  }
}

void BitRegisterFile::check(const RegOperand& op) const {
  if (op.width == 0) throw WidthError("zero-width operand at cell " + std::to_string(op.base));
  if (op.end() > bits_) {
    throw OutOfRange("operand " + describe(op) + " outside register file of " +
                     std::to_string(bits_) + " cells");
  }
}

std::uint64_t BitRegisterFile::load_unsigned(const RegOperand& op) const {
  check(op);
  if (op.width > 64) throw WidthError("host load wider than 64 bits");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < op.width; ++i) v |= std::uint64_t{get(op.base + i)} << i;
  return v;
}

std::int64_t BitRegisterFile::load_signed(const RegOperand& op) const {
  std::uint64_t v = load_unsigned(op);
  if (op.width < 64 && ((v >> (op.width - 1)) & 1u)) v |= ~std::uint64_t{0} << op.width;
  return static_cast<std::int64_t>(v);
}

void BitRegisterFile::store(const RegOperand& op, std::int64_t value) {
  check(op);
  if (op.width > 64) throw WidthError("host store wider than 64 bits");
  const auto u = static_cast<std::uint64_t>(value);
  for (unsigned i = 0; i < op.width; ++i) set(op.base + i, (u >> i) & 1u);
}

bool alu_bit(PeState& pe, AluOp op, bool a, bool b, bool first, bool msb) {
  const bool b_eff = (op == AluOp::Sub) ? !b : b;
  const bool carry_in = first ? (op == AluOp::Sub) : pe.carry;
  const FullAdd fa = full_add(a, b_eff, carry_in);
  pe.carry = fa.carry;
  if (msb && (carry_in != fa.carry)) pe.overflow = true;
  return fa.sum;
}

void step_add(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
              unsigned i) {
  if (i >= dst.width) throw OutOfRange("bit index " + std::to_string(i) + " >= width");
  const bool r = alu_bit(pe, AluOp::Add, read_extended(pe.regfile, a, i),
                         read_extended(pe.regfile, b, i), i == 0, i + 1 == dst.width);
  pe.regfile.set(dst.base + i, r);
}

void step_sub(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
              unsigned i) {
  if (i >= dst.width) throw OutOfRange("bit index " + std::to_string(i) + " >= width");
  const bool r = alu_bit(pe, AluOp::Sub, read_extended(pe.regfile, a, i),
                         read_extended(pe.regfile, b, i), i == 0, i + 1 == dst.width);
  pe.regfile.set(dst.base + i, r);
}

void booth_step(PeState& pe, const RegOperand& multiplicand, const RegOperand& multiplier,
                const RegOperand& product, unsigned j, unsigned i) {
  const unsigned n = multiplicand.width;
  auto& rf = pe.regfile;
  if (i == 0) {
    const bool q = rf.get(multiplier.base + j);
    const std::uint8_t prev = (j == 0) ? 0 : (pe.booth_pair >> 1) & 1u;
    pe.booth_pair = static_cast<std::uint8_t>((q ? 2u : 0u) | prev);
  }
  // 01: +M, 10: -M, 00/11: +0 (still occupies the full iteration).
  const bool subtract = pe.booth_pair == 0b10;
  const bool use_m = pe.booth_pair == 0b01 || subtract;

  const bool a = (j == 0) ? false : rf.get(product.base + j + i);
  const bool m = use_m && rf.get(multiplicand.base + i);
  const bool b_eff = subtract ? !m : m;
  const bool carry_in = (i == 0) ? subtract : pe.carry;
  const FullAdd fa = full_add(a, b_eff, carry_in);
  pe.carry = fa.carry;
  rf.set(product.base + j + i, fa.sum);
  if (i + 1 == n) {
    // Sign of the N+1-bit window: operands sign-extended by one bit.
    rf.set(product.base + j + n, a ^ b_eff ^ fa.carry);
  }
}

void check_two_operand(const BitRegisterFile& rf, const RegOperand& a, const RegOperand& b,
                       const RegOperand& dst) {
  rf.check(a);
  rf.check(b);
  rf.check(dst);
  check_alias(a, dst);
  check_alias(b, dst);
}

void check_multiply(const BitRegisterFile& rf, const RegOperand& multiplicand,
                    const RegOperand& multiplier, const RegOperand& product) {
  rf.check(multiplicand);
  rf.check(multiplier);
  rf.check(product);
  if (multiplicand.width != multiplier.width) {
    throw WidthError("multiplicand and multiplier widths differ (" +
                     std::to_string(multiplicand.width) + " vs " +
                     std::to_string(multiplier.width) + ")");
  }
  if (product.width != 2 * multiplicand.width) {
    throw WidthError("product width " + std::to_string(product.width) + " != 2N = " +
                     std::to_string(2 * multiplicand.width));
  }
  if (overlaps(product, multiplicand) || overlaps(product, multiplier)) {
    throw OverlapError("product " + describe(product) + " overlaps an operand");
  }
}

Cycles add(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
           unsigned pipe_overhead) {
  check_two_operand(pe.regfile, a, b, dst);
  pe.clear_flags();
  for (unsigned i = 0; i < dst.width; ++i) step_add(pe, a, b, dst, i);
  return bitserial_op_cycles(dst.width, pipe_overhead);
}

Cycles sub(PeState& pe, const RegOperand& a, const RegOperand& b, const RegOperand& dst,
           unsigned pipe_overhead) {
  check_two_operand(pe.regfile, a, b, dst);
  pe.clear_flags();
  for (unsigned i = 0; i < dst.width; ++i) step_sub(pe, a, b, dst, i);
  return bitserial_op_cycles(dst.width, pipe_overhead);
}

Cycles copy(PeState& pe, const RegOperand& src, const RegOperand& dst, unsigned pipe_overhead) {
  pe.regfile.check(src);
  pe.regfile.check(dst);
  check_alias(src, dst);
  pe.clear_flags();
  if (!(src == dst)) {
    for (unsigned i = 0; i < dst.width; ++i) {
      pe.regfile.set(dst.base + i, read_extended(pe.regfile, src, i));
    }
  }
  return bitserial_op_cycles(dst.width, pipe_overhead);
}

Cycles multiply_booth2(PeState& pe, const RegOperand& multiplicand, const RegOperand& multiplier,
                       const RegOperand& product, unsigned pipe_overhead) {
  check_multiply(pe.regfile, multiplicand, multiplier, product);
  pe.clear_flags();
  const unsigned n = multiplicand.width;
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < n; ++i) booth_step(pe, multiplicand, multiplier, product, j, i);
  }
  return booth2_cycles(n, pipe_overhead);
}

}  // namespace pimgold
