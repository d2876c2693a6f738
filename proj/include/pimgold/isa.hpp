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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pimgold {

/// 30-bit fabric instruction:
///   [29:26] opcode  [25:24] prec  [23:14] addr1  [13:4] addr2  [3:0] flags
enum class Opcode : std::uint8_t {
  Nop = 0,
  SetPtr = 1,    // ptr_reg <- addr1; width register <- addr2 when nonzero
  Select = 2,    // block enable <- predicate(flags; addr1, addr2)
  WriteIn = 3,   // prec bits from the data port into cells addr1.. of selected blocks
  ReadOut = 4,   // shift addr2+1 results (W bits at addr1 of the west PE) out
  Mov = 5,       // addr2 <- addr1
  Add = 6,       // ptr <- addr1 + addr2
  Sub = 7,       // ptr <- addr1 - addr2
  Mult = 8,      // ptr (2N bits) <- addr1 * addr2, Booth radix-2
  AccumBlk = 9,  // addr2 (W bits) <- sum over the block's PEs of addr1
  AccumRow = 10, // hop level `flags`: ptr <- addr1 + addr1 of block col + 2^flags
  End = 11,
};

inline constexpr unsigned kOpcodeCount = 12;

enum class PrecCode : std::uint8_t { Bits8 = 0, Bits16 = 1, Bits32 = 2, Pointer = 3 };

struct Instruction {
  Opcode opcode = Opcode::Nop;
  PrecCode prec = PrecCode::Bits8;
  std::uint16_t addr1 = 0;  // 10 bits
  std::uint16_t addr2 = 0;  // 10 bits
  std::uint8_t flags = 0;   // 4 bits

  std::uint32_t encode() const;
  /// Throws BadOperand for bits above 29 or an undefined opcode.
  static Instruction decode(std::uint32_t word);

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

inline constexpr std::uint16_t kAddrMask = 0x3FF;

bool is_multicycle(Opcode op);
/// Whether addr1 / addr2 hold register-file cell indices for this opcode.
bool uses_addr1(Opcode op);
bool uses_addr2(Opcode op);

std::string_view mnemonic(Opcode op);
std::optional<Opcode> parse_mnemonic(std::string_view text);

/// Width in bits selected by a precision code; Pointer defers to the width register.
std::optional<unsigned> prec_bits(PrecCode code);
/// Code for an explicit width, or Pointer when the width has no direct encoding.
PrecCode prec_code_for(unsigned bits);

/// Program text: one instruction per line, `#` comments, `key=value` operands
/// (prec, addr1, addr2, flags; aliases pred=, level=, count=, width=).
std::vector<Instruction> assemble(std::string_view text, unsigned regfile_bits);
std::string disassemble(const Instruction& inst);
std::string disassemble(std::span<const Instruction> program);

/// Little-endian 32-bit words, upper two bits zero.
std::vector<std::uint8_t> to_binary(std::span<const Instruction> program);
std::vector<Instruction> from_binary(std::span<const std::uint8_t> bytes);

}  // namespace pimgold
