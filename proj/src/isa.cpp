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

#include "pimgold/isa.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

#include "pimgold/errors.hpp"

namespace pimgold {

namespace {

constexpr std::array<std::string_view, kOpcodeCount> kMnemonics = {
    "NOP", "SETPTR", "SELECT", "WRITEIN", "READOUT", "MOV",
    "ADD", "SUB",    "MULT",   "ACCUMBLK", "ACCUMROW", "END"};

constexpr std::array<std::string_view, 5> kPredicates = {"ALL", "EQ", "COLMASK", "STRIDE",
                                                         "WINDOW"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

unsigned parse_number(std::string_view tok, unsigned line) {
  int base = 10;
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
    tok.remove_prefix(2);
    base = 16;
  }
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, base);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw BadOperand("line " + std::to_string(line) + ": '" + std::string(tok) +
                     "' is not a number");
  }
  return v;
}

std::uint16_t field10(std::string_view key, unsigned v, unsigned line) {
  if (v > kAddrMask) {
    throw BadOperand("line " + std::to_string(line) + ": " + std::string(key) + "=" +
                     std::to_string(v) + " does not fit in 10 bits");
  }
  return static_cast<std::uint16_t>(v);
}

}  // namespace

std::uint32_t Instruction::encode() const {
  return (std::uint32_t{static_cast<std::uint8_t>(opcode)} & 0xF) << 26 |
         (std::uint32_t{static_cast<std::uint8_t>(prec)} & 0x3) << 24 |
         (std::uint32_t{addr1} & kAddrMask) << 14 | (std::uint32_t{addr2} & kAddrMask) << 4 |
         (std::uint32_t{flags} & 0xF);
}

Instruction Instruction::decode(std::uint32_t word) {
  if (word >> 30) throw BadOperand("instruction word uses bits above 29");
  const unsigned op = (word >> 26) & 0xF;
  if (op >= kOpcodeCount) throw BadOperand("undefined opcode " + std::to_string(op));
  Instruction inst;
  inst.opcode = static_cast<Opcode>(op);
  inst.prec = static_cast<PrecCode>((word >> 24) & 0x3);
  inst.addr1 = static_cast<std::uint16_t>((word >> 14) & kAddrMask);
  inst.addr2 = static_cast<std::uint16_t>((word >> 4) & kAddrMask);
  inst.flags = static_cast<std::uint8_t>(word & 0xF);
  return inst;
}

bool is_multicycle(Opcode op) {
  switch (op) {
    case Opcode::Nop:
    case Opcode::SetPtr:
    case Opcode::Select:
    case Opcode::End:
      return false;
    default:
      return true;
  }
}

bool uses_addr1(Opcode op) {
  switch (op) {
    case Opcode::SetPtr:
    case Opcode::WriteIn:
    case Opcode::ReadOut:
    case Opcode::Mov:
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mult:
    case Opcode::AccumBlk:
    case Opcode::AccumRow:
      return true;
    default:
      return false;
  }
}

bool uses_addr2(Opcode op) {
  switch (op) {
    case Opcode::Mov:
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mult:
    case Opcode::AccumBlk:
      return true;
    default:
      return false;
  }
}

std::string_view mnemonic(Opcode op) { return kMnemonics.at(static_cast<std::size_t>(op)); }

std::optional<Opcode> parse_mnemonic(std::string_view text) {
  const std::string u = upper(text);
  for (std::size_t i = 0; i < kMnemonics.size(); ++i) {
    if (kMnemonics[i] == u) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

std::optional<unsigned> prec_bits(PrecCode code) {
  switch (code) {
    case PrecCode::Bits8: return 8;
    case PrecCode::Bits16: return 16;
    case PrecCode::Bits32: return 32;
    case PrecCode::Pointer: return std::nullopt;
  }
  return std::nullopt;
}

PrecCode prec_code_for(unsigned bits) {
  switch (bits) {
    case 8: return PrecCode::Bits8;
    case 16: return PrecCode::Bits16;
    case 32: return PrecCode::Bits32;
    default: return PrecCode::Pointer;
  }
}

std::vector<Instruction> assemble(std::string_view text, unsigned regfile_bits) {
  std::vector<Instruction> program;
  std::istringstream in{std::string(text)};
  std::string raw;
  unsigned line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto c = raw.find('#'); c != std::string::npos) raw.erase(c);
    std::istringstream tokens(raw);
    std::string head;
    if (!(tokens >> head)) continue;

    const auto op = parse_mnemonic(head);
    if (!op) {
      throw UnknownMnemonic("line " + std::to_string(line_no) + ": '" + head + "'");
    }
    Instruction inst;
    inst.opcode = *op;

    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size()) {
        throw BadOperand("line " + std::to_string(line_no) + ": expected key=value, got '" +
                         tok + "'");
      }
      const std::string key = upper(std::string_view(tok).substr(0, eq));
      const std::string_view value = std::string_view(tok).substr(eq + 1);

      if (key == "PREC") {
        if (upper(value) == "PTR") {
          inst.prec = PrecCode::Pointer;
        } else {
          const unsigned bits = parse_number(value, line_no);
          if (bits != 8 && bits != 16 && bits != 32) {
            throw BadOperand("line " + std::to_string(line_no) + ": prec=" +
                             std::to_string(bits) + " (expected 8, 16, 32 or ptr)");
          }
          inst.prec = prec_code_for(bits);
        }
      } else if (key == "ADDR1") {
        inst.addr1 = field10(key, parse_number(value, line_no), line_no);
      } else if (key == "ADDR2" || key == "WIDTH") {
        inst.addr2 = field10(key, parse_number(value, line_no), line_no);
      } else if (key == "COUNT") {
        const unsigned n = parse_number(value, line_no);
        if (n == 0) throw BadOperand("line " + std::to_string(line_no) + ": count=0");
        inst.addr2 = field10(key, n - 1, line_no);
      } else if (key == "FLAGS" || key == "LEVEL") {
        const unsigned f = parse_number(value, line_no);
        if (f > 0xF) {
          throw BadOperand("line " + std::to_string(line_no) + ": " + key +
                           " does not fit in 4 bits");
        }
        inst.flags = static_cast<std::uint8_t>(f);
      } else if (key == "PRED") {
        const std::string p = upper(value);
        bool found = false;
        for (std::size_t i = 0; i < kPredicates.size(); ++i) {
          if (kPredicates[i] == p) {
            inst.flags = static_cast<std::uint8_t>(i);
            found = true;
          }
        }
        if (!found) throw BadOperand("line " + std::to_string(line_no) + ": pred=" + p);
      } else {
        throw BadOperand("line " + std::to_string(line_no) + ": unknown operand key '" + key +
                         "'");
      }
    }

    if (uses_addr1(inst.opcode) && inst.addr1 >= regfile_bits) {
      throw BadOperand("line " + std::to_string(line_no) + ": addr1=" +
                       std::to_string(inst.addr1) + " outside " + std::to_string(regfile_bits) +
                       " cells");
    }
    if (uses_addr2(inst.opcode) && inst.addr2 >= regfile_bits) {
      throw BadOperand("line " + std::to_string(line_no) + ": addr2=" +
                       std::to_string(inst.addr2) + " outside " + std::to_string(regfile_bits) +
                       " cells");
    }
    if (inst.opcode == Opcode::Select && inst.flags >= kPredicates.size()) {
      throw BadOperand("line " + std::to_string(line_no) + ": SELECT predicate kind " +
                       std::to_string(inst.flags) + " undefined");
    }
    program.push_back(inst);
  }
  return program;
}

std::string disassemble(const Instruction& inst) {
  std::string out(mnemonic(inst.opcode));
  if (inst.opcode == Opcode::Nop || inst.opcode == Opcode::End) return out;
  if (is_multicycle(inst.opcode) || inst.prec != PrecCode::Bits8) {
    const auto bits = prec_bits(inst.prec);
    out += " prec=" + (bits ? std::to_string(*bits) : std::string("ptr"));
  }
  out += " addr1=" + std::to_string(inst.addr1);
  out += " addr2=" + std::to_string(inst.addr2);
  if (inst.opcode == Opcode::Select && inst.flags < kPredicates.size()) {
    out += " pred=" + std::string(kPredicates[inst.flags]);
  } else {
    out += " flags=" + std::to_string(inst.flags);
  }
  return out;
}

std::string disassemble(std::span<const Instruction> program) {
  std::string out;
  for (const auto& inst : program) out += disassemble(inst) + "\n";
  return out;
}

std::vector<std::uint8_t> to_binary(std::span<const Instruction> program) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(program.size() * 4);
  for (const auto& inst : program) {
    const std::uint32_t w = inst.encode();
    for (int s = 0; s < 32; s += 8) bytes.push_back(static_cast<std::uint8_t>(w >> s));
  }
  return bytes;
}

std::vector<Instruction> from_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 4 != 0) throw BadOperand("binary program length is not a multiple of 4");
  std::vector<Instruction> program;
  for (std::size_t i = 0; i < bytes.size(); i += 4) {
    const std::uint32_t w = std::uint32_t{bytes[i]} | std::uint32_t{bytes[i + 1]} << 8 |
                            std::uint32_t{bytes[i + 2]} << 16 | std::uint32_t{bytes[i + 3]} << 24;
    program.push_back(Instruction::decode(w));
  }
  return program;
}

}  // namespace pimgold
