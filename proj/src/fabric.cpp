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

#include "pimgold/fabric.hpp"

#include <bit>
#include <random>

#include "pimgold/errors.hpp"

namespace pimgold {

Cycles& CycleReport::operator[](Phase p) {
  switch (p) {
    case Phase::Load: return load;
    case Phase::Multiply: return multiply;
    case Phase::InBlock: return inblock;
    case Phase::Array: return array;
    case Phase::ShiftOut: return shiftout;
    case Phase::Controller: return controller;
  }
  return controller;
}

nlohmann::ordered_json cycle_report_json(const CycleReport& r) {
  nlohmann::ordered_json j;
  j["load"] = r.load;
  j["multiply"] = r.multiply;
  j["inblock"] = r.inblock;
  j["array"] = r.array;
  j["shiftout"] = r.shiftout;
  j["controller"] = r.controller;
  j["total"] = r.total();
  return j;
}

Cycles reduction_cycles(const CycleReport& r) {
  return r.inblock + r.array + r.accumulate_controller;
}

Phase phase_of(Opcode op) {
  switch (op) {
    case Opcode::WriteIn: return Phase::Load;
    case Opcode::ReadOut: return Phase::ShiftOut;
    case Opcode::Mov:
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mult: return Phase::Multiply;
    case Opcode::AccumBlk: return Phase::InBlock;
    case Opcode::AccumRow: return Phase::Array;
    default: return Phase::Controller;
  }
}

std::vector<MicroOp> expand(Opcode op, const OpParams& params, const ValidatedConfig& cfg) {
  using K = MicroOp::Kind;
  const Phase ph = phase_of(op);
  const unsigned w = params.width;
  const unsigned acc_w = cfg.accum_width();
  const unsigned o = cfg.pipe_overhead();
  std::vector<MicroOp> ops;
  auto bit_run = [&](K kind, unsigned bits, unsigned j) {
    for (unsigned i = 0; i < bits; ++i) ops.push_back({kind, ph, i, j});
  };
  auto bubbles = [&] {
    for (unsigned i = 0; i < o; ++i) ops.push_back({K::Bubble, ph, i, 0});
  };

  switch (op) {
    case Opcode::WriteIn:
      bit_run(K::WriteBit, w, 0);
      break;
    case Opcode::ReadOut:
      bit_run(K::ShiftOut, params.addr2 + 1, 0);
      break;
    case Opcode::Mov:
      bit_run(K::MovBit, w, 0);
      bubbles();
      break;
    case Opcode::Add:
      bit_run(K::AddBit, w, 0);
      bubbles();
      break;
    case Opcode::Sub:
      bit_run(K::SubBit, w, 0);
      bubbles();
      break;
    case Opcode::Mult:
      ops.reserve(booth2_cycles(w, o));
      for (unsigned j = 0; j < w; ++j) {
        bit_run(K::BoothBit, w, j);
        bubbles();
      }
      break;
    case Opcode::AccumBlk:
      for (unsigned level = 0; level < cfg.log2_k(); ++level) {
        bit_run(K::ReduceBit, acc_w, level);
        bubbles();
      }
      break;
    case Opcode::AccumRow:
      bit_run(K::HopCycle, (1u << params.flags) + acc_w, params.flags);
      bubbles();
      break;
    default:
      break;
  }
  return ops;
}

Fabric::Fabric(const ValidatedConfig& cfg) : cfg_(cfg) {
  const unsigned k = cfg.k();
  const unsigned bits = cfg.arch().regfile_bits;
  blocks_.reserve(cfg.total_blocks());
  for (unsigned r = 0; r < rows(); ++r) {
    for (unsigned c = 0; c < cols(); ++c) blocks_.emplace_back(BlockId{r, c}, k, bits);
  }
  ctl_.stages = cfg.arch().stages;
  refresh_selection();
}

PimBlock& Fabric::block(unsigned row, unsigned col) {
  if (row >= rows() || col >= cols()) throw OutOfRange("block coordinate outside the fabric");
  return blocks_[std::size_t{row} * cols() + col];
}

const PimBlock& Fabric::block(unsigned row, unsigned col) const {
  if (row >= rows() || col >= cols()) throw OutOfRange("block coordinate outside the fabric");
  return blocks_[std::size_t{row} * cols() + col];
}

std::span<PimBlock> Fabric::row(unsigned r) {
  if (r >= rows()) throw OutOfRange("block row outside the fabric");
  return std::span<PimBlock>(blocks_).subspan(std::size_t{r} * cols(), cols());
}

void Fabric::host_write(unsigned row, unsigned pe_col, const RegOperand& op, std::int64_t value) {
  block(row, pe_col / cfg_.k()).pe(pe_col % cfg_.k()).regfile.store(op, value);
}

std::int64_t Fabric::host_read(unsigned row, unsigned pe_col, const RegOperand& op) const {
  return block(row, pe_col / cfg_.k()).pe(pe_col % cfg_.k()).regfile.load_signed(op);
}

void Fabric::refresh_selection() {
  enabled_.clear();
  active_rows_.clear();
  for (unsigned r = 0; r < rows(); ++r) {
    bool any = false;
    for (unsigned c = 0; c < cols(); ++c) {
      const std::size_t idx = std::size_t{r} * cols() + c;
      if (blocks_[idx].enabled()) {
        enabled_.push_back(idx);
        any = true;
      }
    }
    if (any) active_rows_.push_back(r);
  }
}

void Fabric::latch(const Instruction& inst) {
  ctl_.opcode = inst.opcode;
  OpParams p;
  p.addr1 = inst.addr1;
  p.addr2 = inst.addr2;
  p.flags = inst.flags;
  p.ptr = blocks_.front().ptr_reg();
  if (is_multicycle(inst.opcode)) {
    if (const auto bits = prec_bits(inst.prec)) {
      p.width = *bits;
    } else if (ctl_.width_reg != 0) {
      p.width = ctl_.width_reg;
    } else {
      throw BadOperand(std::string(mnemonic(inst.opcode)) +
                       ": pointer-width precision with an unset width register");
    }
  }
  ctl_.op_params = p;
}

void Fabric::apply_single(const Instruction& inst) {
  switch (inst.opcode) {
    case Opcode::SetPtr:
      for (auto& blk : blocks_) blk.set_ptr_reg(inst.addr1);
      if (inst.addr2 != 0) ctl_.width_reg = inst.addr2;
      break;
    case Opcode::Select: {
      IdPredicate pred;
      switch (inst.flags) {
        case 0: pred = IdPredicate::all(); break;
        case 1: pred = IdPredicate::eq(inst.addr1, inst.addr2); break;
        case 2: pred = IdPredicate::col_mask(std::uint32_t{inst.addr1} |
                                             std::uint32_t{inst.addr2} << 10);
          break;
        case 3: pred = IdPredicate::stride(inst.addr1, inst.addr2); break;
        case 4: pred = IdPredicate::window(inst.addr1, inst.addr2); break;
        default:
          throw BadOperand("SELECT predicate kind " + std::to_string(inst.flags) + " undefined");
      }
      for (auto& blk : blocks_) blk.set_select(pred);
      refresh_selection();
      break;
    }
    default:
      break;
  }
}

void Fabric::check_multicycle() {
  const OpParams& p = ctl_.op_params;
  const auto& rf = blocks_.front().pe(0).regfile;
  const unsigned w = p.width;
  const unsigned acc_w = cfg_.accum_width();
  for (const std::size_t idx : enabled_) blocks_[idx].clear_flags();

  switch (ctl_.opcode) {
    case Opcode::WriteIn:
      rf.check({p.addr1, w});
      if (input_.size() < w) {
        throw BadOperand("WRITEIN needs " + std::to_string(w) + " data-port words, " +
                         std::to_string(input_.size()) + " queued");
      }
      break;
    case Opcode::ReadOut: {
      const unsigned count = p.addr2 + 1;
      if (count > rows()) {
        throw BadOperand("READOUT of " + std::to_string(count) + " rows from a " +
                         std::to_string(rows()) + "-row fabric");
      }
      const RegOperand src{p.addr1, acc_w};
      rf.check(src);
      column_shift_.clear();
      for (unsigned r = 0; r < count; ++r) {
        column_shift_.push_back(block(r, 0).pe(0).regfile.load_signed(src));
      }
      break;
    }
    case Opcode::Mov: {
      const RegOperand src{p.addr1, w}, dst{p.addr2, w};
      rf.check(src);
      rf.check(dst);
      if (overlaps(src, dst) && !(src == dst)) {
        throw OverlapError("MOV source and destination partially overlap");
      }
      break;
    }
    case Opcode::Add:
    case Opcode::Sub:
      check_two_operand(rf, {p.addr1, w}, {p.addr2, w}, {p.ptr, w});
      break;
    case Opcode::Mult:
      check_multiply(rf, {p.addr1, w}, {p.addr2, w}, {p.ptr, 2 * w});
      break;
    case Opcode::AccumBlk: {
      const RegOperand src{p.addr1, w}, dst{p.addr2, acc_w};
      blocks_.front().check_inblock(src, dst, acc_w);
      for (const std::size_t idx : enabled_) {
        if (blocks_[idx].truncation_overflow(src, acc_w)) {
          const auto& id = blocks_[idx].id();
          throw OverflowError("block (" + std::to_string(id.row) + "," + std::to_string(id.col) +
                              ") holds a " + std::to_string(w) + "-bit value that exceeds the " +
                              std::to_string(acc_w) + "-bit accumulator");
        }
      }
      break;
    }
    case Opcode::AccumRow: {
      const unsigned d = 1u << p.flags;
      if (d >= cols()) {
        throw TopologyError("hop distance " + std::to_string(d) + " crosses the fabric edge of a " +
                            std::to_string(cols()) + "-block row");
      }
      const RegOperand acc{p.addr1, acc_w}, dst{p.ptr, acc_w};
      rf.check(acc);
      rf.check(dst);
      if (overlaps(acc, dst) && !(acc == dst)) {
        throw OverlapError("ACCUMROW accumulator and destination partially overlap");
      }
      for (auto& blk : blocks_) blk.set_link(false);
      report_.accumulate_destination = p.ptr;
      break;
    }
    default:
      break;
  }
}

void Fabric::tick(const MicroOp& op) {
  using K = MicroOp::Kind;
  const OpParams& p = ctl_.op_params;
  const unsigned w = p.width;
  const unsigned acc_w = cfg_.accum_width();

  switch (op.kind) {
    case K::Bubble:
      break;
    case K::WriteBit: {
      const std::uint64_t word = input_.front();
      input_.pop_front();
      for (const std::size_t idx : enabled_) {
        auto pes = blocks_[idx].pes();
        for (unsigned l = 0; l < pes.size(); ++l) {
          pes[l].regfile.set(p.addr1 + op.i, (word >> l) & 1u);
        }
      }
      break;
    }
    case K::MovBit:
      for (const std::size_t idx : enabled_) {
        for (auto& pe : blocks_[idx].pes()) {
          pe.regfile.set(p.addr2 + op.i, pe.regfile.get(p.addr1 + op.i));
        }
      }
      break;
    case K::AddBit:
    case K::SubBit: {
      const RegOperand a{p.addr1, w}, b{p.addr2, w}, dst{p.ptr, w};
      for (const std::size_t idx : enabled_) {
        for (auto& pe : blocks_[idx].pes()) {
          if (op.kind == K::AddBit) step_add(pe, a, b, dst, op.i);
          else step_sub(pe, a, b, dst, op.i);
        }
      }
      break;
    }
    case K::BoothBit: {
      const RegOperand m{p.addr1, w}, q{p.addr2, w}, prod{p.ptr, 2 * w};
      for (const std::size_t idx : enabled_) {
        for (auto& pe : blocks_[idx].pes()) booth_step(pe, m, q, prod, op.j, op.i);
      }
      break;
    }
    case K::ReduceBit: {
      const RegOperand src{p.addr1, w}, dst{p.addr2, acc_w};
      for (const std::size_t idx : enabled_) blocks_[idx].inblock_step(src, dst, op.j, op.i);
      break;
    }
    case K::HopCycle: {
      const RegOperand acc{p.addr1, acc_w}, dst{p.ptr, acc_w};
      for (const unsigned r : active_rows_) {
        hop_cycle(row(r), acc, dst, 1u << p.flags, op.i, acc_w);
      }
      break;
    }
    case K::ShiftOut:
      output_.push_back(column_shift_.front());
      column_shift_.pop_front();
      break;
  }
}

void Fabric::finish_multicycle() {
  if (ctl_.opcode != Opcode::AccumBlk && ctl_.opcode != Opcode::AccumRow) return;
  for (const std::size_t idx : enabled_) {
    const auto& blk = blocks_[idx];
    for (const auto& pe : blk.pes()) {
      if (pe.overflow) {
        throw OverflowError(std::string(mnemonic(ctl_.opcode)) + " overflowed the " +
                            std::to_string(cfg_.accum_width()) + "-bit accumulator in block (" +
                            std::to_string(blk.id().row) + "," + std::to_string(blk.id().col) +
                            ")");
      }
    }
  }
}

Cycles Fabric::execute(const Instruction& inst) {
  latch(inst);
  ++report_.instructions;
  if (!is_multicycle(inst.opcode)) {
    ctl_.fsm = ControllerState::Fsm::SingleCycle;
    apply_single(inst);
    report_.controller += 1;
    ctl_.cycle_count += 1;
    ctl_.fsm = ControllerState::Fsm::Idle;
    return 1;
  }

  ctl_.fsm = ControllerState::Fsm::MultiCycle;
  // Op-Params load.
  Cycles cycles = 1;
  report_.controller += 1;
  if (inst.opcode == Opcode::AccumBlk || inst.opcode == Opcode::AccumRow) {
    report_.accumulate_controller += 1;
  }
  check_multicycle();
  for (const MicroOp& op : expand(inst.opcode, ctl_.op_params, cfg_)) {
    tick(op);
    report_[op.phase] += 1;
    ++cycles;
  }
  finish_multicycle();
  ctl_.cycle_count += cycles;
  ctl_.fsm = ControllerState::Fsm::Idle;
  return cycles;
}

const CycleReport& Fabric::run(std::span<const Instruction> program) {
  report_ = CycleReport{};
  const Cycles fill = Cycles{cfg_.arch().fanout_levels} + ctl_.stages.count();
  report_.controller += fill;
  ctl_.cycle_count += fill;
  for (const auto& inst : program) {
    execute(inst);
    if (inst.opcode == Opcode::End) break;
  }
  return report_;
}

namespace {

__extension__ typedef __int128 wide_t;

unsigned ceil_log2(unsigned x) { return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1)); }

bool supported_precision(unsigned n) { return n == 4 || n == 8 || n == 16 || n == 32; }

unsigned magnitude_bits(unsigned cols, unsigned n, unsigned accum_width) {
  const unsigned c = ceil_log2(cols);
  const unsigned headroom = accum_width > c ? (accum_width - c) / 2 : 1;
  return std::max(1u, std::min(n, headroom));
}

std::int64_t draw(std::mt19937_64& gen, unsigned m) {
  const std::uint64_t span = std::uint64_t{1} << m;
  return static_cast<std::int64_t>(gen() % span) - static_cast<std::int64_t>(span / 2);
}

}  // namespace

GemvProblem random_problem(unsigned rows, unsigned cols, unsigned n, std::uint64_t seed,
                           unsigned accum_width) {
  GemvProblem prob;
  prob.rows = rows;
  prob.cols = cols;
  prob.precision = n;
  const unsigned m = magnitude_bits(cols, n, accum_width);
  std::mt19937_64 gen(seed);
  prob.matrix.resize(std::size_t{rows} * cols);
  for (auto& v : prob.matrix) v = draw(gen, m);
  prob.vector.resize(cols);
  for (auto& v : prob.vector) v = draw(gen, m);
  return prob;
}

GemvProblem identity_problem(unsigned d, unsigned n, std::uint64_t seed, unsigned accum_width) {
  GemvProblem prob;
  prob.rows = d;
  prob.cols = d;
  prob.precision = n;
  prob.matrix.assign(std::size_t{d} * d, 0);
  for (unsigned i = 0; i < d; ++i) prob.matrix[std::size_t{i} * d + i] = 1;
  std::mt19937_64 gen(seed);
  const unsigned m = magnitude_bits(d, n, accum_width);
  prob.vector.resize(d);
  for (auto& v : prob.vector) v = draw(gen, m);
  return prob;
}

std::vector<std::int64_t> reference_gemv(const GemvProblem& prob) {
  std::vector<std::int64_t> y(prob.rows);
  for (unsigned i = 0; i < prob.rows; ++i) {
    wide_t s = 0;
    for (unsigned j = 0; j < prob.cols; ++j) s += wide_t{prob.at(i, j)} * prob.vector[j];
    if (s > INT64_MAX || s < INT64_MIN) throw OverflowError("reference sum exceeds 64 bits");
    y[i] = static_cast<std::int64_t>(s);
  }
  return y;
}

GemvLayout gemv_layout(const ValidatedConfig& cfg, unsigned n) {
  GemvLayout l;
  l.mat = {0, n};
  l.vec = {n, n};
  l.prod = {2 * n, 2 * n};
  l.acc = {4 * n, cfg.accum_width()};
  if (l.acc.end() > cfg.arch().regfile_bits) {
    throw MappingError("N=" + std::to_string(n) + " needs " + std::to_string(l.acc.end()) +
                       " register cells, the block has " +
                       std::to_string(cfg.arch().regfile_bits));
  }
  return l;
}

void check_mapping(const ValidatedConfig& cfg, const GemvProblem& prob) {
  if (prob.rows == 0 || prob.cols == 0) throw MappingError("empty GEMV problem");
  if (!supported_precision(prob.precision)) {
    throw MappingError("precision " + std::to_string(prob.precision) +
                       " not in {4, 8, 16, 32}");
  }
  if (prob.precision > cfg.arch().max_precision) {
    throw MappingError("precision " + std::to_string(prob.precision) + " exceeds max_precision " +
                       std::to_string(cfg.arch().max_precision));
  }
  if (prob.rows > cfg.block_rows() || prob.rows > kAddrMask) {
    throw MappingError(std::to_string(prob.rows) + " matrix rows exceed the " +
                       std::to_string(cfg.block_rows()) + " block rows of the fabric");
  }
  if (prob.cols > cfg.pe_columns()) {
    throw MappingError(std::to_string(prob.cols) + " matrix columns exceed the " +
                       std::to_string(cfg.pe_columns()) + " PE columns of the fabric");
  }
  if (prob.matrix.size() != std::size_t{prob.rows} * prob.cols ||
      prob.vector.size() != prob.cols) {
    throw MappingError("matrix/vector sizes do not match the stated dimensions");
  }
  const std::int64_t hi = (std::int64_t{1} << (prob.precision - 1)) - 1;
  const std::int64_t lo = -hi - 1;
  auto in_range = [&](std::int64_t v) { return v >= lo && v <= hi; };
  for (auto v : prob.matrix) {
    if (!in_range(v)) throw OutOfRange("matrix element " + std::to_string(v) + " exceeds N bits");
  }
  for (auto v : prob.vector) {
    if (!in_range(v)) throw OutOfRange("vector element " + std::to_string(v) + " exceeds N bits");
  }
  gemv_layout(cfg, prob.precision);
}

std::vector<Instruction> gemv_program(const ValidatedConfig& cfg, unsigned rows, unsigned cols,
                                      unsigned n) {
  const GemvLayout l = gemv_layout(cfg, n);
  const unsigned k = cfg.k();
  const unsigned p = (cols + k - 1) / k;
  const unsigned levels = ceil_log2(p);
  auto u16 = [](unsigned v) { return static_cast<std::uint16_t>(v); };
  auto u8 = [](unsigned v) { return static_cast<std::uint8_t>(v); };

  std::vector<Instruction> prog;
  // Product pointer; width register covers N=4, which has no direct code.
  prog.push_back({Opcode::SetPtr, PrecCode::Bits8, u16(l.prod.base), u16(n), 0});
  for (unsigned c = 0; c < p; ++c) {
    prog.push_back({Opcode::Select, PrecCode::Bits8, IdPredicate::kAny, u16(c), 1});
    prog.push_back({Opcode::WriteIn, prec_code_for(n), u16(l.vec.base), 0, 0});
  }
  prog.push_back({Opcode::Select, PrecCode::Bits8, u16(rows), u16(p), 4});
  prog.push_back({Opcode::Mult, prec_code_for(n), u16(l.mat.base), u16(l.vec.base), 0});
  // Accumulate in place; width register now holds the 2N-bit product width.
  prog.push_back({Opcode::SetPtr, PrecCode::Bits8, u16(l.acc.base), u16(2 * n), 0});
  prog.push_back({Opcode::AccumBlk, prec_code_for(2 * n), u16(l.prod.base), u16(l.acc.base), 0});
  for (unsigned lvl = 0; lvl < levels; ++lvl) {
    prog.push_back({Opcode::AccumRow, PrecCode::Bits8, u16(l.acc.base), 0, u8(lvl)});
  }
  prog.push_back({Opcode::ReadOut, PrecCode::Bits8, u16(l.acc.base), u16(rows - 1), 0});
  prog.push_back({Opcode::End, PrecCode::Bits8, 0, 0, 0});
  return prog;
}

GemvResult run_gemv(const ValidatedConfig& cfg, const GemvProblem& prob) {
  check_mapping(cfg, prob);
  const unsigned n = prob.precision;
  const unsigned k = cfg.k();
  const GemvLayout l = gemv_layout(cfg, n);
  const unsigned p = (prob.cols + k - 1) / k;

  Fabric fab(cfg);
  for (unsigned i = 0; i < prob.rows; ++i) {
    for (unsigned j = 0; j < prob.cols; ++j) fab.host_write(i, j, l.mat, prob.at(i, j));
  }
  for (unsigned c = 0; c < p; ++c) {
    for (unsigned b = 0; b < n; ++b) {
      std::uint64_t word = 0;
      for (unsigned lane = 0; lane < k; ++lane) {
        const unsigned j = c * k + lane;
        if (j < prob.cols && ((static_cast<std::uint64_t>(prob.vector[j]) >> b) & 1u)) {
          word |= std::uint64_t{1} << lane;
        }
      }
      fab.push_input(word);
    }
  }

  const auto program = gemv_program(cfg, prob.rows, prob.cols, n);
  GemvResult res;
  res.report = fab.run(program);
  res.y = fab.output();
  return res;
}

}  // namespace pimgold
