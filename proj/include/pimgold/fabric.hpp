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
#include <deque>
#include <span>
#include <vector>

#include "json.hpp"
#include "pimgold/arch_config.hpp"
#include "pimgold/isa.hpp"
#include "pimgold/pim_block.hpp"

namespace pimgold {

enum class Phase : std::uint8_t { Load, Multiply, InBlock, Array, ShiftOut, Controller };

struct CycleReport {
  Cycles load = 0;
  Cycles multiply = 0;
  Cycles inblock = 0;
  Cycles array = 0;
  Cycles shiftout = 0;
  Cycles controller = 0;

  // Audit fields, not part of the serialized contract.
  Cycles accumulate_controller = 0;     // Op-Params cycles of ACCUMBLK/ACCUMROW
  unsigned accumulate_destination = 0;  // pointer register used by ACCUMROW
  std::uint64_t instructions = 0;

  Cycles total() const { return load + multiply + inblock + array + shiftout + controller; }
  Cycles& operator[](Phase p);

  friend bool operator==(const CycleReport&, const CycleReport&) = default;
};

/// {load, multiply, inblock, array, shiftout, controller, total}
nlohmann::ordered_json cycle_report_json(const CycleReport& r);

/// In-block + array-level + accumulation-related controller cycles.
Cycles reduction_cycles(const CycleReport& r);

struct OpParams {
  unsigned width = 0;  // resolved operand width in bits
  unsigned addr1 = 0;
  unsigned addr2 = 0;
  unsigned flags = 0;
  unsigned ptr = 0;    // pointer register snapshot
};

struct ControllerState {
  enum class Fsm : std::uint8_t { Idle, SingleCycle, MultiCycle };

  Fsm fsm = Fsm::Idle;
  Opcode opcode = Opcode::Nop;
  OpParams op_params;
  unsigned width_reg = 0;
  Cycles cycle_count = 0;
  ControllerStages stages;
};

/// One cycle of a multicycle instruction as driven onto the fabric.
struct MicroOp {
  enum class Kind : std::uint8_t {
    Bubble,  // pipeline fill of the bit-serial datapath
    WriteBit,
    MovBit,
    AddBit,
    SubBit,
    BoothBit,
    ReduceBit,
    HopCycle,
    ShiftOut,
  };
  Kind kind = Kind::Bubble;
  Phase phase = Phase::Controller;
  unsigned i = 0;  // bit index or cycle within a hop level
  unsigned j = 0;  // Booth iteration or reduction level
};

Phase phase_of(Opcode op);

/// Cycle-by-cycle expansion of a latched multicycle instruction.
std::vector<MicroOp> expand(Opcode op, const OpParams& params, const ValidatedConfig& cfg);

/// The whole fabric: block_rows x block_cols PIM blocks, a host data-in port
/// feeding WRITEIN and a west-edge column shift register feeding READOUT.
class Fabric {
 public:
  explicit Fabric(const ValidatedConfig& cfg);

  const ValidatedConfig& config() const { return cfg_; }
  unsigned rows() const { return cfg_.block_rows(); }
  unsigned cols() const { return cfg_.block_cols(); }

  PimBlock& block(unsigned row, unsigned col);
  const PimBlock& block(unsigned row, unsigned col) const;
  std::span<PimBlock> row(unsigned r);

  /// Host-side register access by (block row, PE column); never cycle-charged.
  void host_write(unsigned row, unsigned pe_col, const RegOperand& op, std::int64_t value);
  std::int64_t host_read(unsigned row, unsigned pe_col, const RegOperand& op) const;

  /// Data-in port: one word per WRITEIN cycle, bit l goes to PE lane l.
  void push_input(std::uint64_t lanes) { input_.push_back(lanes); }
  std::size_t pending_input() const { return input_.size(); }
  /// Values shifted out by READOUT, oldest first.
  const std::vector<std::int64_t>& output() const { return output_; }

  const ControllerState& controller() const { return ctl_; }
  const CycleReport& report() const { return report_; }

  /// Issues one instruction and runs it to completion; returns its cycles.
  Cycles execute(const Instruction& inst);
  /// Resets the report, charges the controller pipeline fill, then runs until END.
  const CycleReport& run(std::span<const Instruction> program);

 private:
  void latch(const Instruction& inst);
  void apply_single(const Instruction& inst);
  void check_multicycle();
  void tick(const MicroOp& op);
  void finish_multicycle();
  void refresh_selection();

  ValidatedConfig cfg_;
  std::vector<PimBlock> blocks_;
  std::vector<std::size_t> enabled_;    // indices into blocks_
  std::vector<unsigned> active_rows_;   // rows with at least one enabled block
  std::deque<std::uint64_t> input_;
  std::uint64_t write_word_ = 0;
  std::deque<std::int64_t> column_shift_;
  std::vector<std::int64_t> output_;
  ControllerState ctl_;
  CycleReport report_;
};

struct GemvProblem {
  unsigned rows = 0;
  unsigned cols = 0;
  unsigned precision = 8;
  std::vector<std::int64_t> matrix;  // row-major rows x cols
  std::vector<std::int64_t> vector;  // cols

  std::int64_t at(unsigned i, unsigned j) const { return matrix[std::size_t{i} * cols + j]; }
};

/// Seeded problem whose values are bounded so no partial sum exceeds a
/// signed accum_width-bit accumulator.
GemvProblem random_problem(unsigned rows, unsigned cols, unsigned n, std::uint64_t seed,
                           unsigned accum_width = 32);
/// Identity matrix with a seeded random vector.
GemvProblem identity_problem(unsigned d, unsigned n, std::uint64_t seed,
                             unsigned accum_width = 32);
/// Plain nested-loop product in 128-bit arithmetic.
std::vector<std::int64_t> reference_gemv(const GemvProblem& prob);

struct GemvLayout {
  RegOperand mat;
  RegOperand vec;
  RegOperand prod;
  RegOperand acc;
};

/// Throws MappingError when the layout exceeds the register file.
GemvLayout gemv_layout(const ValidatedConfig& cfg, unsigned n);
/// Throws MappingError when the problem does not fit the fabric.
void check_mapping(const ValidatedConfig& cfg, const GemvProblem& prob);

std::vector<Instruction> gemv_program(const ValidatedConfig& cfg, unsigned rows, unsigned cols,
                                      unsigned n);

struct GemvResult {
  std::vector<std::int64_t> y;
  CycleReport report;
};

/// Matrix row i lives in block row i; column j in block column j / k, lane j % k.
/// The matrix is preloaded weight-stationary; the vector is streamed by WRITEIN.
GemvResult run_gemv(const ValidatedConfig& cfg, const GemvProblem& prob);

}  // namespace pimgold
