#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgp/config.hpp"

namespace lgp {

/// The four register-transfer operations. Div2 halves the target register and
/// ignores the source operand (division is by the constant 2, never by a
/// register value).
enum class Operation : std::uint8_t { kAdd = 0, kSub, kMul, kDiv2 };
inline constexpr int kOperationCount = 4;

/// Where an instruction's read operand comes from: the register file, or the
/// external input vector (scaled by external_factor).
enum class OperandMode : std::uint8_t { kInternal = 0, kExternal };

struct Instruction {
  int target = 0;  // register index, always within the register file
  int source = 0;  // register index (Internal) or input feature index (External)
  Operation op = Operation::kAdd;
  OperandMode mode = OperandMode::kInternal;

  bool operator==(const Instruction&) const = default;
};

/// Register-file and input dimensions a program is built against.
struct ProgramShape {
  int action_registers = 1;   // the argmax prefix used for action selection
  int working_registers = 1;  // extra scratch registers
  int input_width = 1;        // features per external input

  int register_count() const { return action_registers + working_registers; }

  bool operator==(const ProgramShape&) const = default;
};

inline ProgramShape make_shape(const Hyperparameters& h) {
  return ProgramShape{h.n_actions, h.n_extras, h.n_inputs};
}

/// A linear register-machine program: an ordered instruction list plus its
/// register file. Value-like; copy freely. A single Program must not be
/// executed from two threads at once (execute writes the register file).
class Program {
 public:
  /// Throws std::invalid_argument if the instruction list is empty or any
  /// instruction indexes outside the shape's bounds.
  Program(std::vector<Instruction> instructions, ProgramShape shape);

  const std::vector<Instruction>& instructions() const { return instructions_; }
  const ProgramShape& shape() const { return shape_; }
  const std::vector<double>& registers() const { return registers_; }

  /// Runs the program on one input. Registers are zeroed first, so the result
  /// depends only on (instructions, input, external_factor); repeated calls
  /// give identical output. Every register stays finite: any non-finite
  /// intermediate is replaced by 0.
  const std::vector<double>& execute(std::span<const double> input,
                                     double external_factor);

  /// One instruction per line, e.g. "R[1] <- R[1] + R[$0]" ($ marks an
  /// external input index) or "R[0] <- R[0] / 2".
  std::string to_text() const;

  bool operator==(const Program& other) const {
    return instructions_ == other.instructions_ && shape_ == other.shape_;
  }

 private:
  std::vector<Instruction> instructions_;
  ProgramShape shape_;
  std::vector<double> registers_;
};

/// Index of the maximum among the first n_actions registers; ties break to the
/// lowest index. Result is always in [0, n_actions).
int best_action(std::span<const double> registers, int n_actions);

/// Argmax over the whole register file (the Q-learning "winning register").
int argmax_register(std::span<const double> registers);

}  // namespace lgp
