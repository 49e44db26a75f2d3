#include "lgp/program.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lgp {

namespace {

void check_bounds(const std::vector<Instruction>& instructions,
                  const ProgramShape& shape) {
  if (instructions.empty()) {
    throw std::invalid_argument("program must hold at least one instruction");
  }
  if (shape.action_registers < 1 || shape.working_registers < 1 ||
      shape.input_width < 1) {
    throw std::invalid_argument("program shape dimensions must be positive");
  }
  const int n_registers = shape.register_count();
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const Instruction& ins = instructions[i];
    if (ins.target < 0 || ins.target >= n_registers) {
      throw std::invalid_argument("instruction " + std::to_string(i) +
                                  ": target register " +
                                  std::to_string(ins.target) + " out of bounds");
    }
    const int source_bound = ins.mode == OperandMode::kExternal
                                 ? shape.input_width
                                 : n_registers;
    if (ins.source < 0 || ins.source >= source_bound) {
      throw std::invalid_argument("instruction " + std::to_string(i) +
                                  ": source index " +
                                  std::to_string(ins.source) + " out of bounds");
    }
  }
}

}  // namespace

Program::Program(std::vector<Instruction> instructions, ProgramShape shape)
    : instructions_(std::move(instructions)),
      shape_(shape),
      registers_(static_cast<std::size_t>(shape.register_count()), 0.0) {
  check_bounds(instructions_, shape_);
}

const std::vector<double>& Program::execute(std::span<const double> input,
                                            double external_factor) {
  assert(static_cast<int>(input.size()) == shape_.input_width);
  registers_.assign(registers_.size(), 0.0);
  for (const Instruction& ins : instructions_) {
    double& target = registers_[static_cast<std::size_t>(ins.target)];
    const double operand =
        ins.mode == OperandMode::kExternal
            ? external_factor * input[static_cast<std::size_t>(ins.source)]
            : registers_[static_cast<std::size_t>(ins.source)];
    switch (ins.op) {
      case Operation::kAdd: target += operand; break;
      case Operation::kSub: target -= operand; break;
      case Operation::kMul: target *= operand; break;
      case Operation::kDiv2: target /= 2.0; break;
    }
    if (!std::isfinite(target)) target = 0.0;
  }
  return registers_;
}

std::string Program::to_text() const {
  std::ostringstream out;
  for (const Instruction& ins : instructions_) {
    out << "R[" << ins.target << "] <- R[" << ins.target << "] ";
    switch (ins.op) {
      case Operation::kAdd: out << "+ "; break;
      case Operation::kSub: out << "- "; break;
      case Operation::kMul: out << "* "; break;
      case Operation::kDiv2:
        out << "/ 2\n";
        continue;
    }
    if (ins.mode == OperandMode::kExternal) {
      out << "R[$" << ins.source << "]\n";
    } else {
      out << "R[" << ins.source << "]\n";
    }
  }
  return out.str();
}

int best_action(std::span<const double> registers, int n_actions) {
  assert(n_actions >= 1 &&
         n_actions <= static_cast<int>(registers.size()));
  return argmax_register(registers.first(static_cast<std::size_t>(n_actions)));
}

int argmax_register(std::span<const double> registers) {
  assert(!registers.empty());
  int best = 0;
  for (int i = 1; i < static_cast<int>(registers.size()); ++i) {
    if (registers[static_cast<std::size_t>(i)] >
        registers[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

}  // namespace lgp
