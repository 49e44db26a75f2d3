#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lgp/program.hpp"

using lgp::Instruction;
using lgp::OperandMode;
using lgp::Operation;
using lgp::Program;
using lgp::ProgramShape;

namespace {

Instruction make(int target, int source, Operation op, OperandMode mode) {
  Instruction ins;
  ins.target = target;
  ins.source = source;
  ins.op = op;
  ins.mode = mode;
  return ins;
}

}  // namespace

TEST_CASE("construction rejects empty instruction lists") {
  CHECK_THROWS_AS(Program({}, ProgramShape{2, 1, 4}), std::invalid_argument);
}

TEST_CASE("construction rejects out-of-bounds indices") {
  const ProgramShape shape{2, 1, 4};  // 3 registers, 4 inputs
  CHECK_THROWS_AS(
      Program({make(3, 0, Operation::kAdd, OperandMode::kInternal)}, shape),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Program({make(-1, 0, Operation::kAdd, OperandMode::kInternal)}, shape),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Program({make(0, 3, Operation::kAdd, OperandMode::kInternal)}, shape),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Program({make(0, 4, Operation::kAdd, OperandMode::kExternal)}, shape),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Program({make(0, -1, Operation::kAdd, OperandMode::kExternal)}, shape),
      std::invalid_argument);
  // Largest legal indices on both sides.
  CHECK_NOTHROW(
      Program({make(2, 2, Operation::kAdd, OperandMode::kInternal),
               make(0, 3, Operation::kAdd, OperandMode::kExternal)},
              shape));
}

TEST_CASE("external operand is scaled by external_factor") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal)},
            ProgramShape{1, 1, 1});
  const std::vector<double> input = {3.0};
  const auto& regs = p.execute(input, 2.0);
  CHECK(regs[0] == 6.0);
}

TEST_CASE("Div2 halves the target and ignores the operand") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal),
             make(0, 0, Operation::kDiv2, OperandMode::kInternal)},
            ProgramShape{1, 1, 1});
  const std::vector<double> input = {8.0};
  const auto& regs = p.execute(input, 1.0);
  CHECK(regs[0] == 4.0);
}

TEST_CASE("subtract then self-multiply squares the negated input") {
  Program p({make(1, 0, Operation::kSub, OperandMode::kExternal),
             make(1, 1, Operation::kMul, OperandMode::kInternal)},
            ProgramShape{2, 1, 1});
  const std::vector<double> input = {3.0};
  const auto& regs = p.execute(input, 1.0);
  CHECK(regs[1] == 9.0);
  CHECK(regs[0] == 0.0);
}

TEST_CASE("registers reset before every execution") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal)},
            ProgramShape{1, 1, 1});
  const std::vector<double> a = {5.0};
  const std::vector<double> b = {1.0};
  CHECK(p.execute(a, 1.0)[0] == 5.0);
  // Accumulation across calls would give 6 here.
  CHECK(p.execute(b, 1.0)[0] == 1.0);
  CHECK(p.execute(a, 1.0)[0] == 5.0);
}

TEST_CASE("execution is pure: same input, same output") {
  Program p({make(0, 0, Operation::kSub, OperandMode::kExternal),
             make(1, 0, Operation::kMul, OperandMode::kInternal),
             make(1, 1, Operation::kDiv2, OperandMode::kInternal)},
            ProgramShape{2, 0, 2});
  const std::vector<double> input = {1.25, -7.5};
  const auto first = p.execute(input, 3.0);
  const auto second = p.execute(input, 3.0);
  CHECK(first == second);
}

TEST_CASE("register file length is preserved") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kInternal)},
            ProgramShape{3, 2, 1});
  const std::vector<double> input = {1.0};
  CHECK(p.execute(input, 1.0).size() == 5);
  CHECK(p.registers().size() == 5);
}

TEST_CASE("non-finite intermediates are scrubbed to zero") {
  // 1e308 squared overflows to infinity, which must not persist.
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal),
             make(0, 0, Operation::kMul, OperandMode::kInternal)},
            ProgramShape{1, 1, 1});
  const std::vector<double> input = {1e308};
  const auto& regs = p.execute(input, 1.0);
  CHECK(regs[0] == 0.0);
  for (const double v : regs) CHECK(std::isfinite(v));
}

TEST_CASE("scrubbed register can keep accumulating afterwards") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal),
             make(0, 0, Operation::kMul, OperandMode::kInternal),
             make(0, 1, Operation::kAdd, OperandMode::kExternal)},
            ProgramShape{1, 1, 2});
  const std::vector<double> input = {1e308, 2.5};
  CHECK(p.execute(input, 1.0)[0] == 2.5);
}

TEST_CASE("non-finite input components are also scrubbed") {
  Program p({make(0, 0, Operation::kAdd, OperandMode::kExternal)},
            ProgramShape{1, 1, 1});
  const std::vector<double> input = {std::numeric_limits<double>::infinity()};
  CHECK(p.execute(input, 1.0)[0] == 0.0);
}

TEST_CASE("text form writes one instruction per line") {
  Program p({make(1, 0, Operation::kAdd, OperandMode::kExternal),
             make(0, 0, Operation::kDiv2, OperandMode::kInternal),
             make(2, 1, Operation::kSub, OperandMode::kInternal),
             make(0, 3, Operation::kMul, OperandMode::kExternal)},
            ProgramShape{3, 1, 4});
  CHECK(p.to_text() ==
        "R[1] <- R[1] + R[$0]\n"
        "R[0] <- R[0] / 2\n"
        "R[2] <- R[2] - R[1]\n"
        "R[0] <- R[0] * R[$3]\n");
}

TEST_CASE("best_action picks the argmax of the action prefix") {
  const std::vector<double> unique_max = {0.1, 0.9, 0.3};
  CHECK(lgp::best_action(unique_max, 3) == 1);

  const std::vector<double> tie = {0.5, 0.5, 0.2};
  CHECK(lgp::best_action(tie, 3) == 0);

  // The working register holds the global maximum but is not an action.
  const std::vector<double> suffix_max = {-1.0, -2.0, -0.5, 7.0};
  CHECK(lgp::best_action(suffix_max, 3) == 2);
  CHECK(lgp::best_action(suffix_max, 4) == 3);
}

TEST_CASE("best_action stays within the action range") {
  const std::vector<double> regs = {-3.0, -1.0, -2.0, 5.0};
  for (int n = 1; n <= 4; ++n) {
    const int a = lgp::best_action(regs, n);
    CHECK(a >= 0);
    CHECK(a < n);
  }
}

TEST_CASE("argmax_register scans the whole file") {
  const std::vector<double> regs = {0.2, 0.9, 0.1, 3.0};
  CHECK(lgp::argmax_register(regs) == 3);
  const std::vector<double> tie = {2.0, 2.0};
  CHECK(lgp::argmax_register(tie) == 0);
}

TEST_CASE("shape helper combines action and working registers") {
  lgp::Hyperparameters h;
  h.n_actions = 3;
  h.n_extras = 2;
  h.n_inputs = 4;
  const ProgramShape shape = lgp::make_shape(h);
  CHECK(shape.register_count() == 5);
  CHECK(shape.input_width == 4);
}
