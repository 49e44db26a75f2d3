#include "lgp/variation.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace lgp {

Instruction generate_instruction(const ProgramShape& shape, RngStream& rng) {
  Instruction ins;
  ins.op = static_cast<Operation>(rng.uniform_below(kOperationCount));
  ins.mode = static_cast<OperandMode>(rng.uniform_below(2));
  ins.target = rng.uniform_below(shape.register_count());
  ins.source = rng.uniform_below(ins.mode == OperandMode::kExternal
                                     ? shape.input_width
                                     : shape.register_count());
  return ins;
}

Instruction generate_instruction(const Hyperparameters& h, RngStream& rng) {
  return generate_instruction(make_shape(h), rng);
}

Program generate_program(const Hyperparameters& h, RngStream& rng) {
  assert(h.max_instructions >= 1);
  const ProgramShape shape = make_shape(h);
  const int count = rng.uniform_range(1, h.max_instructions);
  std::vector<Instruction> instructions;
  instructions.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    instructions.push_back(generate_instruction(shape, rng));
  }
  return Program(std::move(instructions), shape);
}

Program crossover_at(const Program& parent_a, const Program& parent_b,
                     int cut_begin, int cut_end, bool return_first) {
  assert(0 <= cut_begin && cut_begin <= cut_end);
  assert(cut_end <= static_cast<int>(std::min(parent_a.instructions().size(),
                                              parent_b.instructions().size())));
  std::vector<Instruction> child_a = parent_a.instructions();
  std::vector<Instruction> child_b = parent_b.instructions();
  std::swap_ranges(child_a.begin() + cut_begin, child_a.begin() + cut_end,
                   child_b.begin() + cut_begin);
  return return_first ? Program(std::move(child_a), parent_a.shape())
                      : Program(std::move(child_b), parent_b.shape());
}

Program crossover(const Program& parent_a, const Program& parent_b,
                  RngStream& rng) {
  const int limit = static_cast<int>(
      std::min(parent_a.instructions().size(), parent_b.instructions().size()));
  int a = rng.uniform_range(0, limit);
  int b = rng.uniform_range(0, limit);
  if (a > b) std::swap(a, b);
  const bool pick_first = rng.uniform_below(2) == 0;
  return crossover_at(parent_a, parent_b, a, b, pick_first);
}

Instruction replace_properties(Instruction current, const Instruction& fresh,
                               bool copy_operation, bool copy_source,
                               bool copy_target) {
  if (copy_operation) current.op = fresh.op;
  if (copy_source) {
    // Mode travels with the source index; the index is only meaningful within
    // its mode's bound.
    current.source = fresh.source;
    current.mode = fresh.mode;
  }
  if (copy_target) current.target = fresh.target;
  return current;
}

Program mutate(const Program& parent, const Hyperparameters& /*h*/,
               RngStream& rng) {
  std::vector<Instruction> instructions = parent.instructions();
  const int position =
      rng.uniform_below(static_cast<int>(instructions.size()));
  const Instruction fresh = generate_instruction(parent.shape(), rng);
  const bool copy_operation = rng.bernoulli(0.5);
  const bool copy_source = rng.bernoulli(0.5);
  const bool copy_target = rng.bernoulli(0.5);
  instructions[static_cast<std::size_t>(position)] =
      replace_properties(instructions[static_cast<std::size_t>(position)],
                         fresh, copy_operation, copy_source, copy_target);
  return Program(std::move(instructions), parent.shape());
}

}  // namespace lgp
