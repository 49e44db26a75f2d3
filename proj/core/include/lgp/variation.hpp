#pragma once

#include "lgp/config.hpp"
#include "lgp/program.hpp"
#include "lgp/random.hpp"

namespace lgp {

/// Uniform random instruction: op over the four operations, mode over
/// {Internal, External}, target over the register file, source within the
/// bound implied by the drawn mode.
Instruction generate_instruction(const ProgramShape& shape, RngStream& rng);
Instruction generate_instruction(const Hyperparameters& h, RngStream& rng);

/// Fresh program with an instruction count uniform in [1, max_instructions]
/// and a zeroed register set of size n_actions + n_extras.
Program generate_program(const Hyperparameters& h, RngStream& rng);

/// Two-point crossover. Parents are cloned first and never modified. Cut
/// points a <= b are drawn in [0, min(len1, len2)], the half-open slices
/// [a, b) of the two clones are swapped, and one of the two offspring is
/// returned, chosen uniformly.
Program crossover(const Program& parent_a, const Program& parent_b,
                  RngStream& rng);

/// Deterministic kernel behind crossover, exposed for forced-cut tests:
/// swaps [cut_begin, cut_end) and returns the clone of parent_a when
/// return_first, else the clone of parent_b.
Program crossover_at(const Program& parent_a, const Program& parent_b,
                     int cut_begin, int cut_end, bool return_first);

/// Instruction-replacement mutation. Clones the parent, picks one instruction
/// position uniformly, draws a fresh random instruction, and independently
/// replaces each of {operation, source, target} with probability 0.5. Copying
/// the source also copies the mode so the index stays within bounds.
Program mutate(const Program& parent, const Hyperparameters& h, RngStream& rng);

/// Deterministic kernel behind mutate: applies the chosen property
/// replacements from `fresh` onto `current`.
Instruction replace_properties(Instruction current, const Instruction& fresh,
                               bool copy_operation, bool copy_source,
                               bool copy_target);

}  // namespace lgp
