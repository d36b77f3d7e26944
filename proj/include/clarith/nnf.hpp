#pragma once

#include "clarith/formula.hpp"

namespace clarith {

/// Pushes negation down to atoms using the role-switch dualities
/// (~& = ++~, ~/\ = \/~, ~! = ?~, ~A = E~) and unfolds A -> B as ~A \/ B.
///
/// The result has the same shape on parallel connectives as the input
/// (an implication becomes a disjunction in place), so a move address
/// L/R path in f addresses the same choice occurrence in to_nnf(f).
Formula to_nnf(const Formula& f);

bool is_nnf(const Formula& f);

}  // namespace clarith
