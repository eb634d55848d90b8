// The hierarchy of rewbs whose capture nesting depth grows with i:
//
//   x_0     = (a0l a0m a0r)*
//   x_(i+1) = (a(i+1)l (j: x_i) a(i+1)m \j a(i+1)r)*     with label j = i+1
//
// (labels are one-based, so the capture around x_i carries label i+1), and
// hand-built nonerasing stack automata recognizing the same languages.  The
// automata repeat the dereference-scan idea from the generic construction
// but with one scan gadget per call site, which keeps every return
// deterministic; their agreement with the search oracle is what the tests
// establish.

#pragma once

#include "rewb/machine.hpp"
#include "rewb/syntax.hpp"

namespace rewb {

// Symbols a0l a0m a0r ... ail aim air, in that order.
Alphabet larsen_alphabet(int i);

AstPtr larsen_rewb(int i);

StackMachine larsen_nesa(int i);

}  // namespace rewb
