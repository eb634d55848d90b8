// Compiling rewbs into stack automata.
//
// build_nsa simulates the ref-word automaton of the expression on the stack:
// letters and brackets are pushed as they are read, and a reference number
// triggers a dereference gadget.  The gadget parks the resume state in a
// fresh substack, scans left for the nearest matching open bracket, replays
// the letters of the bracketed group against the input (recursing through
// nested numbers with further substacks), then climbs back, retrieves the
// parked state and dissolves the substack.  The stack never forgets the
// ref-word spelled so far, so acceptance certifies an accepted ref-word
// dereferencing to the input.
//
// build_nesa handles expressions without references inside captures.  The
// resume state is then pushed on the main stack instead of a substack;
// scans simply skip such state cells, and nothing is ever erased.

#pragma once

#include "rewb/machine.hpp"
#include "rewb/refnfa.hpp"
#include "rewb/syntax.hpp"

namespace rewb {

StackMachine build_nsa(const Ast& a, const Alphabet& base = {});

// Precondition: !has_captured_reference(a); throws std::invalid_argument.
StackMachine build_nesa(const Ast& a, const Alphabet& base = {});

// A budget sufficient for the constructed machines to replay the run that
// spells this accepting ref-word.  Constants carry generous headroom; the
// acceptance suite pins them against measured search effort.
Budget derive_budget(const RefWord& witness);

}  // namespace rewb
