// Finite automata over ref-word tokens, and the search-based membership
// oracle for rewbs that is built on top of them.
//
// build_ref_nfa produces an epsilon-free automaton recognizing exactly the
// ref-word language of the expression, trimmed so that every state lies on
// some path from the start to a final state.  Trimming matters: it makes
// every reachable path label extendable to a full ref-word, which the stack
// machine constructions rely on.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "rewb/refword.hpp"
#include "rewb/syntax.hpp"

namespace rewb {

struct RefNfa {
    uint32_t start = 0;
    std::vector<bool> finals;                                   // indexed by state
    std::vector<std::vector<std::pair<RefSym, uint32_t>>> edges;  // per state, sorted
    Alphabet alphabet;                                          // letters used by the expression
    int k = 0;                                                  // largest label

    size_t num_states() const { return edges.size(); }
};

// `base` seeds the letter alphabet so that ids agree with an externally
// declared alphabet; letters of the expression are added after it.
RefNfa build_ref_nfa(const Ast& a, const Alphabet& base = {});

// All accepted ref-words of length <= max_len, deduplicated and ordered.
std::set<RefWord> enumerate_refwords(const RefNfa& n, size_t max_len);

struct OracleResult {
    bool matched = false;
    std::optional<RefWord> witness;  // an accepted ref-word dereferencing to w
};

// Decides w in L(expression) by searching NFA paths with an environment of
// input spans per label.  Terminates on every input: states, positions,
// spans and the open-capture stack are all finite for fixed w.
OracleResult oracle_match(const RefNfa& n, const Word& w);
OracleResult oracle_match(const Ast& a, const Word& w, const Alphabet& alphabet);

struct PrefixCheck {
    bool ok = true;
    std::optional<RefWord> counterexample;
    size_t words_checked = 0;
};

// Verifies that every distinct path label from the start state of length
// <= max_len satisfies is_matching.
PrefixCheck check_reachable_prefixes_matching(const RefNfa& n, size_t max_len);

// Members of the expression's language obtained by dereferencing every
// accepted ref-word of length <= max_refword_len, keeping results of length
// <= max_word_len.  Complete only when max_refword_len dominates the
// ref-word length of every member this short; callers pick the bound.
std::set<Word> enumerate_members(const RefNfa& n, size_t max_word_len, size_t max_refword_len);

}  // namespace rewb
