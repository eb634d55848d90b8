// Stack automata with a read pointer, in three flavors:
//
//   SA    rewrites the cell at the top of the stack and moves a read
//         pointer freely through the stack interior; input is one-way.
//   NESA  an SA whose every rewrite keeps the rewritten cell as a prefix,
//         so the stack never shrinks.
//   NSA   adds substacks: a cell sequence fenced by ¢ ... $ spliced in
//         front of the pointed cell.  Everything left of the leftmost $
//         is accessible; an empty substack ¢$ can be destroyed again.
//
// A configuration holds the whole stack tape, bottom marker # implicit at
// index -1 and a terminal $ as the last cell.  The pointer is the index of
// the referenced cell (-1 for #) and never rests on a $.  "At top" means
// pointing at the cell immediately left of the leftmost $.
//
// Rules pair an input effect (consume one symbol, or stay) with a pointer
// context and an action.  Stay rules never look at the input, so they fire
// at end of input too.  Rewriting happens at the top only; at the top the
// pointer may move left or stay, at the bottom only right.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rewb/refword.hpp"

namespace rewb {

enum class Flavor { SA, NESA, NSA };

enum class CtxKind : uint8_t { Top, Interior, Bottom, EmptySubstackTop };
enum class ActKind : uint8_t { Rewrite, Move, Create, Destroy };
enum class Dir : uint8_t { L, S, R };

// Cells are stack symbol ids; the two fences get reserved ids.
constexpr uint32_t kCellCent = UINT32_MAX - 1;   // ¢
constexpr uint32_t kCellDollar = UINT32_MAX;     // $

struct Rule {
    uint32_t from = 0, to = 0;
    std::optional<uint32_t> read;    // input symbol; nullopt = stay
    CtxKind ctx = CtxKind::Top;
    uint32_t ctx_sym = 0;            // Top: in stack alphabet; Interior: alphabet or kCellCent
    ActKind act = ActKind::Move;
    Dir dir = Dir::S;                // Move only
    std::vector<uint32_t> payload;   // Rewrite / Create cells

    bool operator==(const Rule&) const = default;
};

struct StackMachine {
    std::string name;
    Flavor flavor = Flavor::SA;
    std::vector<std::string> states;
    Alphabet input_alphabet;
    std::vector<std::string> stack_symbols;
    uint32_t start = 0;
    uint32_t initial_stack = 0;
    std::vector<bool> finals;
    std::vector<Rule> rules;

    uint32_t add_state(const std::string& name);
    uint32_t add_stack_symbol(const std::string& name);
    std::optional<uint32_t> state_id(const std::string& name) const;
    std::optional<uint32_t> stack_id(const std::string& name) const;
    std::string cell_name(uint32_t cell) const;  // includes ¢ and $

    // rule indices grouped by source state; rebuilt on demand
    const std::vector<std::vector<uint32_t>>& rules_by_state() const;

  private:
    mutable std::vector<std::vector<uint32_t>> by_state_;
};

struct Config {
    uint32_t state = 0;
    uint32_t pos = 0;                // input consumed so far
    std::vector<uint32_t> tape;      // cells; last is always kCellDollar
    int32_t ptr = 0;                 // index of referenced cell, -1 = #

    bool operator==(const Config&) const = default;
};

Config initial_config(const StackMachine& m);

// Structural soundness of a configuration: terminal $, pointer inside the
// accessible region and not on a $, every ¢ eventually closed by a $.
bool check_framing(const Config& c);

// Index of the leftmost $ (the accessible region is everything before it).
size_t accessible_end(const Config& c);

// All successor configurations, in rule order.
std::vector<Config> step(const StackMachine& m, const Config& c, const Word& input);

// Successors of one rule (empty when the rule does not apply).
std::optional<Config> apply_rule(const StackMachine& m, const Rule& r, const Config& c,
                                 const Word& input);

bool is_accepting(const StackMachine& m, const Config& c, const Word& input);

struct Budget {
    uint64_t max_steps = 1'000'000;  // configurations expanded
    size_t max_cells = 10'000;       // tape length bound
};

struct TraceStep {
    Config config;
    int32_t rule = -1;  // rule applied to reach this configuration, -1 initial
};

struct RunResult {
    bool accepted = false;
    std::vector<TraceStep> trace;    // accepting path when accepted
    uint64_t steps_used = 0;
    size_t visited = 0;
    bool exhausted = false;          // frontier emptied with no budget pruning:
                                     // rejection is then definitive
};

// Breadth-first search over configurations with deduplication.  Accepted is
// definitive; otherwise the language may still contain the input unless
// `exhausted` is set.
RunResult accepts(const StackMachine& m, const Word& input, const Budget& b);

struct FlavorViolation {
    size_t rule_index;  // SIZE_MAX for machine-level problems
    std::string reason;
};

std::vector<FlavorViolation> validate_flavor(const StackMachine& m);

std::string render_config(const StackMachine& m, const Config& c, const Word& input);
std::string trace_render(const StackMachine& m, const std::vector<TraceStep>& trace,
                         const Word& input);

// io (machine_io.cpp)
std::string machine_to_json(const StackMachine& m);
StackMachine machine_from_json(const std::string& text);
std::string machine_to_dot(const StackMachine& m);

}  // namespace rewb
