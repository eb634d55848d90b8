#include "rewb/machine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rewb {

uint32_t StackMachine::add_state(const std::string& n) {
    states.push_back(n);
    finals.resize(states.size(), false);
    return static_cast<uint32_t>(states.size() - 1);
}

uint32_t StackMachine::add_stack_symbol(const std::string& n) {
    stack_symbols.push_back(n);
    return static_cast<uint32_t>(stack_symbols.size() - 1);
}

std::optional<uint32_t> StackMachine::state_id(const std::string& n) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == n) return static_cast<uint32_t>(i);
    return std::nullopt;
}

std::optional<uint32_t> StackMachine::stack_id(const std::string& n) const {
    for (size_t i = 0; i < stack_symbols.size(); ++i)
        if (stack_symbols[i] == n) return static_cast<uint32_t>(i);
    return std::nullopt;
}

std::string StackMachine::cell_name(uint32_t cell) const {
    if (cell == kCellCent) return "¢";
    if (cell == kCellDollar) return "$";
    return stack_symbols.at(cell);
}

const std::vector<std::vector<uint32_t>>& StackMachine::rules_by_state() const {
    size_t indexed = 0;
    for (const auto& v : by_state_) indexed += v.size();
    if (by_state_.size() != states.size() || indexed != rules.size()) {
        by_state_.assign(states.size(), {});
        for (size_t i = 0; i < rules.size(); ++i)
            by_state_[rules[i].from].push_back(static_cast<uint32_t>(i));
    }
    return by_state_;
}

Config initial_config(const StackMachine& m) {
    Config c;
    c.state = m.start;
    c.tape = {m.initial_stack, kCellDollar};
    c.ptr = 0;
    return c;
}

size_t accessible_end(const Config& c) {
    for (size_t i = 0; i < c.tape.size(); ++i)
        if (c.tape[i] == kCellDollar) return i;
    assert(false && "configuration lacks a terminal $");
    return c.tape.size();
}

bool check_framing(const Config& c) {
    if (c.tape.empty() || c.tape.back() != kCellDollar) return false;
    // ¢ and $ must pair up, with only the final $ closing the main stack
    int depth = 1;
    for (size_t i = 0; i < c.tape.size(); ++i) {
        if (c.tape[i] == kCellCent) ++depth;
        if (c.tape[i] == kCellDollar) {
            --depth;
            if (depth == 0 && i + 1 != c.tape.size()) return false;
            if (depth < 0) return false;
        }
    }
    if (depth != 0) return false;
    if (c.ptr < -1) return false;
    if (c.ptr >= 0) {
        if (static_cast<size_t>(c.ptr) >= accessible_end(c)) return false;
        if (c.tape[static_cast<size_t>(c.ptr)] == kCellDollar) return false;
    }
    return true;
}

std::optional<Config> apply_rule(const StackMachine&, const Rule& r, const Config& c,
                                 const Word& input) {
    uint32_t newpos = c.pos;
    if (r.read) {
        if (c.pos >= input.size() || input[c.pos] != *r.read) return std::nullopt;
        newpos = c.pos + 1;
    }

    size_t t = accessible_end(c);
    size_t p = static_cast<size_t>(c.ptr);  // valid only when ptr >= 0
    switch (r.ctx) {
        case CtxKind::Top:
            if (c.ptr < 0 || p + 1 != t) return std::nullopt;
            if (c.tape[p] != r.ctx_sym) return std::nullopt;
            break;
        case CtxKind::Interior:
            if (c.ptr < 0 || p + 1 >= t) return std::nullopt;
            if (c.tape[p] != r.ctx_sym) return std::nullopt;
            break;
        case CtxKind::Bottom:
            if (c.ptr != -1) return std::nullopt;
            break;
        case CtxKind::EmptySubstackTop:
            if (c.ptr < 0 || c.tape[p] != kCellCent) return std::nullopt;
            if (c.tape[p + 1] != kCellDollar) return std::nullopt;
            break;
    }

    // structurally invalid combinations (flagged by validate_flavor) must
    // not fall through to pointer arithmetic
    if ((r.act == ActKind::Rewrite || r.act == ActKind::Create) && c.ptr < 0) return std::nullopt;

    Config out;
    out.state = r.to;
    out.pos = newpos;
    switch (r.act) {
        case ActKind::Rewrite: {
            // replace the top cell by the payload; an empty payload pops
            out.tape.reserve(c.tape.size() + r.payload.size());
            out.tape.assign(c.tape.begin(), c.tape.begin() + c.ptr);
            out.tape.insert(out.tape.end(), r.payload.begin(), r.payload.end());
            out.tape.insert(out.tape.end(), c.tape.begin() + c.ptr + 1, c.tape.end());
            out.ptr = c.ptr + static_cast<int32_t>(r.payload.size()) - 1;
            break;
        }
        case ActKind::Move: {
            int32_t np = c.ptr + (r.dir == Dir::L ? -1 : r.dir == Dir::R ? 1 : 0);
            if (np < -1) return std::nullopt;
            if (np >= 0 && static_cast<size_t>(np) >= t) return std::nullopt;
            out.tape = c.tape;
            out.ptr = np;
            break;
        }
        case ActKind::Create: {
            // splice ¢ payload $ in front of the pointed cell
            out.tape.reserve(c.tape.size() + r.payload.size() + 2);
            out.tape.assign(c.tape.begin(), c.tape.begin() + c.ptr);
            out.tape.push_back(kCellCent);
            out.tape.insert(out.tape.end(), r.payload.begin(), r.payload.end());
            out.tape.push_back(kCellDollar);
            out.tape.insert(out.tape.end(), c.tape.begin() + c.ptr, c.tape.end());
            out.ptr = c.ptr + static_cast<int32_t>(r.payload.size());
            break;
        }
        case ActKind::Destroy: {
            // remove the ¢$ pair and land on the cell to its right
            if (p + 2 >= c.tape.size()) return std::nullopt;
            if (c.tape[p + 2] == kCellDollar) return std::nullopt;
            out.tape = c.tape;
            out.tape.erase(out.tape.begin() + c.ptr, out.tape.begin() + c.ptr + 2);
            out.ptr = c.ptr;
            break;
        }
    }
    return out;
}

std::vector<Config> step(const StackMachine& m, const Config& c, const Word& input) {
    std::vector<Config> out;
    for (uint32_t idx : m.rules_by_state()[c.state]) {
        if (auto next = apply_rule(m, m.rules[idx], c, input)) out.push_back(std::move(*next));
    }
    return out;
}

bool is_accepting(const StackMachine& m, const Config& c, const Word& input) {
    if (!m.finals[c.state] || c.pos != input.size()) return false;
    // stack must be fence-free: one $ at the end, no ¢
    for (size_t i = 0; i + 1 < c.tape.size(); ++i)
        if (c.tape[i] == kCellCent || c.tape[i] == kCellDollar) return false;
    return true;
}

namespace {

void push_u32(std::string& s, uint32_t v) {
    s.append(reinterpret_cast<const char*>(&v), sizeof v);
}

std::string encode(const Config& c) {
    std::string key;
    key.reserve(12 + 4 * c.tape.size());
    push_u32(key, c.state);
    push_u32(key, c.pos);
    push_u32(key, static_cast<uint32_t>(c.ptr));
    for (uint32_t cell : c.tape) push_u32(key, cell);
    return key;
}

}  // namespace

RunResult accepts(const StackMachine& m, const Word& input, const Budget& b) {
    struct Node {
        Config cfg;
        size_t parent;
        int32_t rule;
    };
    RunResult res;
    std::vector<Node> arena;
    std::unordered_set<std::string> visited;
    std::deque<size_t> queue;

    Config c0 = initial_config(m);
    visited.insert(encode(c0));
    arena.push_back({std::move(c0), SIZE_MAX, -1});
    queue.push_back(0);

    const auto& by_state = m.rules_by_state();
    bool pruned = false;
    while (!queue.empty()) {
        if (res.steps_used >= b.max_steps) break;
        ++res.steps_used;
        size_t idx = queue.front();
        queue.pop_front();

        if (is_accepting(m, arena[idx].cfg, input)) {
            res.accepted = true;
            std::vector<TraceStep> path;
            for (size_t i = idx; i != SIZE_MAX; i = arena[i].parent)
                path.push_back({arena[i].cfg, arena[i].rule});
            std::reverse(path.begin(), path.end());
            res.trace = std::move(path);
            res.visited = arena.size();
            return res;
        }

        Config cfg = arena[idx].cfg;  // copy: arena may grow below
        for (uint32_t ridx : by_state[cfg.state]) {
            auto next = apply_rule(m, m.rules[ridx], cfg, input);
            if (!next) continue;
            if (next->tape.size() > b.max_cells) {
                pruned = true;
                continue;
            }
            if (visited.insert(encode(*next)).second) {
                arena.push_back({std::move(*next), idx, static_cast<int32_t>(ridx)});
                queue.push_back(arena.size() - 1);
            }
        }
    }
    res.visited = arena.size();
    res.exhausted = queue.empty() && !pruned;
    return res;
}

std::vector<FlavorViolation> validate_flavor(const StackMachine& m) {
    std::vector<FlavorViolation> out;
    auto bad = [&out](size_t idx, std::string why) { out.push_back({idx, std::move(why)}); };

    if (m.start >= m.states.size()) bad(SIZE_MAX, "start state out of range");
    if (m.initial_stack >= m.stack_symbols.size()) bad(SIZE_MAX, "initial stack symbol out of range");
    if (m.finals.size() != m.states.size()) bad(SIZE_MAX, "finals size mismatch");

    for (size_t i = 0; i < m.rules.size(); ++i) {
        const Rule& r = m.rules[i];
        if (r.from >= m.states.size() || r.to >= m.states.size()) {
            bad(i, "state out of range");
            continue;
        }
        if (r.read && *r.read >= m.input_alphabet.size()) bad(i, "input symbol out of range");

        bool cent_ctx = false;
        switch (r.ctx) {
            case CtxKind::Top:
                if (r.ctx_sym >= m.stack_symbols.size()) bad(i, "top context symbol out of range");
                break;
            case CtxKind::Interior:
                if (r.ctx_sym == kCellCent)
                    cent_ctx = true;
                else if (r.ctx_sym >= m.stack_symbols.size())
                    bad(i, "interior context symbol out of range");
                break;
            case CtxKind::Bottom:
            case CtxKind::EmptySubstackTop:
                cent_ctx = r.ctx == CtxKind::EmptySubstackTop;
                break;
        }

        if (r.act == ActKind::Rewrite || r.act == ActKind::Create)
            for (uint32_t cell : r.payload)
                if (cell >= m.stack_symbols.size()) bad(i, "payload symbol out of range");

        switch (r.act) {
            case ActKind::Rewrite:
                if (r.ctx != CtxKind::Top) bad(i, "rewrite away from the top");
                break;
            case ActKind::Move:
                if (r.ctx == CtxKind::Top && r.dir == Dir::R) bad(i, "move right at the top");
                if (r.ctx == CtxKind::EmptySubstackTop && r.dir == Dir::R)
                    bad(i, "move right at an empty substack top");
                if (r.ctx == CtxKind::Bottom && r.dir != Dir::R) bad(i, "only move right at #");
                break;
            case ActKind::Create:
                if (r.ctx != CtxKind::Top && r.ctx != CtxKind::Interior)
                    bad(i, "substack created in a bad context");
                break;
            case ActKind::Destroy:
                if (r.ctx != CtxKind::EmptySubstackTop)
                    bad(i, "substack destroyed in a bad context");
                break;
        }

        if (m.flavor != Flavor::NSA) {
            if (r.act == ActKind::Create || r.act == ActKind::Destroy)
                bad(i, "substack action outside the nested flavor");
            if (cent_ctx) bad(i, "fence context outside the nested flavor");
        }
        if (m.flavor == Flavor::NESA && r.act == ActKind::Rewrite) {
            if (r.payload.empty() || r.payload[0] != r.ctx_sym)
                bad(i, "rewrite does not keep the rewritten cell");
        }
    }
    return out;
}

std::string render_config(const StackMachine& m, const Config& c, const Word& input) {
    std::ostringstream out;
    Word rest(input.begin() + c.pos, input.end());
    out << m.states.at(c.state) << " | " << word_to_string(rest, m.input_alphabet) << " | #";
    if (c.ptr == -1) out << "↾";
    for (size_t i = 0; i < c.tape.size(); ++i) {
        out << m.cell_name(c.tape[i]);
        if (static_cast<int32_t>(i) == c.ptr) out << "↾";
    }
    return out.str();
}

std::string trace_render(const StackMachine& m, const std::vector<TraceStep>& trace,
                         const Word& input) {
    std::ostringstream out;
    for (const TraceStep& s : trace) out << render_config(m, s.config, input) << "\n";
    return out.str();
}

}  // namespace rewb
