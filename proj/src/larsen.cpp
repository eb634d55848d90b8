#include "rewb/larsen.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <string>

namespace rewb {

Alphabet larsen_alphabet(int i) {
    std::vector<std::string> names;
    for (int j = 0; j <= i; ++j)
        for (char part : {'l', 'm', 'r'})
            names.push_back("a" + std::to_string(j) + part);
    return Alphabet(names);
}

AstPtr larsen_rewb(int i) {
    if (i < 0) throw std::invalid_argument("hierarchy level must be >= 0");
    auto sym = [](int j, char part) {
        return make_literal("a" + std::to_string(j) + std::string(1, part));
    };
    AstPtr x = make_star(make_concat(make_concat(sym(0, 'l'), sym(0, 'm')), sym(0, 'r')));
    for (int j = 1; j <= i; ++j) {
        AstPtr body = make_concat(sym(j, 'l'), make_capture(j, x));
        body = make_concat(body, sym(j, 'm'));
        body = make_concat(body, make_reference(j));
        body = make_concat(body, sym(j, 'r'));
        x = make_star(body);
    }
    return x;
}

namespace {

struct LarsenBuild {
    StackMachine m;
    uint32_t z0;
    std::vector<uint32_t> letter_cell;            // by input symbol id
    std::vector<uint32_t> open_cell, close_cell, num_cell;  // by label, [0] unused
    std::vector<uint32_t> all_cells;

    void push_edge(uint32_t from, std::optional<uint32_t> read, uint32_t cell, uint32_t to) {
        for (uint32_t z : all_cells) {
            Rule r;
            r.from = from;
            r.to = to;
            r.read = read;
            r.ctx = CtxKind::Top;
            r.ctx_sym = z;
            r.act = ActKind::Rewrite;
            r.payload = {z, cell};
            m.rules.push_back(std::move(r));
        }
    }

    void rule(uint32_t from, CtxKind ctx, uint32_t ctx_sym, Dir dir, uint32_t to,
              std::optional<uint32_t> read = std::nullopt) {
        Rule r;
        r.from = from;
        r.to = to;
        r.read = read;
        r.ctx = ctx;
        r.ctx_sym = ctx_sym;
        r.act = ActKind::Move;
        r.dir = dir;
        m.rules.push_back(std::move(r));
    }
};

std::string chain_name(const std::vector<int>& chain) {
    std::string s;
    for (int l : chain) s += (s.empty() ? "" : "_") + std::to_string(l);
    return s;
}

}  // namespace

StackMachine larsen_nesa(int i) {
    if (i < 0) throw std::invalid_argument("hierarchy level must be >= 0");
    LarsenBuild b;
    b.m.name = "larsen" + std::to_string(i);
    b.m.flavor = Flavor::NESA;
    b.m.input_alphabet = larsen_alphabet(i);

    b.z0 = b.m.add_stack_symbol("Z0");
    b.m.initial_stack = b.z0;
    for (const std::string& n : b.m.input_alphabet.names())
        b.letter_cell.push_back(b.m.add_stack_symbol(n));
    b.open_cell.resize(static_cast<size_t>(i) + 1);
    b.close_cell.resize(static_cast<size_t>(i) + 1);
    b.num_cell.resize(static_cast<size_t>(i) + 1);
    for (int l = 1; l <= i; ++l) {
        b.open_cell[l] = b.m.add_stack_symbol("[" + std::to_string(l));
        b.close_cell[l] = b.m.add_stack_symbol("]" + std::to_string(l));
        b.num_cell[l] = b.m.add_stack_symbol(std::to_string(l));
    }
    for (uint32_t c = 0; c < b.m.stack_symbols.size(); ++c) b.all_cells.push_back(c);

    auto letter = [&](int j, char part) {
        return *b.m.input_alphabet.find("a" + std::to_string(j) + std::string(1, part));
    };

    // loop chain: level 0 is a plain three-letter cycle, level l wraps the
    // level below in brackets, then dereferences what it just captured
    std::vector<uint32_t> q(static_cast<size_t>(i) + 1);
    for (int l = 0; l <= i; ++l) q[l] = b.m.add_state("q" + std::to_string(l));
    b.m.start = q[i];
    b.m.finals[q[i]] = true;

    uint32_t p0a = b.m.add_state("p0a");
    uint32_t p0b = b.m.add_state("p0b");
    b.push_edge(q[0], letter(0, 'l'), b.letter_cell[letter(0, 'l')], p0a);
    b.push_edge(p0a, letter(0, 'm'), b.letter_cell[letter(0, 'm')], p0b);
    b.push_edge(p0b, letter(0, 'r'), b.letter_cell[letter(0, 'r')], q[0]);

    // scan gadget instances, one per call site: chains l > j1 > j2 > ...
    struct Gadget {
        std::vector<int> chain;
        uint32_t c, e, r;
    };
    std::map<std::vector<int>, Gadget> gadgets;
    {
        std::vector<std::vector<int>> todo;
        for (int l = 1; l <= i; ++l) todo.push_back({l});
        while (!todo.empty()) {
            std::vector<int> chain = todo.back();
            todo.pop_back();
            Gadget g;
            g.chain = chain;
            g.c = b.m.add_state("c" + chain_name(chain));
            g.e = b.m.add_state("e" + chain_name(chain));
            g.r = b.m.add_state("r" + chain_name(chain));
            gadgets.emplace(chain, g);
            for (int j = 1; j < chain.back(); ++j) {
                std::vector<int> child = chain;
                child.push_back(j);
                todo.push_back(child);
            }
        }
    }

    std::vector<uint32_t> z_state(static_cast<size_t>(i) + 1);
    for (int l = 1; l <= i; ++l) {
        uint32_t u = b.m.add_state("u" + std::to_string(l));
        uint32_t v = b.m.add_state("v" + std::to_string(l));
        uint32_t w = b.m.add_state("w" + std::to_string(l));
        z_state[l] = b.m.add_state("z" + std::to_string(l));
        b.push_edge(q[l], letter(l, 'l'), b.letter_cell[letter(l, 'l')], u);
        b.push_edge(u, std::nullopt, b.open_cell[l], q[l - 1]);
        b.push_edge(q[l - 1], std::nullopt, b.close_cell[l], v);
        b.push_edge(v, letter(l, 'm'), b.letter_cell[letter(l, 'm')], w);
        b.push_edge(w, std::nullopt, b.num_cell[l], gadgets.at({l}).c);
    }

    for (const auto& [chain, g] : gadgets) {
        int L = chain.back();
        bool top = chain.size() == 1;

        // c: walk left to the nearest [L
        if (top) b.rule(g.c, CtxKind::Top, b.num_cell[L], Dir::L, g.c);
        for (uint32_t z : b.all_cells) {
            if (z == b.open_cell[L] || z == b.z0) continue;
            b.rule(g.c, CtxKind::Interior, z, Dir::L, g.c);
        }
        b.rule(g.c, CtxKind::Interior, b.open_cell[L], Dir::R, g.e);

        // e: replay the group against the input, recursing at numbers
        for (int j = 0; j < L; ++j)
            for (char part : {'l', 'm', 'r'}) {
                uint32_t a = letter(j, part);
                b.rule(g.e, CtxKind::Interior, b.letter_cell[a], Dir::R, g.e, a);
            }
        for (int j = 1; j < L; ++j) {
            b.rule(g.e, CtxKind::Interior, b.open_cell[j], Dir::R, g.e);
            b.rule(g.e, CtxKind::Interior, b.close_cell[j], Dir::R, g.e);
            std::vector<int> child = chain;
            child.push_back(j);
            b.rule(g.e, CtxKind::Interior, b.num_cell[j], Dir::L, gadgets.at(child).c);
        }
        b.rule(g.e, CtxKind::Interior, b.close_cell[L], Dir::R, g.r);

        // r: climb back to the number that triggered the call
        for (uint32_t z : b.all_cells) {
            if (z == b.num_cell[L]) continue;
            b.rule(g.r, CtxKind::Interior, z, Dir::R, g.r);
        }
        if (top)
            b.rule(g.r, CtxKind::Top, b.num_cell[L], Dir::S, z_state[L]);
        else
            b.rule(g.r, CtxKind::Interior, b.num_cell[L],
                   Dir::R, gadgets.at(std::vector<int>(chain.begin(), chain.end() - 1)).e);
    }

    for (int l = 1; l <= i; ++l)
        b.push_edge(z_state[l], letter(l, 'r'), b.letter_cell[letter(l, 'r')], q[l]);

    return b.m;
}

}  // namespace rewb
