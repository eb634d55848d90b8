#include "rewb/construct.hpp"

#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace rewb {

namespace {

// Everything both constructions share: the trimmed ref-word automaton, the
// stack alphabet derived from its edges, and machine states mirroring it.
struct Build {
    RefNfa nfa;
    StackMachine m;

    std::set<uint32_t> letters, caps, refs;                 // used letter ids / labels
    std::set<std::pair<uint32_t, uint32_t>> ref_edges;      // (label, target)

    uint32_t z0 = 0;
    std::map<uint32_t, uint32_t> letter_cell, open_cell, close_cell, num_cell;
    std::map<uint32_t, uint32_t> state_marker;              // ref-edge targets only
    std::map<uint32_t, uint32_t> e_marker;                  // nested case only
    std::vector<uint32_t> all_cells;

    std::vector<uint32_t> qs;                               // nfa state -> machine state
    std::map<uint32_t, uint32_t> c_state, e_state, r_state;

    explicit Build(const Ast& a, const Alphabet& base, Flavor flavor) {
        nfa = build_ref_nfa(a, base);
        m.flavor = flavor;
        m.input_alphabet = nfa.alphabet;

        for (uint32_t s = 0; s < nfa.num_states(); ++s)
            for (const auto& [sym, tgt] : nfa.edges[s]) switch (sym.kind) {
                    case RefSymKind::Letter: letters.insert(sym.value); break;
                    case RefSymKind::Open:
                    case RefSymKind::Close: caps.insert(sym.value); break;
                    case RefSymKind::Ref:
                        refs.insert(sym.value);
                        ref_edges.insert({sym.value, tgt});
                        break;
                }

        z0 = m.add_stack_symbol("Z0");
        for (uint32_t a_id : letters) letter_cell[a_id] = m.add_stack_symbol(nfa.alphabet.name(a_id));
        for (uint32_t i : caps) {
            open_cell[i] = m.add_stack_symbol("[" + std::to_string(i));
            close_cell[i] = m.add_stack_symbol("]" + std::to_string(i));
        }
        for (uint32_t i : refs) num_cell[i] = m.add_stack_symbol(std::to_string(i));
        m.initial_stack = z0;

        for (uint32_t s = 0; s < nfa.num_states(); ++s) {
            qs.push_back(m.add_state("q" + std::to_string(s)));
            m.finals[qs.back()] = nfa.finals[s];
        }
        m.start = qs[nfa.start];
        for (uint32_t i : refs) {
            c_state[i] = m.add_state("c" + std::to_string(i));
            e_state[i] = m.add_state("e" + std::to_string(i));
            r_state[i] = m.add_state("r" + std::to_string(i));
        }
    }

    void rule(uint32_t from, std::optional<uint32_t> read, CtxKind ctx, uint32_t ctx_sym,
              ActKind act, Dir dir, std::vector<uint32_t> payload, uint32_t to) {
        Rule r;
        r.from = from;
        r.to = to;
        r.read = read;
        r.ctx = ctx;
        r.ctx_sym = ctx_sym;
        r.act = act;
        r.dir = dir;
        r.payload = std::move(payload);
        m.rules.push_back(std::move(r));
    }

    void finish_cells() {
        for (uint32_t i = 0; i < m.stack_symbols.size(); ++i) all_cells.push_back(i);
    }

    // push rules simulating the automaton edge by edge; a reference edge
    // hands over to `on_ref`
    template <typename OnRef>
    void emit_mirror_rules(OnRef on_ref) {
        for (uint32_t s = 0; s < nfa.num_states(); ++s) {
            for (const auto& [sym, tgt] : nfa.edges[s]) {
                switch (sym.kind) {
                    case RefSymKind::Letter:
                        for (uint32_t z : all_cells)
                            rule(qs[s], sym.value, CtxKind::Top, z, ActKind::Rewrite, Dir::S,
                                 {z, letter_cell[sym.value]}, qs[tgt]);
                        break;
                    case RefSymKind::Open:
                        for (uint32_t z : all_cells)
                            rule(qs[s], std::nullopt, CtxKind::Top, z, ActKind::Rewrite, Dir::S,
                                 {z, open_cell[sym.value]}, qs[tgt]);
                        break;
                    case RefSymKind::Close:
                        for (uint32_t z : all_cells)
                            rule(qs[s], std::nullopt, CtxKind::Top, z, ActKind::Rewrite, Dir::S,
                                 {z, close_cell[sym.value]}, qs[tgt]);
                        break;
                    case RefSymKind::Ref: on_ref(s, sym.value, tgt); break;
                }
            }
        }
    }

    // scan left for the matching open bracket of label i, replay its group
    // against the input (e), then climb back to the top (r)
    void emit_gadget_scan(uint32_t i, bool nested_allowed, bool skip_state_cells) {
        uint32_t c = c_state[i], e = e_state[i], r = r_state[i];
        // a label that is only referenced, never captured, has no bracket
        // cells; its scan always bottoms out at Z0 and yields the empty word
        auto open_it = open_cell.find(i);
        uint32_t open_id = open_it == open_cell.end() ? UINT32_MAX : open_it->second;

        for (const auto& [st, cell] : state_marker)
            rule(c, std::nullopt, CtxKind::Top, cell, ActKind::Move, Dir::L, {}, c);
        for (const auto& [lbl, cell] : e_marker)
            rule(c, std::nullopt, CtxKind::Top, cell, ActKind::Move, Dir::L, {}, c);
        for (uint32_t z : all_cells) {
            if (z == open_id || z == z0) continue;
            rule(c, std::nullopt, CtxKind::Interior, z, ActKind::Move, Dir::L, {}, c);
        }
        if (m.flavor == Flavor::NSA)
            rule(c, std::nullopt, CtxKind::Interior, kCellCent, ActKind::Move, Dir::L, {}, c);
        rule(c, std::nullopt, CtxKind::Interior, z0, ActKind::Move, Dir::R, {}, r);
        if (open_id != UINT32_MAX)
            rule(c, std::nullopt, CtxKind::Interior, open_id, ActKind::Move, Dir::R, {}, e);

        for (uint32_t a_id : letters)
            rule(e, a_id, CtxKind::Interior, letter_cell[a_id], ActKind::Move, Dir::R, {}, e);
        for (uint32_t j : caps) {
            if (j != i) rule(e, std::nullopt, CtxKind::Interior, open_cell[j], ActKind::Move, Dir::R, {}, e);
            rule(e, std::nullopt, CtxKind::Interior, close_cell[j], ActKind::Move, Dir::R, {},
                 j == i ? r : e);
        }
        if (skip_state_cells)
            for (const auto& [st, cell] : state_marker)
                rule(e, std::nullopt, CtxKind::Interior, cell, ActKind::Move, Dir::R, {}, e);
        if (nested_allowed)
            for (uint32_t j : refs) {
                if (j == i) continue;
                rule(e, std::nullopt, CtxKind::Interior, num_cell[j], ActKind::Create, Dir::S,
                     {e_marker[i]}, c_state[j]);
            }

        for (uint32_t z : all_cells)
            rule(r, std::nullopt, CtxKind::Interior, z, ActKind::Move, Dir::R, {}, r);
        if (m.flavor == Flavor::NSA)
            rule(r, std::nullopt, CtxKind::Interior, kCellCent, ActKind::Move, Dir::R, {}, r);
    }
};

}  // namespace

StackMachine build_nsa(const Ast& a, const Alphabet& base) {
    Build b(a, base, Flavor::NSA);
    b.m.name = "nsa(" + pretty_print(a) + ")";

    for (uint32_t i : b.refs) b.e_marker[i] = b.m.add_stack_symbol("@e" + std::to_string(i));
    std::set<uint32_t> targets;
    for (const auto& [i, tgt] : b.ref_edges) targets.insert(tgt);
    for (uint32_t tgt : targets) b.state_marker[tgt] = b.m.add_stack_symbol("@q" + std::to_string(tgt));
    b.finish_cells();

    // the parked resume point and the label of the call that parked it;
    // returning pops the marker, dissolves its substack and resumes
    struct Return {
        uint32_t marker_cell;
        uint32_t label;
        bool to_e;        // resume inside an outer replay rather than a state
        uint32_t resume;  // machine state to hand control back to
    };
    std::vector<Return> returns;
    std::map<uint32_t, uint32_t> wait_state;  // target -> W state
    for (uint32_t tgt : targets) wait_state[tgt] = b.m.add_state("W(q" + std::to_string(tgt) + ")");
    for (const auto& [i, tgt] : b.ref_edges)
        returns.push_back({b.state_marker[tgt], i, false, b.qs[tgt]});
    for (uint32_t j : b.refs)
        for (uint32_t i : b.refs) {
            if (i == j) continue;
            returns.push_back({b.e_marker[j], i, true, b.e_state[j]});
        }

    b.emit_mirror_rules([&](uint32_t s, uint32_t i, uint32_t tgt) {
        for (uint32_t z : b.all_cells)
            b.rule(b.qs[s], std::nullopt, CtxKind::Top, z, ActKind::Rewrite, Dir::S,
                   {z, b.num_cell[i]}, wait_state[tgt]);
    });

    // park the resume state in a fresh substack right below the number
    std::set<std::pair<uint32_t, uint32_t>> seen_call;
    for (const auto& [i, tgt] : b.ref_edges)
        if (seen_call.insert({tgt, i}).second)
            b.rule(wait_state[tgt], std::nullopt, CtxKind::Top, b.num_cell[i], ActKind::Create,
                   Dir::S, {b.state_marker[tgt]}, b.c_state[i]);

    for (uint32_t i : b.refs) b.emit_gadget_scan(i, /*nested_allowed=*/true, /*skip_state_cells=*/false);

    for (const Return& ret : returns) {
        uint32_t e_st = b.m.add_state("E(" + b.m.stack_symbols[ret.marker_cell].substr(1) + "," +
                                      std::to_string(ret.label) + ")");
        uint32_t l_st = b.m.add_state("L(" + b.m.stack_symbols[ret.marker_cell].substr(1) + "," +
                                      std::to_string(ret.label) + ")");
        b.rule(b.r_state[ret.label], std::nullopt, CtxKind::Top, ret.marker_cell, ActKind::Rewrite,
               Dir::S, {}, e_st);
        b.rule(e_st, std::nullopt, CtxKind::EmptySubstackTop, 0, ActKind::Destroy, Dir::S, {}, l_st);
        if (ret.to_e)
            b.rule(l_st, std::nullopt, CtxKind::Interior, b.num_cell[ret.label], ActKind::Move,
                   Dir::R, {}, ret.resume);
        else
            b.rule(l_st, std::nullopt, CtxKind::Top, b.num_cell[ret.label], ActKind::Move, Dir::S,
                   {}, ret.resume);
    }
    return b.m;
}

StackMachine build_nesa(const Ast& a, const Alphabet& base) {
    if (has_captured_reference(a))
        throw std::invalid_argument(
            "nonerasing construction requires an expression without captured references");
    Build b(a, base, Flavor::NESA);
    b.m.name = "nesa(" + pretty_print(a) + ")";

    std::set<uint32_t> targets;
    for (const auto& [i, tgt] : b.ref_edges) targets.insert(tgt);
    for (uint32_t tgt : targets) b.state_marker[tgt] = b.m.add_stack_symbol("@q" + std::to_string(tgt));
    b.finish_cells();

    // the number and the resume state go straight onto the main stack
    b.emit_mirror_rules([&](uint32_t s, uint32_t i, uint32_t tgt) {
        for (uint32_t z : b.all_cells)
            b.rule(b.qs[s], std::nullopt, CtxKind::Top, z, ActKind::Rewrite, Dir::S,
                   {z, b.num_cell[i], b.state_marker[tgt]}, b.c_state[i]);
    });

    for (uint32_t i : b.refs) b.emit_gadget_scan(i, /*nested_allowed=*/false, /*skip_state_cells=*/true);

    // resume without erasing: the marker cell stays behind as a stack scar
    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (const auto& [i, tgt] : b.ref_edges)
        if (seen.insert({i, tgt}).second)
            b.rule(b.r_state[i], std::nullopt, CtxKind::Top, b.state_marker[tgt], ActKind::Rewrite,
                   Dir::S, {b.state_marker[tgt]}, b.qs[tgt]);
    return b.m;
}

Budget derive_budget(const RefWord& witness) {
    size_t cells = witness.size() + 3 * (cnt(witness) + 1) + 16;
    Budget b;
    b.max_cells = cells;
    b.max_steps = 2048 + 64ULL * cells * cells;
    return b;
}

}  // namespace rewb
