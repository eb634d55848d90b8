#include "rewb/langlab.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "rewb/syntax.hpp"

namespace rewb {

namespace {

AstPtr ww_rewb() {
    auto body = make_star(make_alt(make_literal("a"), make_literal("b")));
    return make_concat(make_capture(1, body), make_reference(1));
}

AstPtr square_rewb() {
    auto first = make_capture(1, make_reference(2));
    auto second = make_capture(2, make_concat(make_reference(1), make_literal("a")));
    return make_star(make_concat(first, second));
}

AstPtr cubic_rewb() {
    auto c1 = make_capture(1, make_concat(make_reference(4), make_literal("a")));
    auto c2 = make_capture(2, make_reference(3));
    auto c3 = make_capture(3, make_concat(make_reference(2), make_literal("a")));
    auto c4 = make_capture(4, make_concat(make_reference(1), make_reference(3)));
    return make_star(make_concat(make_concat(make_concat(c1, c2), c3), c4));
}

// a^n b^n by hand: push a marker per a, pop one per b, accept on the bare
// bottom symbol.  Pops move the pointer left instead of erasing, so the
// machine stays nonerasing.
StackMachine anbn_nesa() {
    StackMachine m;
    m.name = "anbn";
    m.flavor = Flavor::NESA;
    uint32_t a = m.input_alphabet.intern("a");
    uint32_t b = m.input_alphabet.intern("b");
    uint32_t z0 = m.add_stack_symbol("Z0");
    uint32_t star = m.add_stack_symbol("*");
    m.initial_stack = z0;
    uint32_t q0 = m.add_state("q0");
    uint32_t q1 = m.add_state("q1");
    uint32_t q2 = m.add_state("q2");
    m.start = q0;
    m.finals[q2] = true;

    auto rule = [&](uint32_t from, std::optional<uint32_t> read, CtxKind ck, uint32_t sym,
                    ActKind act, std::vector<uint32_t> payload, Dir dir, uint32_t to) {
        Rule r;
        r.from = from;
        r.read = read;
        r.ctx = ck;
        r.ctx_sym = sym;
        r.act = act;
        r.payload = std::move(payload);
        r.dir = dir;
        r.to = to;
        m.rules.push_back(r);
    };

    for (uint32_t z : {z0, star})
        rule(q0, a, CtxKind::Top, z, ActKind::Rewrite, {z, star}, Dir::S, q0);
    for (uint32_t z : {z0, star})
        rule(q0, std::nullopt, CtxKind::Top, z, ActKind::Move, {}, Dir::S, q1);
    rule(q1, b, CtxKind::Top, star, ActKind::Move, {}, Dir::L, q1);
    rule(q1, b, CtxKind::Interior, star, ActKind::Move, {}, Dir::L, q1);
    rule(q1, std::nullopt, CtxKind::Top, z0, ActKind::Move, {}, Dir::S, q2);
    rule(q1, std::nullopt, CtxKind::Interior, z0, ActKind::Move, {}, Dir::S, q2);
    return m;
}

}  // namespace

Example example(const std::string& name) {
    if (name == "ww") return ww_rewb();
    if (name == "square") return square_rewb();
    if (name == "cubic") return cubic_rewb();
    if (name == "anbn_nesa") return anbn_nesa();
    throw std::invalid_argument("unknown example: " + name);
}

std::vector<std::string> example_names() { return {"ww", "square", "cubic", "anbn_nesa"}; }

std::vector<Word> enumerate_words(const Alphabet& a, size_t max_len) {
    std::vector<Word> out;
    out.push_back({});
    std::vector<Word> layer = {{}};
    for (size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer) {
            for (uint32_t s = 0; s < a.size(); ++s) {
                Word v = w;
                v.push_back(s);
                next.push_back(v);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
        if (layer.empty()) break;  // empty alphabet
    }
    return out;
}

SliceReport language_slice(const Ast& a, const Alphabet& alphabet, size_t max_len) {
    RefNfa nfa = build_ref_nfa(a, alphabet);
    SliceReport rep;
    rep.max_len = max_len;
    for (const Word& w : enumerate_words(nfa.alphabet, max_len)) {
        ++rep.strings_checked;
        if (oracle_match(nfa, w).matched) rep.members.push_back(w);
    }
    return rep;
}

SliceReport language_slice(const StackMachine& m, const Alphabet& alphabet, size_t max_len,
                           const Budget& budget) {
    SliceReport rep;
    rep.max_len = max_len;
    for (const Word& w : enumerate_words(alphabet, max_len)) {
        ++rep.strings_checked;
        RunResult r = accepts(m, w, budget);
        if (r.accepted)
            rep.members.push_back(w);
        else if (!r.exhausted)
            ++rep.budget_hits;
    }
    return rep;
}

namespace {

Budget scale_budget(const Budget& b, double factor) {
    Budget out = b;
    out.max_steps = static_cast<uint64_t>(static_cast<double>(b.max_steps) * factor);
    return out;
}

MachineAgreement run_against(const StackMachine& m, const Alphabet& alphabet, size_t max_len,
                             const std::vector<Word>& oracle_members,
                             const std::vector<std::optional<RefWord>>& witnesses,
                             const BudgetPolicy& policy) {
    // A run that should accept needs roughly the space its witness spells out;
    // a run that should reject gets a margin over the largest of those, so a
    // refutation is "no acceptance well past the scale any member needs".
    Budget largest = policy.fallback;
    bool have_positive = false;
    std::vector<Budget> positive_budgets;
    for (const auto& wit : witnesses) {
        if (!wit) {
            positive_budgets.push_back(policy.fallback);
            continue;
        }
        Budget b = derive_budget(*wit);
        positive_budgets.push_back(b);
        if (!have_positive || b.max_steps > largest.max_steps) largest.max_steps = b.max_steps;
        if (!have_positive || b.max_cells > largest.max_cells) largest.max_cells = b.max_cells;
        have_positive = true;
    }
    Budget negative = scale_budget(largest, policy.negative_factor);

    MachineAgreement agree;
    agree.slice.max_len = max_len;
    size_t next_member = 0;
    for (const Word& w : enumerate_words(alphabet, max_len)) {
        ++agree.slice.strings_checked;
        bool expect = next_member < oracle_members.size() && oracle_members[next_member] == w;
        Budget budget = expect ? positive_budgets[next_member] : negative;
        if (expect) ++next_member;
        RunResult r = accepts(m, w, budget);
        if (policy.observer) policy.observer(m, w, r);
        if (r.accepted)
            agree.slice.members.push_back(w);
        else if (!r.exhausted)
            ++agree.slice.budget_hits;
        if (r.accepted != expect) agree.mismatches.push_back(w);
    }
    return agree;
}

}  // namespace

MachineAgreement check_machine_against_oracle(const Ast& a, const StackMachine& m,
                                              const Alphabet& alphabet, size_t max_len,
                                              const BudgetPolicy& policy) {
    RefNfa nfa = build_ref_nfa(a, alphabet);
    std::vector<Word> members;
    std::vector<std::optional<RefWord>> witnesses;
    for (const Word& w : enumerate_words(nfa.alphabet, max_len)) {
        OracleResult r = oracle_match(nfa, w);
        if (r.matched) {
            members.push_back(w);
            witnesses.push_back(r.witness);
        }
    }
    return run_against(m, nfa.alphabet, max_len, members, witnesses, policy);
}

CrosscheckReport crosscheck(const Ast& a, const Alphabet& alphabet, size_t max_len,
                            const BudgetPolicy& policy) {
    RefNfa nfa = build_ref_nfa(a, alphabet);
    CrosscheckReport rep;
    rep.oracle.max_len = max_len;
    std::vector<std::optional<RefWord>> witnesses;
    for (const Word& w : enumerate_words(nfa.alphabet, max_len)) {
        ++rep.oracle.strings_checked;
        OracleResult r = oracle_match(nfa, w);
        if (r.matched) {
            rep.oracle.members.push_back(w);
            witnesses.push_back(r.witness);
        }
    }

    StackMachine nsa = build_nsa(a, alphabet);
    rep.nsa = run_against(nsa, nfa.alphabet, max_len, rep.oracle.members, witnesses, policy);

    if (!has_captured_reference(a)) {
        StackMachine nesa = build_nesa(a, alphabet);
        rep.nesa = run_against(nesa, nfa.alphabet, max_len, rep.oracle.members, witnesses, policy);
    }
    return rep;
}

RefWord cubic_refword(int n) {
    if (n < 0) throw std::invalid_argument("cubic_refword: negative repeat count");
    // one round spells: open 1, ref 4, a, close 1, open 2, ref 3, close 2,
    // open 3, ref 2, a, close 3, open 4, ref 1, ref 3, close 4
    const uint32_t a = 0;  // Alphabet({"a"})
    RefWord round = {
        open(1), ref(4), letter(a), close(1), open(2), ref(3), close(2), open(3),
        ref(2),  letter(a), close(3), open(4), ref(1), ref(3), close(4),
    };
    RefWord out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), round.begin(), round.end());
    return out;
}

size_t cubic_length(int n) {
    assert(n >= 0);
    size_t m = static_cast<size_t>(n);
    return m * (m + 7) * (2 * m + 1) / 6;
}

}  // namespace rewb
