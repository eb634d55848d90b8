#include "catch2/catch_amalgamated.hpp"

#include "rewb/langlab.hpp"
#include "rewb/machine.hpp"

using namespace rewb;

namespace {

StackMachine anbn() { return std::get<StackMachine>(example("anbn_nesa")); }

Word mk(const StackMachine& m, const std::string& s) {
    Word w;
    for (char c : s) w.push_back(*m.input_alphabet.find(std::string(1, c)));
    return w;
}

}  // namespace

TEST_CASE("a^n b^n machine accepts and rejects") {
    StackMachine m = anbn();
    REQUIRE(validate_flavor(m).empty());
    Budget b;
    for (const char* s : {"", "ab", "aabb", "aaaabbbb"}) CHECK(accepts(m, mk(m, s), b).accepted);
    for (const char* s : {"a", "b", "ba", "aab", "abb", "abab"}) {
        RunResult r = accepts(m, mk(m, s), b);
        CHECK(!r.accepted);
        CHECK(r.exhausted);  // finite space, rejection is definitive
    }
}

TEST_CASE("the accepting run on ab renders as five configurations") {
    StackMachine m = anbn();
    RunResult r = accepts(m, mk(m, "ab"), Budget{});
    REQUIRE(r.accepted);
    REQUIRE(r.trace.size() == 5);
    CHECK(trace_render(m, r.trace, mk(m, "ab")) ==
          "q0 | ab | #Z0↾$\n"
          "q0 | b | #Z0*↾$\n"
          "q1 | b | #Z0*↾$\n"
          "q1 | ~ | #Z0↾*$\n"
          "q2 | ~ | #Z0↾*$\n");
    // input position never decreases along a run
    for (size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].config.pos >= r.trace[i - 1].config.pos);
}

TEST_CASE("configurations know their accessible region") {
    Config c;
    c.tape = {3, kCellCent, 5, 7, kCellDollar, 9, kCellDollar};
    c.ptr = 3;
    CHECK(accessible_end(c) == 4);
    CHECK(check_framing(c));
    c.ptr = 5;  // beyond the leftmost $
    CHECK(!check_framing(c));
    c.ptr = 4;  // on a $
    CHECK(!check_framing(c));
    c.tape = {3, kCellCent, kCellDollar};  // main tape $ missing after substack
    c.ptr = 0;
    CHECK(!check_framing(c));
    c.tape = {3, kCellDollar};
    CHECK(check_framing(c));
    c.ptr = -1;
    CHECK(check_framing(c));
}

TEST_CASE("substack splice and dissolve, scripted by hand") {
    // one machine, no input, rules applied directly
    StackMachine m;
    m.flavor = Flavor::NSA;
    uint32_t a1 = m.add_stack_symbol("a1");
    uint32_t a2 = m.add_stack_symbol("a2");
    uint32_t a3 = m.add_stack_symbol("a3");
    uint32_t b1 = m.add_stack_symbol("b1");
    uint32_t b2 = m.add_stack_symbol("b2");
    m.add_state("q");
    m.initial_stack = a1;
    Word eps;

    Config c;
    c.tape = {a1, kCellCent, b1, b2, kCellDollar, a2, a3, kCellDollar};
    c.ptr = 3;  // b2, top of the substack
    REQUIRE(check_framing(c));
    REQUIRE(accessible_end(c) == 4);

    auto apply = [&](CtxKind ck, uint32_t sym, ActKind act, std::vector<uint32_t> payload,
                     Dir dir) {
        Rule r;
        r.ctx = ck;
        r.ctx_sym = sym;
        r.act = act;
        r.payload = std::move(payload);
        r.dir = dir;
        auto next = apply_rule(m, r, c, eps);
        REQUIRE(next.has_value());
        c = *next;
        REQUIRE(check_framing(c));
    };

    // popping rewrites the top cell away and lands on its left neighbor
    apply(CtxKind::Top, b2, ActKind::Rewrite, {}, Dir::S);
    CHECK(c.tape == std::vector<uint32_t>{a1, kCellCent, b1, kCellDollar, a2, a3, kCellDollar});
    CHECK(c.ptr == 2);

    apply(CtxKind::Top, b1, ActKind::Rewrite, {}, Dir::S);
    CHECK(c.tape == std::vector<uint32_t>{a1, kCellCent, kCellDollar, a2, a3, kCellDollar});
    CHECK(c.ptr == 1);  // the substack fence, now empty

    apply(CtxKind::EmptySubstackTop, 0, ActKind::Destroy, {}, Dir::S);
    CHECK(c.tape == std::vector<uint32_t>{a1, a2, a3, kCellDollar});
    CHECK(c.ptr == 1);  // lands on the cell the fence pointed past

    // splice a fresh substack in front of a3, which is now the top cell
    c.ptr = 2;
    apply(CtxKind::Top, a3, ActKind::Create, {b1, b2}, Dir::S);
    CHECK(c.tape == std::vector<uint32_t>{a1, a2, kCellCent, b1, b2, kCellDollar, a3, kCellDollar});
    CHECK(c.ptr == 4);  // top of the new substack
}

TEST_CASE("rules that do not fit the configuration do nothing") {
    StackMachine m = anbn();
    Config c = initial_config(m);
    Word w = mk(m, "ab");

    Rule r;
    r.from = 0;
    r.read = m.input_alphabet.find("b");
    r.ctx = CtxKind::Top;
    r.ctx_sym = *m.stack_id("Z0");
    r.act = ActKind::Move;
    r.dir = Dir::S;
    CHECK(!apply_rule(m, r, c, w).has_value());  // wrong input symbol

    r.read.reset();
    r.ctx_sym = *m.stack_id("*");
    CHECK(!apply_rule(m, r, c, w).has_value());  // wrong context symbol

    r.ctx = CtxKind::Bottom;
    CHECK(!apply_rule(m, r, c, w).has_value());  // pointer is not at #

    // moving right from the bottom is how # is left
    c.ptr = -1;
    r.act = ActKind::Move;
    r.dir = Dir::R;
    auto n = apply_rule(m, r, c, w);
    REQUIRE(n.has_value());
    CHECK(n->ptr == 0);
}

TEST_CASE("acceptance needs the input consumed and the stack fences gone") {
    StackMachine m = anbn();
    Word w = mk(m, "ab");
    Config c = initial_config(m);
    c.state = 2;  // the final state
    CHECK(!is_accepting(m, c, w));  // input left
    c.pos = 2;
    CHECK(is_accepting(m, c, w));
    c.tape = {*m.stack_id("Z0"), kCellCent, kCellDollar, kCellDollar};
    CHECK(!is_accepting(m, c, w));  // an undissolved substack remains
    c.tape = {*m.stack_id("Z0"), kCellDollar};
    c.state = 1;
    CHECK(!is_accepting(m, c, w));  // not a final state
}

TEST_CASE("flavor validation") {
    StackMachine m = anbn();
    REQUIRE(validate_flavor(m).empty());

    SECTION("rewriting away from the top") {
        Rule r = m.rules[0];
        r.ctx = CtxKind::Interior;
        m.rules.push_back(r);
        auto v = validate_flavor(m);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule_index == m.rules.size() - 1);
    }
    SECTION("erasing rewrites break the nonerasing contract") {
        Rule r = m.rules[0];
        r.payload = {};  // pop
        m.rules.push_back(r);
        CHECK(!validate_flavor(m).empty());
        m.rules.back().payload = {*m.stack_id("*"), *m.stack_id("*")};  // wrong prefix
        CHECK(!validate_flavor(m).empty());
        m.flavor = Flavor::SA;  // a plain stack automaton may erase
        CHECK(validate_flavor(m).empty());
    }
    SECTION("substacks need the nested flavor") {
        Rule r;
        r.from = r.to = 0;
        r.ctx = CtxKind::Interior;
        r.ctx_sym = *m.stack_id("*");
        r.act = ActKind::Create;
        r.payload = {*m.stack_id("*")};
        m.rules.push_back(r);
        CHECK(!validate_flavor(m).empty());
        m.flavor = Flavor::NSA;
        CHECK(validate_flavor(m).empty());
    }
    SECTION("moves are constrained at the edges") {
        Rule r;
        r.from = r.to = 0;
        r.ctx = CtxKind::Top;
        r.ctx_sym = *m.stack_id("Z0");
        r.act = ActKind::Move;
        r.dir = Dir::R;  // off the accessible region
        m.rules.push_back(r);
        CHECK(!validate_flavor(m).empty());
        m.rules.back().ctx = CtxKind::Bottom;
        m.rules.back().dir = Dir::L;
        CHECK(!validate_flavor(m).empty());
        m.rules.back().dir = Dir::R;
        CHECK(validate_flavor(m).empty());
    }
    SECTION("rule parts must be in range") {
        Rule r;
        r.from = 99;
        m.rules.push_back(r);
        CHECK(!validate_flavor(m).empty());
    }
}

TEST_CASE("search budgets cut off honestly") {
    StackMachine m = anbn();
    Word w = mk(m, "aaaabbbb");
    RunResult full = accepts(m, w, Budget{});
    REQUIRE(full.accepted);

    RunResult starved = accepts(m, w, Budget{3, 10'000});
    CHECK(!starved.accepted);
    CHECK(!starved.exhausted);  // the cutoff is reported, not silent

    RunResult cramped = accepts(m, w, Budget{1'000'000, 3});
    CHECK(!cramped.accepted);
    CHECK(!cramped.exhausted);
}

TEST_CASE("machines round trip through JSON") {
    StackMachine m = anbn();
    StackMachine back = machine_from_json(machine_to_json(m));
    CHECK(back.name == m.name);
    CHECK(back.flavor == m.flavor);
    CHECK(back.states == m.states);
    CHECK(back.stack_symbols == m.stack_symbols);
    CHECK(back.input_alphabet.names() == m.input_alphabet.names());
    CHECK(back.start == m.start);
    CHECK(back.initial_stack == m.initial_stack);
    CHECK(back.finals == m.finals);
    CHECK(back.rules == m.rules);

    // behaviour carries over
    CHECK(accepts(back, mk(back, "aabb"), Budget{}).accepted);
    CHECK(!accepts(back, mk(back, "aab"), Budget{}).accepted);
}

TEST_CASE("malformed machine JSON is rejected") {
    StackMachine m = anbn();
    std::string good = machine_to_json(m);
    CHECK_THROWS_AS(machine_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(machine_from_json("{}"), std::invalid_argument);

    std::string bad = good;
    bad.replace(bad.find("\"nesa\""), 6, "\"neza\"");
    CHECK_THROWS_AS(machine_from_json(bad), std::invalid_argument);

    bad = good;
    bad.replace(bad.find("\"q2\""), 4, "\"q7\"");  // finals name an unknown state
    CHECK_THROWS_AS(machine_from_json(bad), std::invalid_argument);
}

TEST_CASE("dot export mentions every state") {
    StackMachine m = anbn();
    std::string dot = machine_to_dot(m);
    CHECK(dot.find("digraph") != std::string::npos);
    for (const std::string& s : m.states) CHECK(dot.find("\"" + s + "\"") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("the empty word renders as a tilde") {
    StackMachine m = anbn();
    Config c = initial_config(m);
    CHECK(render_config(m, c, {}) == "q0 | ~ | #Z0↾$");
    c.ptr = -1;
    CHECK(render_config(m, c, {}) == "q0 | ~ | #↾Z0$");
}
