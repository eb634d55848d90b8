#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "rewb/construct.hpp"
#include "rewb/langlab.hpp"
#include "rewb/refnfa.hpp"
#include "rewb/syntax.hpp"

using namespace rewb;

namespace {

Word mk(const Alphabet& a, const std::string& s) {
    Word w;
    for (char c : s) w.push_back(*a.find(std::string(1, c)));
    return w;
}

}  // namespace

TEST_CASE("compiled machines carry their flavor soundly") {
    for (const char* s : {"a", "(1:a)\\1", "(1:(a+b)*)\\1", "\\1a", "((1:a)+b)*\\1"}) {
        AstPtr e = parse(s);
        INFO(s);
        CHECK(validate_flavor(build_nsa(*e)).empty());
        CHECK(validate_flavor(build_nesa(*e)).empty());
    }
    for (const char* s : {"((1:\\2)(2:\\1a))*", "(1:(2:a)\\2)\\1"}) {
        AstPtr e = parse(s);
        INFO(s);
        CHECK(validate_flavor(build_nsa(*e)).empty());
        CHECK_THROWS_AS(build_nesa(*e), std::invalid_argument);
    }
}

TEST_CASE("copy language through the nested construction") {
    AstPtr e = parse("(1:(a+b)*)\\1");
    StackMachine m = build_nsa(*e);
    Budget b{200'000, 512};
    for (const char* s : {"", "aa", "abab", "babbab"}) {
        INFO(s);
        CHECK(accepts(m, mk(m.input_alphabet, s), b).accepted);
    }
    for (const char* s : {"a", "ab", "aba", "abba"}) {
        RunResult r = accepts(m, mk(m.input_alphabet, s), b);
        INFO(s);
        CHECK(!r.accepted);
        CHECK(r.exhausted);
    }
}

TEST_CASE("the nonerasing specialization reaches the same words") {
    AstPtr e = parse("(1:(a+b)*)\\1");
    StackMachine m = build_nesa(*e);
    REQUIRE(m.flavor == Flavor::NESA);
    Budget b{200'000, 512};
    CHECK(accepts(m, mk(m.input_alphabet, "abab"), b).accepted);
    CHECK(accepts(m, {}, b).accepted);
    CHECK(!accepts(m, mk(m.input_alphabet, "aba"), b).accepted);

    // the stack never shrinks along any accepting run
    RunResult r = accepts(m, mk(m.input_alphabet, "bbbb"), b);
    REQUIRE(r.accepted);
    for (size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].config.tape.size() >= r.trace[i - 1].config.tape.size());
}

TEST_CASE("an unbound reference contributes the empty word") {
    AstPtr e = parse("\\1a");
    for (StackMachine m : {build_nsa(*e), build_nesa(*e)}) {
        Budget b{50'000, 256};
        CHECK(accepts(m, mk(m.input_alphabet, "a"), b).accepted);
        CHECK(!accepts(m, {}, b).accepted);
        CHECK(!accepts(m, mk(m.input_alphabet, "aa"), b).accepted);
    }

    // bound or unbound depending on the loop count
    AstPtr f = parse("(1:a)*\\1");
    StackMachine m = build_nsa(*f);
    Budget b{50'000, 256};
    CHECK(accepts(m, {}, b).accepted);          // zero rounds, unbound
    CHECK(accepts(m, mk(m.input_alphabet, "aa"), b).accepted);
    CHECK(!accepts(m, mk(m.input_alphabet, "a"), b).accepted);
}

TEST_CASE("squares come out of the nested machine") {
    AstPtr e = parse("((1:\\2)(2:\\1a))*");
    StackMachine m = build_nsa(*e);
    Budget b{2'000'000, 2048};
    for (size_t n : {0u, 1u, 2u, 3u}) {
        Word w(n * n, *m.input_alphabet.find("a"));
        INFO(n * n << " letters");
        CHECK(accepts(m, w, b).accepted);
    }
    for (size_t len : {2u, 3u, 5u, 8u}) {
        Word w(len, *m.input_alphabet.find("a"));
        RunResult r = accepts(m, w, b);
        INFO(len << " letters");
        CHECK(!r.accepted);
        CHECK(r.exhausted);
    }
}

namespace {

// some ref-word of the sublanguage has no letters (possibly no tokens at all)
bool letterfree_nullable(const Ast& a) {
    switch (a.kind) {
        case AstKind::Literal: return false;
        case AstKind::Epsilon: return true;
        case AstKind::Reference: return true;
        case AstKind::Star: return true;
        case AstKind::Capture: return letterfree_nullable(*a.left);
        case AstKind::Concat: return letterfree_nullable(*a.left) && letterfree_nullable(*a.right);
        case AstKind::Alt: return letterfree_nullable(*a.left) || letterfree_nullable(*a.right);
    }
    return false;
}

// some ref-word with at least one token but no letters
bool letterfree_nonempty(const Ast& a) {
    switch (a.kind) {
        case AstKind::Literal:
        case AstKind::Epsilon: return false;
        case AstKind::Reference: return true;
        case AstKind::Star: return letterfree_nonempty(*a.left);
        case AstKind::Capture: return letterfree_nullable(*a.left);  // the brackets count
        case AstKind::Concat:
            return (letterfree_nonempty(*a.left) && letterfree_nullable(*a.right)) ||
                   (letterfree_nullable(*a.left) && letterfree_nonempty(*a.right));
        case AstKind::Alt: return letterfree_nonempty(*a.left) || letterfree_nonempty(*a.right);
    }
    return false;
}

// a star whose body can emit tokens without consuming input lets the stack
// grow forever; searches on such machines can only be cut off, not exhausted
bool has_silent_pump(const Ast& a) {
    if (a.kind == AstKind::Star && letterfree_nonempty(*a.left)) return true;
    return (a.left && has_silent_pump(*a.left)) || (a.right && has_silent_pump(*a.right));
}

}  // namespace

TEST_CASE("slice agreement between oracle and machines on random expressions") {
    std::mt19937 rng(1234);
    RandomRewbParams p;
    p.max_depth = 3;
    for (int i = 0; i < 40; ++i) {
        AstPtr e = random_rewb(p, rng);
        INFO(i << ": " << pretty_print(*e));
        CrosscheckReport rep = crosscheck(*e, Alphabet(p.alphabet), 4);
        CHECK(rep.ok());
        if (!has_silent_pump(*e)) {
            CHECK(rep.nsa.slice.budget_hits == 0);
            if (rep.nesa) CHECK(rep.nesa->slice.budget_hits == 0);
        }
    }
}

TEST_CASE("budgets grow with the witness and stay positive") {
    Alphabet a({"a", "b"});
    RefWord small = parse_refword("[1 a ]1 1", a);
    RefWord big = parse_refword("[1 a b a b ]1 1 [2 a ]2 2 1 1", a);
    Budget bs = derive_budget(small);
    Budget bb = derive_budget(big);
    CHECK(bs.max_steps > 0);
    CHECK(bs.max_cells > small.size());
    CHECK(bb.max_steps > bs.max_steps);
    CHECK(bb.max_cells > bs.max_cells);

    // enough to actually drive the run it was derived from
    AstPtr e = parse("(1:a)\\1");
    StackMachine m = build_nsa(*e);
    CHECK(accepts(m, mk(m.input_alphabet, "aa"), bs).accepted);
}

TEST_CASE("machine traces for compiled runs hold the framing invariants") {
    AstPtr e = parse("((1:\\2)(2:\\1a))*");
    StackMachine m = build_nsa(*e);
    Word w(4, *m.input_alphabet.find("a"));
    RunResult r = accepts(m, w, Budget{2'000'000, 2048});
    REQUIRE(r.accepted);
    REQUIRE(r.trace.size() > 2);
    uint32_t pos = 0;
    for (const TraceStep& st : r.trace) {
        CHECK(check_framing(st.config));
        CHECK(st.config.pos >= pos);
        pos = st.config.pos;
    }
    // the final configuration is exactly the accepting shape
    CHECK(is_accepting(m, r.trace.back().config, w));
}

TEST_CASE("stack alphabets name the tokens they spell") {
    AstPtr e = parse("(2:a(1:b)\\1)\\2");
    StackMachine m = build_nsa(*e);
    for (const char* sym : {"Z0", "a", "b", "[1", "]1", "1", "[2", "]2", "2"}) {
        INFO(sym);
        CHECK(m.stack_id(sym).has_value());
    }
}
