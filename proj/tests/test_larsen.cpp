#include "catch2/catch_amalgamated.hpp"

#include "rewb/langlab.hpp"
#include "rewb/larsen.hpp"
#include "rewb/refnfa.hpp"
#include "rewb/syntax.hpp"

using namespace rewb;

TEST_CASE("hierarchy alphabet and expressions") {
    Alphabet a0 = larsen_alphabet(0);
    REQUIRE(a0.names() == std::vector<std::string>{"a0l", "a0m", "a0r"});
    Alphabet a1 = larsen_alphabet(1);
    REQUIRE(a1.size() == 6);
    REQUIRE(a1.name(3) == "a1l");

    CHECK(pretty_print(*larsen_rewb(0)) == "('a0l''a0m''a0r')*");
    CHECK(pretty_print(*larsen_rewb(1)) ==
          "('a1l'(1:('a0l''a0m''a0r')*)'a1m'\\1'a1r')*");
    CHECK(pretty_print(*larsen_rewb(2)) ==
          "('a2l'(2:('a1l'(1:('a0l''a0m''a0r')*)'a1m'\\1'a1r')*)'a2m'\\2'a2r')*");

    // level i uses labels 1..i only
    CHECK(max_label(*larsen_rewb(0)) == 0);
    CHECK(max_label(*larsen_rewb(3)) == 3);
    CHECK_THROWS_AS(larsen_rewb(-1), std::invalid_argument);
}

TEST_CASE("level 0 machine is the bare loop") {
    StackMachine m = larsen_nesa(0);
    CHECK(m.states.size() == 3);
    CHECK(m.rules.size() == 12);  // 3 push edges, each for all 4 stack symbols
    CHECK(validate_flavor(m).empty());
}

TEST_CASE("hierarchy machines validate as nonerasing") {
    for (int i = 1; i <= 3; ++i) {
        StackMachine m = larsen_nesa(i);
        INFO("level " << i);
        CHECK(validate_flavor(m).empty());
    }
}

TEST_CASE("hierarchy machines agree with the oracle on short words") {
    // level 0 to length 6, level 1 to length 5; the acceptance suite pushes
    // these bounds further
    for (int i : {0, 1}) {
        AstPtr x = larsen_rewb(i);
        Alphabet a = larsen_alphabet(i);
        StackMachine m = larsen_nesa(i);
        size_t len = i == 0 ? 6 : 5;
        MachineAgreement agree = check_machine_against_oracle(*x, m, a, len);
        INFO("level " << i);
        CHECK(agree.mismatches.empty());
        CHECK(agree.slice.budget_hits == 0);
    }
}

TEST_CASE("level 2 machine accepts nested members and rejects mutants") {
    StackMachine m = larsen_nesa(2);
    Alphabet a = larsen_alphabet(2);
    auto word = [&](std::initializer_list<const char*> syms) {
        Word w;
        for (const char* s : syms) w.push_back(*a.find(s));
        return w;
    };

    Budget b{200'000, 512};
    CHECK(accepts(m, {}, b).accepted);
    CHECK(accepts(m, word({"a2l", "a2m", "a2r"}), b).accepted);
    Word nested = word({"a2l", "a1l", "a1m", "a1r", "a2m", "a1l", "a1m", "a1r", "a2r"});
    CHECK(accepts(m, nested, b).accepted);

    // the copy after a2m must repeat the capture exactly
    Word bad = nested;
    bad[6] = *a.find("a0m");
    RunResult r = accepts(m, bad, b);
    CHECK(!r.accepted);
    CHECK(r.exhausted);

    Word truncated(nested.begin(), nested.end() - 1);
    CHECK(!accepts(m, truncated, b).accepted);
}

TEST_CASE("deep level sanity: level 3 runs its shortest nonempty member") {
    StackMachine m = larsen_nesa(3);
    Alphabet a = larsen_alphabet(3);
    Word w = {*a.find("a3l"), *a.find("a3m"), *a.find("a3r")};
    Budget b{500'000, 1024};
    CHECK(accepts(m, w, b).accepted);
    CHECK(!accepts(m, {*a.find("a3l"), *a.find("a3m")}, b).accepted);
}
