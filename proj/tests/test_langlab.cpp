#include "catch2/catch_amalgamated.hpp"

#include "rewb/langlab.hpp"
#include "rewb/syntax.hpp"

using namespace rewb;

TEST_CASE("the example catalogue") {
    CHECK(example_names().size() == 4);
    CHECK(std::holds_alternative<AstPtr>(example("ww")));
    CHECK(std::holds_alternative<AstPtr>(example("square")));
    CHECK(std::holds_alternative<AstPtr>(example("cubic")));
    CHECK(std::holds_alternative<StackMachine>(example("anbn_nesa")));
    CHECK_THROWS_AS(example("nope"), std::invalid_argument);

    CHECK(pretty_print(*std::get<AstPtr>(example("ww"))) == "(1:(a+b)*)\\1");
    CHECK(pretty_print(*std::get<AstPtr>(example("square"))) == "((1:\\2)(2:\\1a))*");
    CHECK(pretty_print(*std::get<AstPtr>(example("cubic"))) ==
          "((1:\\4a)(2:\\3)(3:\\2a)(4:\\1\\3))*");
}

TEST_CASE("word enumeration is shortest first, lexicographic within a length") {
    Alphabet ab({"a", "b"});
    std::vector<Word> ws = enumerate_words(ab, 2);
    REQUIRE(ws.size() == 7);
    CHECK(ws[0] == Word{});
    CHECK(ws[1] == Word{0});
    CHECK(ws[2] == Word{1});
    CHECK(ws[3] == Word{0, 0});
    CHECK(ws[6] == Word{1, 1});
    CHECK(enumerate_words(Alphabet({"a"}), 5).size() == 6);
}

TEST_CASE("square lengths fall out of the oracle slice") {
    AstPtr sq = std::get<AstPtr>(example("square"));
    SliceReport rep = language_slice(*sq, Alphabet({"a"}), 16);
    std::set<size_t> lens;
    for (const Word& w : rep.members) lens.insert(w.size());
    CHECK(lens == std::set<size_t>{0, 1, 4, 9, 16});
    CHECK(rep.strings_checked == 17);
}

TEST_CASE("cubic ref-words spell the predicted lengths") {
    Alphabet a({"a"});
    for (int n = 0; n <= 4; ++n) {
        RefWord v = cubic_refword(n);
        REQUIRE(is_matching(v));
        auto d = deref(v);
        REQUIRE(d.has_value());
        INFO("n = " << n);
        CHECK(d->size() == cubic_length(n));
        CHECK(deref_closed_form(v) == *d);
    }
    CHECK(cubic_length(0) == 0);
    CHECK(cubic_length(1) == 4);
    CHECK(cubic_length(2) == 15);
    CHECK(cubic_length(3) == 35);
    CHECK(cubic_length(4) == 66);
}

TEST_CASE("cubic members match the closed form on a slice") {
    AstPtr cubic = std::get<AstPtr>(example("cubic"));
    SliceReport rep = language_slice(*cubic, Alphabet({"a"}), 15);
    std::set<size_t> lens;
    for (const Word& w : rep.members) lens.insert(w.size());
    CHECK(lens == std::set<size_t>{0, 4, 15});
}

TEST_CASE("machine slices respect the budget report") {
    StackMachine m = std::get<StackMachine>(example("anbn_nesa"));
    SliceReport rep = language_slice(m, m.input_alphabet, 8, Budget{});
    std::set<size_t> lens;
    for (const Word& w : rep.members) lens.insert(w.size());
    CHECK(lens == std::set<size_t>{0, 2, 4, 6, 8});
    CHECK(rep.budget_hits == 0);

    // every accepted word really is a^n b^n
    for (const Word& w : rep.members) {
        size_t n = w.size() / 2;
        for (size_t i = 0; i < w.size(); ++i)
            CHECK(m.input_alphabet.name(w[i]) == (i < n ? "a" : "b"));
    }

    SliceReport starved = language_slice(m, m.input_alphabet, 8, Budget{2, 4});
    CHECK(starved.members.empty());
    CHECK(starved.budget_hits > 0);
}

TEST_CASE("crosschecks agree on the catalogue expressions") {
    CrosscheckReport ww = crosscheck(*std::get<AstPtr>(example("ww")), Alphabet({"a", "b"}), 5);
    CHECK(ww.ok());
    REQUIRE(ww.nesa.has_value());  // no reference under a capture
    CHECK(ww.nesa->slice.members.size() == ww.oracle.members.size());

    CrosscheckReport sq = crosscheck(*std::get<AstPtr>(example("square")), Alphabet({"a"}), 9);
    CHECK(sq.ok());
    CHECK(!sq.nesa.has_value());
    CHECK(sq.oracle.members.size() == 4);  // lengths 0, 1, 4, 9
}

TEST_CASE("the observer sees every machine run") {
    size_t runs = 0;
    BudgetPolicy policy;
    policy.observer = [&](const StackMachine&, const Word&, const RunResult&) { ++runs; };
    AstPtr ww = std::get<AstPtr>(example("ww"));
    crosscheck(*ww, Alphabet({"a", "b"}), 3, policy);
    CHECK(runs == 2 * 15);  // both machine legs, 15 words each
}
