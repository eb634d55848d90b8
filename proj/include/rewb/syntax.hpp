// Syntax trees for regular expressions with backreferences (rewbs).
//
// Concrete grammar accepted by parse():
//
//   expr   ::= term ('+' term)*             alternation
//   term   ::= factor factor*               juxtaposition is concatenation
//   factor ::= atom '*'*
//   atom   ::= letter | quoted | '~'        '~' is the empty word
//            | '\' INT                      reference
//            | '(' INT ':' expr ')'         capture with label INT >= 1
//            | '(' expr ')'                 grouping
//
// A letter is a single alphabetic character; a quoted symbol is 'name' with
// name over [A-Za-z0-9_], at least one character not a digit.  Purely numeric
// symbol names are rejected so that letters can never be confused with
// reference labels in ref-word token streams or on machine stacks.
// Whitespace between tokens is ignored.
//
// A capture (i: e) is only well formed when i does not occur in var(e), the
// set of labels captured or referenced anywhere below e.

#pragma once

#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewb {

enum class AstKind { Literal, Epsilon, Reference, Concat, Alt, Star, Capture };

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    AstKind kind;
    std::string symbol;  // Literal
    int label = 0;       // Reference, Capture
    AstPtr left;         // Concat/Alt left, Star/Capture child
    AstPtr right;        // Concat/Alt right
    std::set<int> vars;  // labels captured or referenced in this subtree
};

AstPtr make_literal(const std::string& symbol);
AstPtr make_epsilon();
AstPtr make_reference(int label);
AstPtr make_concat(AstPtr l, AstPtr r);
AstPtr make_alt(AstPtr l, AstPtr r);
AstPtr make_star(AstPtr child);
// Throws std::invalid_argument when label < 1 or label occurs in child->vars.
AstPtr make_capture(int label, AstPtr child);

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, size_t pos);
    size_t position;  // byte offset into the input text
};

AstPtr parse(const std::string& text);

// Canonical round-trippable rendering: parse(pretty_print(a)) equals a.
std::string pretty_print(const Ast& a);

bool ast_equal(const Ast& a, const Ast& b);

// Largest label occurring in the expression, 0 when there is none.
int max_label(const Ast& a);

// True when some reference lies inside some capture.  Machines built from
// such expressions need the full substack mechanism; without them the
// nonerasing specialization applies.
bool has_captured_reference(const Ast& a);

// Distinct literal symbols, sorted.
std::vector<std::string> literals_of(const Ast& a);

// Labels appearing as references / as captures, sorted.
std::set<int> reference_labels(const Ast& a);
std::set<int> capture_labels(const Ast& a);

std::string ast_to_json(const Ast& a);

struct RandomRewbParams {
    int max_depth = 4;
    int max_k = 3;
    std::vector<std::string> alphabet = {"a", "b"};
};

AstPtr random_rewb(const RandomRewbParams& params, std::mt19937& rng);

}  // namespace rewb
