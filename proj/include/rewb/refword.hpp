// Ref-words: words over letters, capture brackets [i ]i, and reference
// numbers i.  Dereferencing replaces each number, left to right, by the
// letters of the nearest bracketed group of that label to its left; a number
// whose nearest [i has no matching ]i before the number makes the whole word
// undefined, and a number with no [i to its left at all denotes the empty
// word.
//
// Token syntax accepted by parse_refword(): whitespace separated tokens,
// "[i" and "]i" for brackets, a bare integer for a number, anything else a
// letter.  Letters follow the symbol naming rule from syntax.hpp.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rewb {

// Interned letter alphabet; ids are dense and stable in insertion order.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(const std::vector<std::string>& symbols);

    uint32_t intern(const std::string& name);
    std::optional<uint32_t> find(const std::string& name) const;
    const std::string& name(uint32_t id) const { return names_.at(id); }
    size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    static bool valid_symbol(const std::string& name);

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, uint32_t> index_;
};

using Word = std::vector<uint32_t>;

enum class RefSymKind : uint8_t { Letter, Open, Close, Ref };

struct RefSym {
    RefSymKind kind;
    uint32_t value;  // Letter: alphabet id; Open/Close/Ref: label >= 1

    bool operator==(const RefSym&) const = default;
    auto operator<=>(const RefSym&) const = default;
};

inline RefSym letter(uint32_t id) { return {RefSymKind::Letter, id}; }
inline RefSym open(uint32_t label) { return {RefSymKind::Open, label}; }
inline RefSym close(uint32_t label) { return {RefSymKind::Close, label}; }
inline RefSym ref(uint32_t label) { return {RefSymKind::Ref, label}; }

using RefWord = std::vector<RefSym>;

// Bracket erasure: keeps letters, drops brackets.  Throws on numbers.
Word g_image(std::span<const RefSym> v);

// v = segments[0] numbers[0] segments[1] ... numbers[m-1] segments[m],
// every segment free of numbers.
struct Decomposition {
    std::vector<RefWord> segments;
    std::vector<uint32_t> numbers;
};
Decomposition decompose(const RefWord& v);

// Number of reference tokens.
size_t cnt(const RefWord& v);

// Every prefix ending just before a number closes all brackets of that
// number's label which it opens: whenever [i occurs in the prefix, a ]i
// follows it in the prefix before any other bracket of label i.
bool is_matching(const RefWord& v);

// One run of the rewriting procedure.  values[r] is the bracketed group
// substituted for the (r+1)-th number processed (empty when the number was
// unbound); snapshots[0] is the input and snapshots[r] the tape after the
// r-th number was eliminated.  On the undefined case result is nullopt and
// values/snapshots stop at the last completed elimination.
struct DerefRun {
    std::optional<Word> result;
    std::vector<RefWord> values;
    std::vector<RefWord> snapshots;
    size_t loops = 0;
};

DerefRun deref_tape(const RefWord& v);
std::optional<Word> deref(const RefWord& v);

// Equivalent computation for matching v, assembling the result segment by
// segment instead of rewriting a tape.  Precondition: is_matching(v).
Word deref_closed_form(const RefWord& v);

std::string refsym_to_string(const RefSym& s, const Alphabet& a);
std::string refword_to_string(const RefWord& v, const Alphabet& a);
// Extends `a` with letters it has not seen.  Throws std::invalid_argument on
// malformed tokens.
RefWord parse_refword(const std::string& line, Alphabet& a);

std::string word_to_string(const Word& w, const Alphabet& a);

}  // namespace rewb
