#include "rewb/refword.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rewb {

Alphabet::Alphabet(const std::vector<std::string>& symbols) {
    for (const auto& s : symbols) {
        if (!valid_symbol(s)) throw std::invalid_argument("bad symbol name '" + s + "'");
        intern(s);
    }
}

uint32_t Alphabet::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

std::optional<uint32_t> Alphabet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Alphabet::valid_symbol(const std::string& name) {
    if (name.empty()) return false;
    bool nondigit = false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        if (!std::isdigit(static_cast<unsigned char>(c))) nondigit = true;
    }
    return nondigit;
}

Word g_image(std::span<const RefSym> v) {
    Word out;
    for (const RefSym& s : v) {
        if (s.kind == RefSymKind::Ref)
            throw std::invalid_argument("bracket erasure applied to a word containing a number");
        if (s.kind == RefSymKind::Letter) out.push_back(s.value);
    }
    return out;
}

Decomposition decompose(const RefWord& v) {
    Decomposition d;
    d.segments.emplace_back();
    for (const RefSym& s : v) {
        if (s.kind == RefSymKind::Ref) {
            d.numbers.push_back(s.value);
            d.segments.emplace_back();
        } else {
            d.segments.back().push_back(s);
        }
    }
    return d;
}

size_t cnt(const RefWord& v) {
    return static_cast<size_t>(
        std::count_if(v.begin(), v.end(), [](const RefSym& s) { return s.kind == RefSymKind::Ref; }));
}

bool is_matching(const RefWord& v) {
    for (size_t r = 0; r < v.size(); ++r) {
        if (v[r].kind != RefSymKind::Ref) continue;
        uint32_t n = v[r].value;
        // every [n in the prefix must be followed, still in the prefix,
        // by ]n before any other bracket of label n
        for (size_t p = 0; p < r; ++p) {
            if (!(v[p].kind == RefSymKind::Open && v[p].value == n)) continue;
            bool closed = false;
            for (size_t q = p + 1; q < r; ++q) {
                if (v[q].kind != RefSymKind::Open && v[q].kind != RefSymKind::Close) continue;
                if (v[q].value != n) continue;
                closed = v[q].kind == RefSymKind::Close;
                break;
            }
            if (!closed) return false;
        }
    }
    return true;
}

DerefRun deref_tape(const RefWord& v) {
    DerefRun run;
    RefWord tape = v;
    run.snapshots.push_back(tape);
    for (;;) {
        // seek the leftmost number
        size_t rpos = 0;
        while (rpos < tape.size() && tape[rpos].kind != RefSymKind::Ref) ++rpos;
        if (rpos == tape.size()) {
            run.result = g_image(tape);
            return run;
        }
        uint32_t n = tape[rpos].value;

        // nearest [n to its left
        size_t opos = rpos;
        while (opos > 0 && !(tape[opos - 1].kind == RefSymKind::Open && tape[opos - 1].value == n))
            --opos;
        if (opos == 0) {
            // unbound: the number denotes the empty word
            tape.erase(tape.begin() + static_cast<ptrdiff_t>(rpos));
            run.values.emplace_back();
            run.snapshots.push_back(tape);
            ++run.loops;
            continue;
        }
        --opos;  // index of the [n itself

        // a ]n must occur before the number, otherwise the value is undefined
        size_t cpos = opos + 1;
        while (cpos < rpos && !(tape[cpos].kind == RefSymKind::Close && tape[cpos].value == n))
            ++cpos;
        if (cpos == rpos) {
            run.result = std::nullopt;
            return run;
        }

        RefWord group(tape.begin() + static_cast<ptrdiff_t>(opos) + 1,
                      tape.begin() + static_cast<ptrdiff_t>(cpos));
        // copy the group's letters in front of the number, then drop the number
        RefWord next(tape.begin(), tape.begin() + static_cast<ptrdiff_t>(rpos));
        for (const RefSym& s : group)
            if (s.kind == RefSymKind::Letter) next.push_back(s);
        next.insert(next.end(), tape.begin() + static_cast<ptrdiff_t>(rpos) + 1, tape.end());
        tape = std::move(next);

        run.values.push_back(std::move(group));
        run.snapshots.push_back(tape);
        ++run.loops;
    }
}

std::optional<Word> deref(const RefWord& v) { return deref_tape(v).result; }

Word deref_closed_form(const RefWord& v) {
    Decomposition d = decompose(v);
    RefWord s = d.segments[0];
    for (size_t r = 0; r < d.numbers.size(); ++r) {
        uint32_t n = d.numbers[r];
        size_t opos = s.size();
        while (opos > 0 && !(s[opos - 1].kind == RefSymKind::Open && s[opos - 1].value == n)) --opos;
        if (opos > 0) {
            size_t cpos = opos;  // first ]n past the [n at opos-1
            while (cpos < s.size() && !(s[cpos].kind == RefSymKind::Close && s[cpos].value == n))
                ++cpos;
            if (cpos == s.size())
                throw std::invalid_argument("closed-form dereference of a word that is not matching");
            for (size_t q = opos; q < cpos; ++q)
                if (s[q].kind == RefSymKind::Letter) s.push_back(s[q]);
        }
        s.insert(s.end(), d.segments[r + 1].begin(), d.segments[r + 1].end());
    }
    return g_image(s);
}

std::string refsym_to_string(const RefSym& s, const Alphabet& a) {
    switch (s.kind) {
        case RefSymKind::Letter: return a.name(s.value);
        case RefSymKind::Open: return "[" + std::to_string(s.value);
        case RefSymKind::Close: return "]" + std::to_string(s.value);
        case RefSymKind::Ref: return std::to_string(s.value);
    }
    return {};
}

std::string refword_to_string(const RefWord& v, const Alphabet& a) {
    std::string out;
    for (const RefSym& s : v) {
        if (!out.empty()) out += ' ';
        out += refsym_to_string(s, a);
    }
    return out;
}

RefWord parse_refword(const std::string& line, Alphabet& a) {
    RefWord out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '[' || tok[0] == ']') {
            std::string digits = tok.substr(1);
            if (digits.empty() ||
                !std::all_of(digits.begin(), digits.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw std::invalid_argument("bad bracket token '" + tok + "'");
            uint32_t label = static_cast<uint32_t>(std::stoul(digits));
            if (label < 1) throw std::invalid_argument("bracket label must be >= 1");
            out.push_back(tok[0] == '[' ? open(label) : close(label));
        } else if (std::all_of(tok.begin(), tok.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            uint32_t label = static_cast<uint32_t>(std::stoul(tok));
            if (label < 1) throw std::invalid_argument("reference label must be >= 1");
            out.push_back(ref(label));
        } else if (Alphabet::valid_symbol(tok)) {
            out.push_back(letter(a.intern(tok)));
        } else {
            throw std::invalid_argument("bad token '" + tok + "'");
        }
    }
    return out;
}

std::string word_to_string(const Word& w, const Alphabet& a) {
    if (w.empty()) return "~";
    bool compact = true;
    for (uint32_t id : w)
        if (a.name(id).size() != 1) compact = false;
    std::string out;
    for (uint32_t id : w) {
        if (!compact && !out.empty()) out += ' ';
        out += a.name(id);
    }
    return out;
}

}  // namespace rewb
