#include "rewb/refnfa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_set>

namespace rewb {

namespace {

// Thompson-style construction with explicit epsilon edges; every fragment
// has one entry and one exit.
struct ThompsonNfa {
    std::vector<std::vector<uint32_t>> eps;
    std::vector<std::vector<std::pair<RefSym, uint32_t>>> sym;

    uint32_t fresh() {
        eps.emplace_back();
        sym.emplace_back();
        return static_cast<uint32_t>(eps.size() - 1);
    }
};

struct Frag {
    uint32_t start, end;
};

Frag build_frag(ThompsonNfa& n, const Ast& a, Alphabet& alphabet) {
    switch (a.kind) {
        case AstKind::Literal: {
            Frag f{n.fresh(), n.fresh()};
            n.sym[f.start].push_back({letter(alphabet.intern(a.symbol)), f.end});
            return f;
        }
        case AstKind::Epsilon: {
            Frag f{n.fresh(), n.fresh()};
            n.eps[f.start].push_back(f.end);
            return f;
        }
        case AstKind::Reference: {
            Frag f{n.fresh(), n.fresh()};
            n.sym[f.start].push_back({ref(static_cast<uint32_t>(a.label)), f.end});
            return f;
        }
        case AstKind::Concat: {
            Frag l = build_frag(n, *a.left, alphabet);
            Frag r = build_frag(n, *a.right, alphabet);
            n.eps[l.end].push_back(r.start);
            return {l.start, r.end};
        }
        case AstKind::Alt: {
            Frag l = build_frag(n, *a.left, alphabet);
            Frag r = build_frag(n, *a.right, alphabet);
            Frag f{n.fresh(), n.fresh()};
            n.eps[f.start].push_back(l.start);
            n.eps[f.start].push_back(r.start);
            n.eps[l.end].push_back(f.end);
            n.eps[r.end].push_back(f.end);
            return f;
        }
        case AstKind::Star: {
            Frag c = build_frag(n, *a.left, alphabet);
            Frag f{n.fresh(), n.fresh()};
            n.eps[f.start].push_back(f.end);
            n.eps[f.start].push_back(c.start);
            n.eps[c.end].push_back(c.start);
            n.eps[c.end].push_back(f.end);
            return f;
        }
        case AstKind::Capture: {
            Frag c = build_frag(n, *a.left, alphabet);
            Frag f{n.fresh(), n.fresh()};
            n.sym[f.start].push_back({open(static_cast<uint32_t>(a.label)), c.start});
            n.sym[c.end].push_back({close(static_cast<uint32_t>(a.label)), f.end});
            return f;
        }
    }
    assert(false);
    return {0, 0};
}

std::vector<uint32_t> eps_closure(const ThompsonNfa& n, uint32_t s) {
    std::vector<bool> seen(n.eps.size(), false);
    std::vector<uint32_t> out, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
        uint32_t u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (uint32_t v : n.eps[u])
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return out;
}

}  // namespace

RefNfa build_ref_nfa(const Ast& a, const Alphabet& base) {
    RefNfa out;
    out.alphabet = base;
    out.k = max_label(a);

    ThompsonNfa t;
    Frag whole = build_frag(t, a, out.alphabet);

    // eliminate epsilon edges
    size_t n = t.eps.size();
    std::vector<std::vector<std::pair<RefSym, uint32_t>>> edges(n);
    std::vector<bool> finals(n, false);
    for (uint32_t s = 0; s < n; ++s) {
        std::set<std::pair<RefSym, uint32_t>> merged;
        for (uint32_t u : eps_closure(t, s)) {
            if (u == whole.end) finals[s] = true;
            merged.insert(t.sym[u].begin(), t.sym[u].end());
        }
        edges[s].assign(merged.begin(), merged.end());
    }

    // trim: keep states reachable from the start that can still reach a final
    std::vector<bool> reach(n, false);
    std::deque<uint32_t> queue{whole.start};
    reach[whole.start] = true;
    while (!queue.empty()) {
        uint32_t s = queue.front();
        queue.pop_front();
        for (const auto& [sym, tgt] : edges[s])
            if (!reach[tgt]) {
                reach[tgt] = true;
                queue.push_back(tgt);
            }
    }
    std::vector<std::vector<uint32_t>> redges(n);
    for (uint32_t s = 0; s < n; ++s)
        for (const auto& [sym, tgt] : edges[s]) redges[tgt].push_back(s);
    std::vector<bool> coacc(n, false);
    for (uint32_t s = 0; s < n; ++s)
        if (finals[s]) {
            coacc[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        uint32_t s = queue.front();
        queue.pop_front();
        for (uint32_t p : redges[s])
            if (!coacc[p]) {
                coacc[p] = true;
                queue.push_back(p);
            }
    }

    std::vector<uint32_t> remap(n, UINT32_MAX);
    for (uint32_t s = 0; s < n; ++s)
        if (reach[s] && coacc[s]) {
            remap[s] = static_cast<uint32_t>(out.edges.size());
            out.edges.emplace_back();
            out.finals.push_back(finals[s]);
        }
    if (remap[whole.start] == UINT32_MAX) {
        // degenerate: no ref-word at all; keep a bare start state
        out.edges.assign(1, {});
        out.finals.assign(1, false);
        out.start = 0;
        return out;
    }
    for (uint32_t s = 0; s < n; ++s) {
        if (remap[s] == UINT32_MAX) continue;
        for (const auto& [sym, tgt] : edges[s])
            if (remap[tgt] != UINT32_MAX) out.edges[remap[s]].push_back({sym, remap[tgt]});
        std::sort(out.edges[remap[s]].begin(), out.edges[remap[s]].end());
    }
    out.start = remap[whole.start];
    return out;
}

namespace {

// breadth-first walk over distinct (path label, state) pairs
template <typename Visit>
void walk_labels(const RefNfa& n, size_t max_len, Visit visit) {
    std::set<std::pair<RefWord, uint32_t>> layer{{{}, n.start}};
    std::set<std::pair<RefWord, uint32_t>> seen = layer;
    for (size_t len = 0;; ++len) {
        for (const auto& [word, state] : layer)
            if (!visit(word, state)) return;
        if (len == max_len) break;
        std::set<std::pair<RefWord, uint32_t>> next;
        for (const auto& [word, state] : layer) {
            for (const auto& [sym, tgt] : n.edges[state]) {
                RefWord w2 = word;
                w2.push_back(sym);
                if (seen.insert({w2, tgt}).second) next.insert({std::move(w2), tgt});
            }
        }
        if (next.empty()) break;
        layer = std::move(next);
    }
}

}  // namespace

std::set<RefWord> enumerate_refwords(const RefNfa& n, size_t max_len) {
    std::set<RefWord> out;
    walk_labels(n, max_len, [&](const RefWord& w, uint32_t state) {
        if (n.finals[state]) out.insert(w);
        return true;
    });
    return out;
}

PrefixCheck check_reachable_prefixes_matching(const RefNfa& n, size_t max_len) {
    PrefixCheck result;
    std::set<RefWord> checked;
    walk_labels(n, max_len, [&](const RefWord& w, uint32_t) {
        if (!checked.insert(w).second) return true;
        ++result.words_checked;
        if (!is_matching(w)) {
            result.ok = false;
            result.counterexample = w;
            return false;
        }
        return true;
    });
    return result;
}

std::set<Word> enumerate_members(const RefNfa& n, size_t max_word_len, size_t max_refword_len) {
    std::set<Word> out;
    walk_labels(n, max_refword_len, [&](const RefWord& w, uint32_t state) {
        if (n.finals[state]) {
            std::optional<Word> d = deref(w);
            assert(d.has_value());  // accepted ref-words are matching
            if (d && d->size() <= max_word_len) out.insert(*d);
        }
        return true;
    });
    return out;
}

namespace {

constexpr uint32_t kUnbound = UINT32_MAX;

struct OracleCfg {
    uint32_t state = 0;
    uint32_t pos = 0;
    std::vector<std::pair<uint32_t, uint32_t>> env;   // span per label, kUnbound = unset
    std::vector<std::pair<uint32_t, uint32_t>> open;  // (label, start) of open captures
};

void push_u32(std::string& s, uint32_t v) {
    s.append(reinterpret_cast<const char*>(&v), sizeof v);
}

std::string encode(const OracleCfg& c) {
    std::string key;
    key.reserve(16 + 8 * (c.env.size() + c.open.size()));
    push_u32(key, c.state);
    push_u32(key, c.pos);
    for (auto [a, b] : c.env) {
        push_u32(key, a);
        push_u32(key, b);
    }
    push_u32(key, static_cast<uint32_t>(c.open.size()));
    for (auto [a, b] : c.open) {
        push_u32(key, a);
        push_u32(key, b);
    }
    return key;
}

}  // namespace

OracleResult oracle_match(const RefNfa& n, const Word& w) {
    struct Node {
        OracleCfg cfg;
        size_t parent;
        RefSym edge;
    };
    std::vector<Node> arena;
    std::unordered_set<std::string> visited;
    std::deque<size_t> queue;

    OracleCfg init;
    init.state = n.start;
    init.env.assign(static_cast<size_t>(n.k), {kUnbound, kUnbound});
    visited.insert(encode(init));
    arena.push_back({init, SIZE_MAX, letter(0)});
    queue.push_back(0);

    while (!queue.empty()) {
        size_t idx = queue.front();
        queue.pop_front();
        OracleCfg cfg = arena[idx].cfg;  // copy: arena may reallocate below

        if (n.finals[cfg.state] && cfg.pos == w.size() && cfg.open.empty()) {
            RefWord witness;
            for (size_t i = idx; arena[i].parent != SIZE_MAX; i = arena[i].parent)
                witness.push_back(arena[i].edge);
            std::reverse(witness.begin(), witness.end());
            return {true, witness};
        }

        for (const auto& [sym, tgt] : n.edges[cfg.state]) {
            OracleCfg next = cfg;
            next.state = tgt;
            switch (sym.kind) {
                case RefSymKind::Letter:
                    if (cfg.pos >= w.size() || w[cfg.pos] != sym.value) continue;
                    next.pos = cfg.pos + 1;
                    break;
                case RefSymKind::Open:
                    next.open.push_back({sym.value, cfg.pos});
                    break;
                case RefSymKind::Close: {
                    assert(!cfg.open.empty() && cfg.open.back().first == sym.value);
                    uint32_t start = next.open.back().second;
                    next.open.pop_back();
                    next.env[sym.value - 1] = {start, cfg.pos};
                    break;
                }
                case RefSymKind::Ref: {
                    auto [s, e] = cfg.env[sym.value - 1];
                    uint32_t len = s == kUnbound ? 0 : e - s;
                    if (cfg.pos + len > w.size()) continue;
                    bool same = true;
                    for (uint32_t i = 0; i < len; ++i)
                        if (w[cfg.pos + i] != w[s + i]) {
                            same = false;
                            break;
                        }
                    if (!same) continue;
                    next.pos = cfg.pos + len;
                    break;
                }
            }
            if (visited.insert(encode(next)).second) {
                arena.push_back({std::move(next), idx, sym});
                queue.push_back(arena.size() - 1);
            }
        }
    }
    return {false, std::nullopt};
}

OracleResult oracle_match(const Ast& a, const Word& w, const Alphabet& alphabet) {
    return oracle_match(build_ref_nfa(a, alphabet), w);
}

}  // namespace rewb
