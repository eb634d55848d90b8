#include "rewb/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace rewb {

static AstPtr node(Ast&& a) { return std::make_shared<const Ast>(std::move(a)); }

AstPtr make_literal(const std::string& symbol) {
    Ast a;
    a.kind = AstKind::Literal;
    a.symbol = symbol;
    return node(std::move(a));
}

AstPtr make_epsilon() {
    Ast a;
    a.kind = AstKind::Epsilon;
    return node(std::move(a));
}

AstPtr make_reference(int label) {
    if (label < 1) throw std::invalid_argument("reference label must be >= 1");
    Ast a;
    a.kind = AstKind::Reference;
    a.label = label;
    a.vars = {label};
    return node(std::move(a));
}

AstPtr make_concat(AstPtr l, AstPtr r) {
    Ast a;
    a.kind = AstKind::Concat;
    a.vars = l->vars;
    a.vars.insert(r->vars.begin(), r->vars.end());
    a.left = std::move(l);
    a.right = std::move(r);
    return node(std::move(a));
}

AstPtr make_alt(AstPtr l, AstPtr r) {
    Ast a;
    a.kind = AstKind::Alt;
    a.vars = l->vars;
    a.vars.insert(r->vars.begin(), r->vars.end());
    a.left = std::move(l);
    a.right = std::move(r);
    return node(std::move(a));
}

AstPtr make_star(AstPtr child) {
    Ast a;
    a.kind = AstKind::Star;
    a.vars = child->vars;
    a.left = std::move(child);
    return node(std::move(a));
}

AstPtr make_capture(int label, AstPtr child) {
    if (label < 1) throw std::invalid_argument("capture label must be >= 1");
    if (child->vars.count(label))
        throw std::invalid_argument("capture label " + std::to_string(label) +
                                    " occurs in the captured subexpression");
    Ast a;
    a.kind = AstKind::Capture;
    a.label = label;
    a.vars = child->vars;
    a.vars.insert(label);
    a.left = std::move(child);
    return node(std::move(a));
}

ParseError::ParseError(const std::string& msg, size_t pos)
    : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    AstPtr run() {
        AstPtr e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character");
        return e;
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool at_atom() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '\'' || c == '~' || c == '\\' ||
               c == '(';
    }

    int integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a label");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    AstPtr expr() {
        AstPtr e = term();
        while (peek() == '+') {
            ++pos_;
            e = make_alt(e, term());
        }
        return e;
    }

    AstPtr term() {
        if (!at_atom()) fail("expected an expression");
        AstPtr e = factor();
        while (at_atom()) e = make_concat(e, factor());
        return e;
    }

    AstPtr factor() {
        AstPtr e = atom();
        while (peek() == '*') {
            ++pos_;
            e = make_star(e);
        }
        return e;
    }

    AstPtr atom() {
        char c = peek();
        size_t at = pos_;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            return make_literal(std::string(1, c));
        }
        if (c == '\'') return quoted();
        if (c == '~') {
            ++pos_;
            return make_epsilon();
        }
        if (c == '\\') {
            ++pos_;
            int label = integer();
            if (label < 1) fail("reference label must be >= 1");
            return make_reference(label);
        }
        if (c == '(') {
            ++pos_;
            // "(INT :" opens a capture, anything else is a group
            skip_ws();
            size_t save = pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                int label = integer();
                if (peek() == ':') {
                    ++pos_;
                    AstPtr body = expr();
                    expect(')');
                    try {
                        return make_capture(label, body);
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(e.what(), at);
                    }
                }
                pos_ = save;
            }
            AstPtr body = expr();
            expect(')');
            return body;
        }
        fail("expected an expression");
    }

    AstPtr quoted() {
        skip_ws();
        size_t at = pos_;
        ++pos_;  // opening quote
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
        if (pos_ == text_.size()) throw ParseError("unterminated quoted symbol", at);
        std::string name = text_.substr(start, pos_ - start);
        ++pos_;
        bool ok = !name.empty();
        bool nondigit = false;
        for (char ch : name) {
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') ok = false;
            if (!std::isdigit(static_cast<unsigned char>(ch))) nondigit = true;
        }
        if (!ok || !nondigit) throw ParseError("bad symbol name '" + name + "'", at);
        return make_literal(name);
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
};

int prec(AstKind k) {
    switch (k) {
        case AstKind::Alt: return 0;
        case AstKind::Concat: return 1;
        default: return 2;  // atoms and postfix star
    }
}

void print(const Ast& a, std::ostream& out, int parent_prec) {
    bool paren = prec(a.kind) < parent_prec;
    if (paren) out << '(';
    switch (a.kind) {
        case AstKind::Literal:
            if (a.symbol.size() == 1 && std::isalpha(static_cast<unsigned char>(a.symbol[0])))
                out << a.symbol;
            else
                out << '\'' << a.symbol << '\'';
            break;
        case AstKind::Epsilon: out << '~'; break;
        case AstKind::Reference: out << '\\' << a.label; break;
        case AstKind::Concat:
            print(*a.left, out, 1);
            print(*a.right, out, 2);
            break;
        case AstKind::Alt:
            print(*a.left, out, 0);
            out << '+';
            print(*a.right, out, 1);
            break;
        case AstKind::Star:
            // star of a star needs no extra parens, anything looser does
            print(*a.left, out, 2);
            out << '*';
            break;
        case AstKind::Capture:
            out << '(' << a.label << ':';
            print(*a.left, out, 0);
            out << ')';
            break;
    }
    if (paren) out << ')';
}

}  // namespace

AstPtr parse(const std::string& text) { return Parser(text).run(); }

std::string pretty_print(const Ast& a) {
    std::ostringstream out;
    print(a, out, 0);
    return out.str();
}

bool ast_equal(const Ast& a, const Ast& b) {
    if (a.kind != b.kind || a.symbol != b.symbol || a.label != b.label) return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.left && !ast_equal(*a.left, *b.left)) return false;
    if (a.right && !ast_equal(*a.right, *b.right)) return false;
    return true;
}

int max_label(const Ast& a) { return a.vars.empty() ? 0 : *a.vars.rbegin(); }

bool has_captured_reference(const Ast& a) {
    if (a.kind == AstKind::Capture) {
        // any reference below this capture qualifies
        std::set<int> refs = reference_labels(*a.left);
        if (!refs.empty()) return true;
        return false;
    }
    if (a.left && has_captured_reference(*a.left)) return true;
    if (a.right && has_captured_reference(*a.right)) return true;
    return false;
}

static void collect_literals(const Ast& a, std::set<std::string>& out) {
    if (a.kind == AstKind::Literal) out.insert(a.symbol);
    if (a.left) collect_literals(*a.left, out);
    if (a.right) collect_literals(*a.right, out);
}

std::vector<std::string> literals_of(const Ast& a) {
    std::set<std::string> s;
    collect_literals(a, s);
    return {s.begin(), s.end()};
}

static void collect_labels(const Ast& a, AstKind kind, std::set<int>& out) {
    if (a.kind == kind) out.insert(a.label);
    if (a.left) collect_labels(*a.left, kind, out);
    if (a.right) collect_labels(*a.right, kind, out);
}

std::set<int> reference_labels(const Ast& a) {
    std::set<int> s;
    collect_labels(a, AstKind::Reference, s);
    return s;
}

std::set<int> capture_labels(const Ast& a) {
    std::set<int> s;
    collect_labels(a, AstKind::Capture, s);
    return s;
}

static nlohmann::json to_json(const Ast& a) {
    nlohmann::json j;
    switch (a.kind) {
        case AstKind::Literal:
            j["kind"] = "literal";
            j["symbol"] = a.symbol;
            break;
        case AstKind::Epsilon: j["kind"] = "epsilon"; break;
        case AstKind::Reference:
            j["kind"] = "reference";
            j["label"] = a.label;
            break;
        case AstKind::Concat: j["kind"] = "concat"; break;
        case AstKind::Alt: j["kind"] = "alt"; break;
        case AstKind::Star: j["kind"] = "star"; break;
        case AstKind::Capture:
            j["kind"] = "capture";
            j["label"] = a.label;
            break;
    }
    if (a.left) {
        j["children"] = nlohmann::json::array();
        j["children"].push_back(to_json(*a.left));
        if (a.right) j["children"].push_back(to_json(*a.right));
    }
    return j;
}

std::string ast_to_json(const Ast& a) { return to_json(a).dump(2); }

namespace {

AstPtr random_node(const RandomRewbParams& p, std::mt19937& rng, int depth) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    // leaves only at the depth limit
    int choice = depth >= p.max_depth ? pick(3) : pick(10);
    switch (choice) {
        case 0:
        case 1: return make_literal(p.alphabet[pick(static_cast<int>(p.alphabet.size()))]);
        case 2:
            if (p.max_k > 0 && pick(2) == 0) return make_reference(1 + pick(p.max_k));
            return pick(3) == 0 ? make_epsilon()
                                : make_literal(p.alphabet[pick(static_cast<int>(p.alphabet.size()))]);
        case 3:
        case 4: return make_concat(random_node(p, rng, depth + 1), random_node(p, rng, depth + 1));
        case 5: return make_alt(random_node(p, rng, depth + 1), random_node(p, rng, depth + 1));
        case 6:
        case 7: return make_star(random_node(p, rng, depth + 1));
        default: {
            if (p.max_k == 0) return make_star(random_node(p, rng, depth + 1));
            AstPtr child = random_node(p, rng, depth + 1);
            std::vector<int> free;
            for (int i = 1; i <= p.max_k; ++i)
                if (!child->vars.count(i)) free.push_back(i);
            if (free.empty()) return child;
            return make_capture(free[pick(static_cast<int>(free.size()))], child);
        }
    }
}

}  // namespace

AstPtr random_rewb(const RandomRewbParams& params, std::mt19937& rng) {
    assert(!params.alphabet.empty());
    return random_node(params, rng, 0);
}

}  // namespace rewb
