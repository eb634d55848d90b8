// Command line front end.  Exit codes: 0 success (and: word accepted /
// slices agree), 1 domain failure (rejection, mismatch, bad input data),
// 2 usage errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "rewb/construct.hpp"
#include "rewb/langlab.hpp"
#include "rewb/larsen.hpp"
#include "rewb/machine.hpp"
#include "rewb/refnfa.hpp"
#include "rewb/syntax.hpp"

namespace {

// Words are written either as juxtaposed single characters ("abba") or
// whitespace separated symbols ("a b 'x1' a"); "~" is the empty word.
std::vector<std::string> split_word(const std::string& text) {
    std::vector<std::string> out;
    if (text == "~") return out;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok.size() >= 2 && tok.front() == '\'' && tok.back() == '\'')
                tok = tok.substr(1, tok.size() - 2);
            out.push_back(tok);
        }
    } else {
        for (char c : text) out.push_back(std::string(1, c));
    }
    return out;
}

rewb::Word intern_word(const std::string& text, rewb::Alphabet& a) {
    rewb::Word w;
    for (const std::string& sym : split_word(text)) {
        if (!rewb::Alphabet::valid_symbol(sym))
            throw std::invalid_argument("not a letter: '" + sym + "'");
        w.push_back(a.intern(sym));
    }
    return w;
}

// Unknown symbols mean the word is outside the machine's input alphabet.
std::optional<rewb::Word> lookup_word(const std::string& text, const rewb::Alphabet& a) {
    rewb::Word w;
    for (const std::string& sym : split_word(text)) {
        auto id = a.find(sym);
        if (!id) return std::nullopt;
        w.push_back(*id);
    }
    return w;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

rewb::AstPtr parse_or_report(const std::string& text) {
    try {
        return rewb::parse(text);
    } catch (const rewb::ParseError& e) {
        std::ostringstream msg;
        msg << e.what() << "\n  " << text << "\n  " << std::string(e.position, ' ') << "^";
        throw std::runtime_error(msg.str());
    }
}

void print_slice(const rewb::SliceReport& rep, const rewb::Alphabet& a) {
    for (const rewb::Word& w : rep.members) std::cout << rewb::word_to_string(w, a) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace rewb;

    CLI::App app{"regular expressions with backreferences, and the stack automata they compile to"};
    app.require_subcommand(1);

    std::string expr_text, word_text, out_path, machine_path, example_name;
    size_t max_len = 6;
    bool want_json = false, want_dot = false, want_witness = false, want_trace = false;
    bool closed_form = false, larsen_machine = false;
    int level = 0;
    uint64_t max_steps = Budget{}.max_steps;
    size_t max_cells = Budget{}.max_cells;
    double neg_factor = 4.0;

    auto* cmd_parse = app.add_subcommand("parse", "parse an expression and print its canonical form");
    cmd_parse->add_option("expr", expr_text)->required();
    cmd_parse->add_flag("--json", want_json, "print the syntax tree as JSON");

    auto* cmd_deref = app.add_subcommand(
        "deref", "dereference ref-words read line by line from stdin (UNDEFINED when no value)");
    cmd_deref->add_flag("--closed-form", closed_form,
                        "use the segment-wise computation (matching words only)");

    auto* cmd_refwords = app.add_subcommand("refwords", "enumerate ref-words of the expression");
    cmd_refwords->add_option("expr", expr_text)->required();
    cmd_refwords->add_option("--max-len", max_len, "token length bound")->capture_default_str();

    auto* cmd_match = app.add_subcommand("match", "decide membership of a word");
    cmd_match->add_option("expr", expr_text)->required();
    cmd_match->add_option("word", word_text, "word, or ~ for the empty word")->required();
    cmd_match->add_flag("--witness", want_witness, "print a matching ref-word");

    auto* cmd_nsa = app.add_subcommand("compile-nsa", "compile to a nested stack automaton");
    cmd_nsa->add_option("expr", expr_text)->required();
    cmd_nsa->add_option("-o,--out", out_path, "output file (default stdout)");
    cmd_nsa->add_flag("--dot", want_dot, "emit graphviz instead of JSON");

    auto* cmd_nesa = app.add_subcommand(
        "compile-nesa", "compile a capture-free expression to a nonerasing stack automaton");
    cmd_nesa->add_option("expr", expr_text)->required();
    cmd_nesa->add_option("-o,--out", out_path, "output file (default stdout)");
    cmd_nesa->add_flag("--dot", want_dot, "emit graphviz instead of JSON");

    auto* cmd_run = app.add_subcommand("run", "run a machine from a JSON file on a word");
    cmd_run->add_option("machine", machine_path)->required()->check(CLI::ExistingFile);
    cmd_run->add_option("word", word_text, "word, or ~ for the empty word")->required();
    cmd_run->add_flag("--trace", want_trace, "print the accepting run");
    cmd_run->add_option("--max-steps", max_steps)->capture_default_str();
    cmd_run->add_option("--max-cells", max_cells)->capture_default_str();

    auto* cmd_slice = app.add_subcommand("slice", "list the language up to a length bound");
    cmd_slice->add_option("expr", expr_text)->required();
    cmd_slice->add_option("--max-len", max_len)->capture_default_str();

    auto* cmd_cross = app.add_subcommand(
        "crosscheck", "compare the search oracle against the compiled machines on a slice");
    cmd_cross->add_option("expr", expr_text)->required();
    cmd_cross->add_option("--max-len", max_len)->capture_default_str();
    cmd_cross->add_option("--negative-factor", neg_factor,
                          "budget scale for runs expected to reject")
        ->capture_default_str();

    auto* cmd_larsen = app.add_subcommand("larsen", "hierarchy witness expressions and machines");
    cmd_larsen->add_option("--level", level, "hierarchy level i >= 0")->required();
    cmd_larsen->add_flag("--nesa", larsen_machine, "emit the hand-built machine instead");
    cmd_larsen->add_flag("--dot", want_dot, "with --nesa, emit graphviz");
    cmd_larsen->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* cmd_export = app.add_subcommand("export", "print a named example");
    cmd_export->add_option("name", example_name,
                           "one of: ww, square, cubic, anbn_nesa")
        ->required();
    cmd_export->add_option("-o,--out", out_path, "output file (default stdout)");
    cmd_export->add_flag("--dot", want_dot, "graphviz for machine examples");
    cmd_export->add_flag("--json", want_json, "JSON syntax tree for expression examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_parse->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            std::cout << (want_json ? ast_to_json(*a) : pretty_print(*a)) << "\n";
            return 0;
        }

        if (cmd_deref->parsed()) {
            Alphabet a;
            std::string line;
            while (std::getline(std::cin, line)) {
                if (line.find_first_not_of(" \t") == std::string::npos) continue;
                RefWord v = parse_refword(line, a);
                if (closed_form) {
                    if (!is_matching(v)) throw std::runtime_error("not matching: " + line);
                    std::cout << word_to_string(deref_closed_form(v), a) << "\n";
                    continue;
                }
                auto d = deref(v);
                std::cout << (d ? word_to_string(*d, a) : std::string("UNDEFINED")) << "\n";
            }
            return 0;
        }

        if (cmd_refwords->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            RefNfa nfa = build_ref_nfa(*a);
            for (const RefWord& v : enumerate_refwords(nfa, max_len))
                std::cout << refword_to_string(v, nfa.alphabet) << "\n";
            return 0;
        }

        if (cmd_match->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            Alphabet base;
            Word w = intern_word(word_text, base);
            RefNfa nfa = build_ref_nfa(*a, base);
            OracleResult r = oracle_match(nfa, w);
            if (!r.matched) {
                std::cout << "no match\n";
                return 1;
            }
            std::cout << "match\n";
            if (want_witness && r.witness)
                std::cout << refword_to_string(*r.witness, nfa.alphabet) << "\n";
            return 0;
        }

        if (cmd_nsa->parsed() || cmd_nesa->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            StackMachine m = cmd_nsa->parsed() ? build_nsa(*a) : build_nesa(*a);
            write_output(out_path, want_dot ? machine_to_dot(m) : machine_to_json(m));
            return 0;
        }

        if (cmd_run->parsed()) {
            StackMachine m = machine_from_json(read_file(machine_path));
            auto w = lookup_word(word_text, m.input_alphabet);
            if (!w) {
                std::cout << "rejected (symbol outside the input alphabet)\n";
                return 1;
            }
            RunResult r = accepts(m, *w, Budget{max_steps, max_cells});
            if (r.accepted) {
                std::cout << "accepted\n";
                if (want_trace) std::cout << trace_render(m, r.trace, *w);
                return 0;
            }
            std::cout << (r.exhausted ? "rejected\n" : "rejected (search stopped by budget)\n");
            return 1;
        }

        if (cmd_slice->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            RefNfa nfa = build_ref_nfa(*a);
            print_slice(language_slice(*a, nfa.alphabet, max_len), nfa.alphabet);
            return 0;
        }

        if (cmd_cross->parsed()) {
            AstPtr a = parse_or_report(expr_text);
            RefNfa nfa = build_ref_nfa(*a);
            BudgetPolicy policy;
            policy.negative_factor = neg_factor;
            CrosscheckReport rep = crosscheck(*a, nfa.alphabet, max_len, policy);
            std::cout << "oracle: " << rep.oracle.members.size() << " of "
                      << rep.oracle.strings_checked << " words up to length " << max_len << "\n";
            std::cout << "nsa: " << rep.nsa.slice.members.size() << " members, "
                      << rep.nsa.mismatches.size() << " mismatches, " << rep.nsa.slice.budget_hits
                      << " budget hits\n";
            if (rep.nesa)
                std::cout << "nesa: " << rep.nesa->slice.members.size() << " members, "
                          << rep.nesa->mismatches.size() << " mismatches, "
                          << rep.nesa->slice.budget_hits << " budget hits\n";
            else
                std::cout << "nesa: skipped (expression has a captured reference)\n";
            for (const Word& w : rep.nsa.mismatches)
                std::cout << "  nsa disagrees on: " << word_to_string(w, nfa.alphabet) << "\n";
            if (rep.nesa)
                for (const Word& w : rep.nesa->mismatches)
                    std::cout << "  nesa disagrees on: " << word_to_string(w, nfa.alphabet) << "\n";
            return rep.ok() ? 0 : 1;
        }

        if (cmd_larsen->parsed()) {
            if (level < 0) throw std::invalid_argument("--level must be >= 0");
            if (larsen_machine) {
                StackMachine m = larsen_nesa(level);
                write_output(out_path, want_dot ? machine_to_dot(m) : machine_to_json(m));
            } else {
                if (want_dot) throw std::invalid_argument("--dot needs --nesa");
                write_output(out_path, pretty_print(*larsen_rewb(level)));
            }
            return 0;
        }

        if (cmd_export->parsed()) {
            Example ex = example(example_name);
            if (std::holds_alternative<AstPtr>(ex)) {
                const Ast& a = *std::get<AstPtr>(ex);
                if (want_dot) throw std::invalid_argument("--dot applies to machine examples");
                write_output(out_path, want_json ? ast_to_json(a) : pretty_print(a));
            } else {
                const StackMachine& m = std::get<StackMachine>(ex);
                write_output(out_path, want_dot ? machine_to_dot(m) : machine_to_json(m));
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
