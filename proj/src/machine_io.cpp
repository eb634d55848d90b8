#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rewb/machine.hpp"

namespace rewb {

using nlohmann::json;

namespace {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::SA: return "sa";
        case Flavor::NESA: return "nesa";
        case Flavor::NSA: return "nsa";
    }
    return {};
}

Flavor flavor_of(const std::string& s) {
    if (s == "sa") return Flavor::SA;
    if (s == "nesa") return Flavor::NESA;
    if (s == "nsa") return Flavor::NSA;
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

const char* ctx_name(CtxKind k) {
    switch (k) {
        case CtxKind::Top: return "top";
        case CtxKind::Interior: return "interior";
        case CtxKind::Bottom: return "bottom";
        case CtxKind::EmptySubstackTop: return "empty_substack_top";
    }
    return "";
}

const char* act_name(ActKind k) {
    switch (k) {
        case ActKind::Rewrite: return "rewrite";
        case ActKind::Move: return "move";
        case ActKind::Create: return "create";
        case ActKind::Destroy: return "destroy";
    }
    return "";
}

}  // namespace

std::string machine_to_json(const StackMachine& m) {
    json j;
    j["name"] = m.name;
    j["flavor"] = flavor_name(m.flavor);
    j["states"] = m.states;
    j["input_alphabet"] = m.input_alphabet.names();
    j["stack_alphabet"] = m.stack_symbols;
    j["start"] = m.states.at(m.start);
    j["initial_stack_symbol"] = m.stack_symbols.at(m.initial_stack);
    json finals = json::array();
    for (size_t i = 0; i < m.states.size(); ++i)
        if (m.finals[i]) finals.push_back(m.states[i]);
    j["finals"] = finals;

    json rules = json::array();
    for (const Rule& r : m.rules) {
        json jr;
        jr["from"] = m.states.at(r.from);
        jr["to"] = m.states.at(r.to);
        jr["read"] = r.read ? json(m.input_alphabet.name(*r.read)) : json(nullptr);
        json ctx;
        ctx["kind"] = ctx_name(r.ctx);
        if (r.ctx == CtxKind::Top || r.ctx == CtxKind::Interior) ctx["symbol"] = m.cell_name(r.ctx_sym);
        jr["context"] = ctx;
        json act;
        act["kind"] = act_name(r.act);
        if (r.act == ActKind::Rewrite || r.act == ActKind::Create) {
            json cells = json::array();
            for (uint32_t cell : r.payload) cells.push_back(m.stack_symbols.at(cell));
            act["payload"] = cells;
        } else if (r.act == ActKind::Move) {
            act["payload"] = r.dir == Dir::L ? "L" : r.dir == Dir::S ? "S" : "R";
        }
        jr["action"] = act;
        rules.push_back(jr);
    }
    j["rules"] = rules;
    return j.dump(2);
}

StackMachine machine_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad machine JSON: ") + e.what());
    }

    StackMachine m;
    try {
        m.name = j.value("name", "");
        m.flavor = flavor_of(j.at("flavor").get<std::string>());
        for (const auto& s : j.at("states")) m.add_state(s.get<std::string>());
        for (const auto& s : j.at("input_alphabet")) m.input_alphabet.intern(s.get<std::string>());
        for (const auto& s : j.at("stack_alphabet")) {
            std::string name = s.get<std::string>();
            if (name == "¢" || name == "$" || name == "#")
                throw std::invalid_argument("stack alphabet may not contain fence symbols");
            m.add_stack_symbol(name);
        }

        auto state_of = [&m](const std::string& n) {
            auto id = m.state_id(n);
            if (!id) throw std::invalid_argument("unknown state '" + n + "'");
            return *id;
        };
        auto cell_of = [&m](const std::string& n) {
            auto id = m.stack_id(n);
            if (!id) throw std::invalid_argument("unknown stack symbol '" + n + "'");
            return *id;
        };

        m.start = state_of(j.at("start").get<std::string>());
        m.initial_stack = cell_of(j.at("initial_stack_symbol").get<std::string>());
        for (const auto& s : j.at("finals")) m.finals[state_of(s.get<std::string>())] = true;

        for (const auto& jr : j.at("rules")) {
            Rule r;
            r.from = state_of(jr.at("from").get<std::string>());
            r.to = state_of(jr.at("to").get<std::string>());
            if (!jr.at("read").is_null()) {
                std::string sym = jr.at("read").get<std::string>();
                auto id = m.input_alphabet.find(sym);
                if (!id) throw std::invalid_argument("unknown input symbol '" + sym + "'");
                r.read = *id;
            }
            const json& ctx = jr.at("context");
            std::string ck = ctx.at("kind").get<std::string>();
            if (ck == "top") {
                r.ctx = CtxKind::Top;
                r.ctx_sym = cell_of(ctx.at("symbol").get<std::string>());
            } else if (ck == "interior") {
                r.ctx = CtxKind::Interior;
                std::string sym = ctx.at("symbol").get<std::string>();
                r.ctx_sym = sym == "¢" ? kCellCent : cell_of(sym);
            } else if (ck == "bottom") {
                r.ctx = CtxKind::Bottom;
            } else if (ck == "empty_substack_top") {
                r.ctx = CtxKind::EmptySubstackTop;
            } else {
                throw std::invalid_argument("unknown context kind '" + ck + "'");
            }
            const json& act = jr.at("action");
            std::string ak = act.at("kind").get<std::string>();
            if (ak == "rewrite" || ak == "create") {
                r.act = ak == "rewrite" ? ActKind::Rewrite : ActKind::Create;
                for (const auto& cell : act.at("payload")) r.payload.push_back(cell_of(cell.get<std::string>()));
            } else if (ak == "move") {
                r.act = ActKind::Move;
                std::string d = act.at("payload").get<std::string>();
                if (d == "L")
                    r.dir = Dir::L;
                else if (d == "S")
                    r.dir = Dir::S;
                else if (d == "R")
                    r.dir = Dir::R;
                else
                    throw std::invalid_argument("bad move direction '" + d + "'");
            } else if (ak == "destroy") {
                r.act = ActKind::Destroy;
            } else {
                throw std::invalid_argument("unknown action kind '" + ak + "'");
            }
            m.rules.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad machine JSON: ") + e.what());
    }
    return m;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string machine_to_dot(const StackMachine& m) {
    // parallel rules differing only in the context symbol collapse into one
    // edge; a context covering the whole stack alphabet prints as Z
    struct Group {
        std::vector<std::string> ctx_syms;
        const Rule* rule;
        bool keeps_ctx;  // rewrite payload starts with the context symbol
    };
    std::map<std::string, Group> groups;
    for (const Rule& r : m.rules) {
        bool keeps = r.act == ActKind::Rewrite && !r.payload.empty() && r.payload[0] == r.ctx_sym;
        std::ostringstream key;
        key << r.from << '>' << r.to << '|' << (r.read ? static_cast<int64_t>(*r.read) : -1) << '|'
            << static_cast<int>(r.ctx) << '|' << static_cast<int>(r.act) << '|'
            << static_cast<int>(r.dir) << '|' << keeps;
        size_t skip = keeps ? 1 : 0;
        for (size_t i = skip; i < r.payload.size(); ++i) key << ',' << r.payload[i];
        auto [it, fresh] = groups.try_emplace(key.str(), Group{{}, &r, keeps});
        if (r.ctx == CtxKind::Top || r.ctx == CtxKind::Interior)
            it->second.ctx_syms.push_back(m.cell_name(r.ctx_sym));
    }

    std::ostringstream out;
    out << "digraph \"" << dot_escape(m.name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  __start [shape=point];\n";
    for (size_t i = 0; i < m.states.size(); ++i) {
        out << "  \"" << dot_escape(m.states[i]) << "\"";
        if (m.finals[i]) out << " [shape=doublecircle]";
        out << ";\n";
    }
    out << "  __start -> \"" << dot_escape(m.states.at(m.start)) << "\";\n";

    for (const auto& [key, g] : groups) {
        const Rule& r = *g.rule;
        std::string ctx;
        bool all = g.ctx_syms.size() == m.stack_symbols.size() && m.stack_symbols.size() > 1;
        std::string sym = all ? "Z" : g.ctx_syms.empty() ? "" : g.ctx_syms.size() == 1 ? g.ctx_syms[0] : "";
        if (!all && g.ctx_syms.size() > 1) {
            sym = "{";
            for (size_t i = 0; i < g.ctx_syms.size(); ++i) sym += (i ? "," : "") + g.ctx_syms[i];
            sym += "}";
        }
        switch (r.ctx) {
            case CtxKind::Top: ctx = sym + "$"; break;
            case CtxKind::Interior: ctx = sym; break;
            case CtxKind::Bottom: ctx = "#"; break;
            case CtxKind::EmptySubstackTop: ctx = "¢$"; break;
        }
        std::string act;
        switch (r.act) {
            case ActKind::Rewrite: {
                act = " → " + std::string(g.keeps_ctx ? sym : "");
                for (size_t i = g.keeps_ctx ? 1 : 0; i < r.payload.size(); ++i)
                    act += m.stack_symbols.at(r.payload[i]);
                act += "$";
                break;
            }
            case ActKind::Move: act = std::string(", ") + (r.dir == Dir::L ? "L" : r.dir == Dir::S ? "S" : "R"); break;
            case ActKind::Create: {
                act = " → ¢";
                for (uint32_t cell : r.payload) act += m.stack_symbols.at(cell);
                act += "$";
                break;
            }
            case ActKind::Destroy: act = ", destroy"; break;
        }
        std::string read = r.read ? m.input_alphabet.name(*r.read) : "~";
        out << "  \"" << dot_escape(m.states.at(r.from)) << "\" -> \""
            << dot_escape(m.states.at(r.to)) << "\" [label=\""
            << dot_escape(read + " / " + ctx + act) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace rewb
