#include "mcl/grammar.hpp"

#include <fstream>
#include <sstream>

#include "mcl/errors.hpp"

namespace mcl::parse {
namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

ChildModel parse_model(const std::string& text, uint32_t line) {
    ChildModel m;
    if (text == "EMPTY") {
        m.kind = ChildModel::Kind::Empty;
        return m;
    }
    if (text == "TEXT") {
        m.kind = ChildModel::Kind::Text;
        return m;
    }
    std::string body = text;
    bool star = false;
    if (body.size() >= 1 && body.back() == '*') {
        star = true;
        body.pop_back();
    }
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
        throw GrammarError(GrammarError::Kind::Syntax, line, "bad child model: " + text);
    body = body.substr(1, body.size() - 2);
    char sep = star ? '|' : ',';
    if (star && body.find(',') != std::string::npos)
        throw GrammarError(GrammarError::Kind::Syntax, line, "starred model must use '|'");
    if (!star && body.find('|') != std::string::npos)
        throw GrammarError(GrammarError::Kind::Syntax, line, "choice model requires trailing '*'");
    m.kind = star ? ChildModel::Kind::ChoiceStar : ChildModel::Kind::Sequence;
    std::string item;
    std::istringstream iss(body);
    while (std::getline(iss, item, sep)) {
        // trim
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw GrammarError(GrammarError::Kind::Syntax, line, "empty name in model");
        item = item.substr(a, b - a + 1);
        if (!valid_name(item))
            throw GrammarError(GrammarError::Kind::Syntax, line, "bad name in model: " + item);
        m.names.push_back(item);
    }
    if (m.names.empty())
        throw GrammarError(GrammarError::Kind::Syntax, line, "empty child model");
    return m;
}

}  // namespace

DtdGrammar load_grammar(const std::string& text) {
    DtdGrammar g;
    std::istringstream in(text);
    std::string raw;
    uint32_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "ROOT") {
            if (toks.size() != 2 || !valid_name(toks[1]))
                throw GrammarError(GrammarError::Kind::Syntax, line_no, "ROOT wants one name");
            g.root = toks[1];
        } else if (toks[0] == "ELEMENT") {
            if (toks.size() < 3 || !valid_name(toks[1]))
                throw GrammarError(GrammarError::Kind::Syntax, line_no, "ELEMENT wants name and model");
            std::string model;
            for (size_t i = 2; i < toks.size(); ++i) model += toks[i];
            g.elements[toks[1]] = parse_model(model, line_no);
        } else if (toks[0] == "ATTLIST") {
            if (toks.size() != 4 || !valid_name(toks[1]) || !valid_name(toks[2]) ||
                (toks[3] != "REQUIRED" && toks[3] != "OPTIONAL"))
                throw GrammarError(GrammarError::Kind::Syntax, line_no,
                                   "ATTLIST wants element, attr, REQUIRED|OPTIONAL");
            g.attlists[toks[1]].push_back(AttRule{toks[2], toks[3] == "REQUIRED"});
        } else {
            throw GrammarError(GrammarError::Kind::Syntax, line_no, "unknown directive: " + toks[0]);
        }
    }
    if (g.root.empty())
        throw GrammarError(GrammarError::Kind::Syntax, 0, "missing ROOT directive");
    if (!g.declared(g.root))
        throw GrammarError(GrammarError::Kind::UndeclaredElement, 0, "root not declared: " + g.root);
    for (const auto& [name, model] : g.elements)
        for (const std::string& child : model.names)
            if (!g.declared(child))
                throw GrammarError(GrammarError::Kind::UndeclaredElement, 0,
                                   "undeclared element referenced: " + child);
    for (const auto& [elem, rules] : g.attlists)
        if (!g.declared(elem))
            throw GrammarError(GrammarError::Kind::UndeclaredElement, 0,
                               "attlist for undeclared element: " + elem);
    return g;
}

DtdGrammar load_grammar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grammar file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_grammar(ss.str());
}

}  // namespace mcl::parse
