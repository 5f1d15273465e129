// Independent reference implementation for the MCLML tests: a one-shot
// recursive-descent parser, a naive tree validator, a random document
// generator, and a single-fault mutator. Deliberately written without the
// production tokenizer so the two can disagree.
#pragma once

#include <cctype>
#include <random>
#include <stdexcept>
#include <string>

#include "mcl/dom.hpp"
#include "mcl/grammar.hpp"

namespace mcl_test::oracle {

using mcl::parse::ChildModel;
using mcl::parse::DomNode;
using mcl::parse::DtdGrammar;

class RdParser {
public:
    explicit RdParser(const std::string& src) : s_(src) {}

    DomNode parse() {
        skip_misc();
        DomNode root = element();
        skip_misc();
        if (pos_ != s_.size()) throw std::runtime_error("trailing content");
        return root;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() {
        if (pos_ >= s_.size()) throw std::runtime_error("unexpected end");
        return s_[pos_++];
    }
    void expect(char c) {
        if (get() != c) throw std::runtime_error(std::string("expected ") + c);
    }
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    void skip_misc() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (s_.compare(pos_, 4, "<!--") == 0) {
                size_t end = s_.find("-->", pos_ + 4);
                if (end == std::string::npos) throw std::runtime_error("unterminated comment");
                pos_ = end + 3;
                continue;
            }
            return;
        }
    }

    std::string name() {
        std::string n;
        while (name_char(peek())) n.push_back(get());
        if (n.empty()) throw std::runtime_error("empty name");
        return n;
    }

    DomNode element() {
        expect('<');
        DomNode node;
        node.kind = DomNode::Kind::Element;
        node.name = name();
        for (;;) {
            while (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r') get();
            if (peek() == '/') {
                get();
                expect('>');
                return node;
            }
            if (peek() == '>') {
                get();
                break;
            }
            std::string an = name();
            expect('=');
            expect('"');
            std::string av;
            while (peek() != '"') av.push_back(get());
            get();
            if (!node.attrs.emplace(an, av).second)
                throw std::runtime_error("duplicate attribute");
        }
        // content until the matching end tag
        for (;;) {
            if (s_.compare(pos_, 4, "<!--") == 0) {
                skip_misc();
                continue;
            }
            if (peek() == '<' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
                pos_ += 2;
                std::string en = name();
                expect('>');
                if (en != node.name) throw std::runtime_error("mismatched end tag");
                return node;
            }
            if (peek() == '<') {
                node.children.push_back(element());
                continue;
            }
            mcl::Bytes text;
            while (pos_ < s_.size() && peek() != '<') text.push_back(uint8_t(get()));
            bool all_ws = true;
            for (uint8_t b : text)
                if (!std::isspace(b)) all_ws = false;
            if (!all_ws) {
                DomNode t;
                t.kind = DomNode::Kind::Text;
                t.text = std::move(text);
                node.children.push_back(std::move(t));
            }
        }
    }
};

inline DomNode rd_parse(const std::string& src) { return RdParser(src).parse(); }

// Post-hoc tree validator mirroring the grammar rules the slow way.
inline bool naive_valid(const DomNode& node, const DtdGrammar& g, bool is_root = true) {
    if (node.kind != DomNode::Kind::Element) return false;
    if (is_root && node.name != g.root) return false;
    auto decl = g.elements.find(node.name);
    if (decl == g.elements.end()) return false;
    auto att = g.attlists.find(node.name);
    if (att != g.attlists.end())
        for (const auto& rule : att->second)
            if (rule.required && !node.attrs.contains(rule.name)) return false;
    const ChildModel& model = decl->second;
    switch (model.kind) {
        case ChildModel::Kind::Empty:
            if (!node.children.empty()) return false;
            break;
        case ChildModel::Kind::Text:
            for (const auto& c : node.children)
                if (c.kind != DomNode::Kind::Text) return false;
            break;
        case ChildModel::Kind::Sequence: {
            if (node.children.size() != model.names.size()) return false;
            for (size_t i = 0; i < node.children.size(); ++i) {
                if (node.children[i].kind != DomNode::Kind::Element) return false;
                if (node.children[i].name != model.names[i]) return false;
            }
            break;
        }
        case ChildModel::Kind::ChoiceStar:
            for (const auto& c : node.children) {
                if (c.kind != DomNode::Kind::Element) return false;
                bool allowed = false;
                for (const auto& n : model.names)
                    if (n == c.name) allowed = true;
                if (!allowed) return false;
            }
            break;
    }
    for (const auto& c : node.children)
        if (c.kind == DomNode::Kind::Element && !naive_valid(c, g, false)) return false;
    return true;
}

// The grammar every generator/mutator test runs against.
inline const char* kTestGrammar = R"(# test page grammar
ROOT page
ELEMENT page (title, body)
ELEMENT title TEXT
ELEMENT body ( para | img )*
ELEMENT para TEXT
ELEMENT img EMPTY
ATTLIST img src REQUIRED
ATTLIST para style OPTIONAL
ATTLIST page lang OPTIONAL
)";

inline std::string random_text(std::mt19937_64& rng) {
    static const char alphabet[] = "abcdefghij XYZ.,!0123456789";
    size_t n = 1 + rng() % 30;
    std::string out;
    for (size_t i = 0; i < n; ++i) out.push_back(alphabet[rng() % (sizeof(alphabet) - 1)]);
    if (out.find_first_not_of(" \t") == std::string::npos) out += "x";
    return out;
}

inline std::string maybe_ws(std::mt19937_64& rng) {
    static const char* choices[] = {"", " ", "\n", "  ", "\n\t"};
    return choices[rng() % 5];
}

// Well-formed, grammar-valid document with random whitespace and comments.
inline std::string generate_doc(std::mt19937_64& rng) {
    std::string doc;
    if (rng() % 3 == 0) doc += "<!-- header comment -->\n";
    doc += "<page";
    if (rng() % 2) doc += " lang=\"en\"";
    doc += ">" + maybe_ws(rng);
    doc += "<title>" + random_text(rng) + "</title>" + maybe_ws(rng);
    doc += "<body>" + maybe_ws(rng);
    size_t kids = rng() % 6;
    for (size_t i = 0; i < kids; ++i) {
        if (rng() % 3 == 0) doc += "<!-- k" + std::to_string(i) + " -->";
        if (rng() % 2) {
            doc += "<para";
            if (rng() % 2) doc += " style=\"plain\"";
            doc += ">" + random_text(rng) + "</para>";
        } else {
            doc += rng() % 2 ? "<img src=\"p" + std::to_string(i) + "\"/>"
                             : "<img src=\"q" + std::to_string(i) + "\"></img>";
        }
        doc += maybe_ws(rng);
    }
    doc += "</body>" + maybe_ws(rng) + "</page>";
    if (rng() % 4 == 0) doc += "\n<!-- trailer -->\n";
    return doc;
}

// One deliberate grammar fault plus the byte offset where it was injected.
struct Mutation {
    std::string text;
    size_t offset = 0;
};

// Applies one deliberate grammar fault to a generated document. Returns
// nullopt if the drawn fault kind has no site in doc.
inline std::optional<Mutation> mutate_doc_at(const std::string& doc, std::mt19937_64& rng) {
    Mutation m;
    m.text = doc;
    auto replace_first = [&](const std::string& from, const std::string& to) {
        size_t at = m.text.find(from);
        if (at == std::string::npos) return false;
        m.text.replace(at, from.size(), to);
        m.offset = at;
        return true;
    };
    switch (rng() % 5) {
        case 0:  // undeclared element inside body
            if (!replace_first("</body>", "<rogue></rogue></body>")) return std::nullopt;
            return m;
        case 1:  // missing required attribute
            if (replace_first(" src=\"p0\"", "")) return m;
            if (replace_first(" src=\"q0\"", "")) return m;
            return std::nullopt;
        case 2:  // element where TEXT content is required
            if (!replace_first("</title>", "<para>x</para></title>")) return std::nullopt;
            return m;
        case 3: {  // sequence child dropped
            size_t a = m.text.find("<title>");
            if (a == std::string::npos) return std::nullopt;
            size_t b = m.text.find("</title>");
            m.text.erase(a, b + 8 - a);
            m.offset = a;
            return m;
        }
        case 4:  // mismatched end tag
            if (!replace_first("</title>", "</totle>")) return std::nullopt;
            return m;
    }
    return std::nullopt;
}

inline std::string mutate_doc(const std::string& doc, std::mt19937_64& rng) {
    auto m = mutate_doc_at(doc, rng);
    return m ? m->text : "";
}

}  // namespace mcl_test::oracle
