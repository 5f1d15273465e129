// Line-oriented grammar file driving document validation.
//
//   ROOT <name>
//   ELEMENT <name> EMPTY | TEXT | (<a>, <b>, ...) | (<a> | <b> | ...)*
//   ATTLIST <element> <attr> REQUIRED|OPTIONAL
//   # comment
#pragma once

#include <map>
#include <string>
#include <vector>

namespace mcl::parse {

struct ChildModel {
    enum class Kind { Empty, Text, Sequence, ChoiceStar };
    Kind kind = Kind::Empty;
    std::vector<std::string> names;  // sequence order / choice set
};

struct AttRule {
    std::string name;
    bool required = false;
};

struct DtdGrammar {
    std::string root;
    std::map<std::string, ChildModel> elements;
    std::map<std::string, std::vector<AttRule>> attlists;

    bool declared(const std::string& name) const { return elements.contains(name); }
};

DtdGrammar load_grammar(const std::string& text);
DtdGrammar load_grammar_file(const std::string& path);

}  // namespace mcl::parse
