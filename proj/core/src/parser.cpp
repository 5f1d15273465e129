#include "mcl/parser.hpp"

#include <fstream>

#include "mcl/errors.hpp"

namespace mcl::parse {

const char* to_string(Phase p) {
    switch (p) {
        case Phase::Constructed: return "constructed";
        case Phase::StreamOpen: return "stream-open";
        case Phase::Tokenizing: return "tokenizing";
        case Phase::Iterating: return "iterating";
        case Phase::Destroyed: return "destroyed";
    }
    return "?";
}

Parser::Parser(DtdGrammar grammar, ContentSink* sink, TokenizerConfig cfg)
    : grammar_(std::move(grammar)), sink_(sink), tokenizer_(cfg) {}

void Parser::not_destroyed(const char* op) const {
    if (phase_ == Phase::Destroyed)
        throw LifecycleViolation(std::string(op) + " after destroy");
}

void Parser::require(Phase p, const char* op) const {
    not_destroyed(op);
    if (phase_ != p)
        throw LifecycleViolation(std::string(op) + " illegal in phase " + to_string(phase_));
}

void Parser::open_stream() {
    require(Phase::Constructed, "open_stream");
    phase_ = Phase::StreamOpen;
}

void Parser::open_stream(Bytes source) {
    require(Phase::Constructed, "open_stream");
    source_ = std::move(source);
    phase_ = Phase::StreamOpen;
}

void Parser::open_stream(const std::filesystem::path& file) {
    require(Phase::Constructed, "open_stream");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open input stream: " + file.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    source_ = std::move(data);
    phase_ = Phase::StreamOpen;
}

std::vector<Token> Parser::tokenize_push(const uint8_t* data, size_t n) {
    not_destroyed("tokenize_push");
    if (phase_ != Phase::StreamOpen && phase_ != Phase::Tokenizing)
        throw LifecycleViolation("tokenize_push before open_stream");
    phase_ = Phase::Tokenizing;
    std::vector<Token> produced;
    tokenizer_.push(data, n, produced);
    stats_.bytes += n;
    stats_.tokens += produced.size();
    tokens_.insert(tokens_.end(), produced.begin(), produced.end());
    return produced;
}

void Parser::end_input() {
    not_destroyed("end_input");
    if (phase_ != Phase::StreamOpen && phase_ != Phase::Tokenizing)
        throw LifecycleViolation("end_input before open_stream");
    phase_ = Phase::Tokenizing;
    std::vector<Token> produced;
    tokenizer_.finish(produced);
    stats_.tokens += produced.size();
    tokens_.insert(tokens_.end(), produced.begin(), produced.end());
}

std::vector<Token> Parser::tokenize_source() {
    require(Phase::StreamOpen, "tokenize_source");
    if (!source_) throw LifecycleViolation("tokenize_source without a bound source");
    Bytes src = std::move(*source_);
    source_.reset();
    auto produced = tokenize_push(src);
    end_input();
    produced.clear();
    return tokens_;
}

DomNode Parser::iterate() {
    not_destroyed("iterate");
    if (phase_ != Phase::Tokenizing || !tokenizer_.eof_emitted())
        throw LifecycleViolation("iterate requires completed tokenization");
    phase_ = Phase::Iterating;
    DomNode root = validate_and_build(tokens_, grammar_, sink_);
    stats_.nodes = root.node_count();
    return root;
}

ParseStats Parser::destroy() {
    not_destroyed("destroy");
    phase_ = Phase::Destroyed;
    tokens_.clear();
    source_.reset();
    return stats_;
}

namespace {

std::string join_path(const std::vector<std::string>& stack, const std::string& leaf) {
    std::string p;
    for (const auto& s : stack) {
        if (!p.empty()) p += '/';
        p += s;
    }
    if (!leaf.empty()) {
        if (!p.empty()) p += '/';
        p += leaf;
    }
    return p;
}

struct OpenElement {
    std::string name;
    const ChildModel* model;
    size_t children_seen = 0;
};

}  // namespace

DomNode validate_and_build(const std::vector<Token>& tokens, const DtdGrammar& grammar,
                           ContentSink* sink) {
    DomBuilderSink builder;
    std::vector<OpenElement> stack;
    std::vector<std::string> names;  // parallel, for paths
    bool saw_root = false;

    auto check_child = [&](const std::string& child, uint32_t ln, uint32_t col) {
        OpenElement& top = stack.back();
        switch (top.model->kind) {
            case ChildModel::Kind::Empty:
            case ChildModel::Kind::Text:
                throw ValidationError(ValidationError::Reason::ChildNotAllowed,
                                      join_path(names, child), ln, col,
                                      "element " + top.name + " allows no child elements");
            case ChildModel::Kind::Sequence:
                if (top.children_seen >= top.model->names.size() ||
                    top.model->names[top.children_seen] != child)
                    throw ValidationError(ValidationError::Reason::ChildNotAllowed,
                                          join_path(names, child), ln, col,
                                          "child " + child + " breaks sequence of " + top.name);
                break;
            case ChildModel::Kind::ChoiceStar: {
                bool ok = false;
                for (const auto& n : top.model->names)
                    if (n == child) { ok = true; break; }
                if (!ok)
                    throw ValidationError(ValidationError::Reason::ChildNotAllowed,
                                          join_path(names, child), ln, col,
                                          "child " + child + " not in choice of " + top.name);
                break;
            }
        }
        ++top.children_seen;
    };

    for (const Token& tok : tokens) {
        switch (tok.kind) {
            case Token::Kind::StartTag: {
                auto it = grammar.elements.find(tok.name);
                if (it == grammar.elements.end())
                    throw ValidationError(ValidationError::Reason::UnknownElement,
                                          join_path(names, tok.name), tok.line, tok.col,
                                          "undeclared element: " + tok.name);
                if (stack.empty()) {
                    if (saw_root || tok.name != grammar.root)
                        throw ValidationError(ValidationError::Reason::WrongRoot,
                                              tok.name, tok.line, tok.col,
                                              "document root must be " + grammar.root);
                    saw_root = true;
                } else {
                    check_child(tok.name, tok.line, tok.col);
                }
                std::map<std::string, std::string> attrs(tok.attrs.begin(), tok.attrs.end());
                auto al = grammar.attlists.find(tok.name);
                if (al != grammar.attlists.end())
                    for (const AttRule& rule : al->second)
                        if (rule.required && !attrs.contains(rule.name))
                            throw ValidationError(ValidationError::Reason::MissingRequiredAttr,
                                                  join_path(names, tok.name), tok.line, tok.col,
                                                  "missing required attribute " + rule.name +
                                                      " on " + tok.name);
                stack.push_back(OpenElement{tok.name, &it->second});
                names.push_back(tok.name);
                builder.open_element(tok.name, attrs);
                if (sink) sink->open_element(tok.name, attrs);
                break;
            }
            case Token::Kind::EndTag: {
                if (stack.empty() || stack.back().name != tok.name)
                    throw ValidationError(ValidationError::Reason::UnbalancedTag,
                                          join_path(names, tok.name), tok.line, tok.col,
                                          "end tag " + tok.name + " does not match open element");
                const OpenElement& top = stack.back();
                if (top.model->kind == ChildModel::Kind::Sequence &&
                    top.children_seen != top.model->names.size())
                    throw ValidationError(ValidationError::Reason::ChildNotAllowed,
                                          join_path(names, ""), tok.line, tok.col,
                                          "element " + top.name + " closed before its sequence completed");
                builder.close_element(tok.name);
                if (sink) sink->close_element(tok.name);
                stack.pop_back();
                names.pop_back();
                break;
            }
            case Token::Kind::Text: {
                if (stack.empty() || stack.back().model->kind != ChildModel::Kind::Text)
                    throw ValidationError(ValidationError::Reason::ChildNotAllowed,
                                          join_path(names, "#text"), tok.line, tok.col,
                                          "text not allowed here");
                builder.text(tok.text);
                if (sink) sink->text(tok.text);
                break;
            }
            case Token::Kind::Comment:
                break;  // stripped or ignored; comments carry no model weight
            case Token::Kind::Eof:
                if (!stack.empty())
                    throw ValidationError(ValidationError::Reason::UnbalancedTag,
                                          join_path(names, ""), tok.line, tok.col,
                                          "unclosed element " + stack.back().name);
                if (!saw_root)
                    throw ValidationError(ValidationError::Reason::WrongRoot, "", tok.line,
                                          tok.col, "document has no root element");
                break;
        }
    }
    return builder.take_root();
}

}  // namespace mcl::parse
