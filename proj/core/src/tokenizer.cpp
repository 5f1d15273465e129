#include "mcl/tokenizer.hpp"

#include <cctype>

#include "mcl/errors.hpp"

namespace mcl::parse {
namespace {

bool name_start(uint8_t b) { return std::isalpha(b); }
bool name_char(uint8_t b) { return std::isalnum(b) || b == '_' || b == '-'; }
bool is_ws(uint8_t b) { return b == ' ' || b == '\t' || b == '\r' || b == '\n'; }

}  // namespace

Tokenizer::Tokenizer(TokenizerConfig cfg) : cfg_(cfg) {}

void Tokenizer::fail(const std::string& msg) const { throw LexError(line_, col_, msg); }

void Tokenizer::flush_text(std::vector<Token>& out) {
    if (text_.empty()) return;
    bool all_ws = true;
    for (uint8_t b : text_)
        if (!is_ws(b)) { all_ws = false; break; }
    if (!(all_ws && cfg_.strip_ws_text)) {
        Token t;
        t.kind = Token::Kind::Text;
        t.text = std::move(text_);
        t.line = text_line_;
        t.col = text_col_;
        out.push_back(std::move(t));
    }
    text_.clear();
}

void Tokenizer::emit_start(std::vector<Token>& out, bool self_closing) {
    Token t;
    t.kind = Token::Kind::StartTag;
    t.name = std::move(name_);
    t.attrs = std::move(attrs_);
    t.line = tok_line_;
    t.col = tok_col_;
    std::string name_copy = t.name;
    out.push_back(std::move(t));
    if (self_closing) {
        Token e;
        e.kind = Token::Kind::EndTag;
        e.name = std::move(name_copy);
        e.line = tok_line_;
        e.col = tok_col_;
        out.push_back(std::move(e));
    }
    name_.clear();
    attrs_.clear();
}

void Tokenizer::push(const uint8_t* data, size_t n, std::vector<Token>& out) {
    if (eof_emitted_) throw LexError(line_, col_, "input after end of stream");
    for (size_t i = 0; i < n; ++i) {
        consume(data[i], out);
        ++bytes_;
        if (data[i] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }
}

void Tokenizer::consume(uint8_t b, std::vector<Token>& out) {
    switch (state_) {
        case State::Text:
            if (b == '<') {
                tok_line_ = line_;
                tok_col_ = col_;
                state_ = State::AfterLt;
            } else {
                if (text_.empty()) {
                    text_line_ = line_;
                    text_col_ = col_;
                }
                text_.push_back(b);
            }
            return;
        case State::AfterLt:
            if (b == '/') {
                flush_text(out);
                state_ = State::EndTagName;
            } else if (b == '!') {
                state_ = State::Bang;
            } else if (name_start(b)) {
                flush_text(out);
                name_ = static_cast<char>(b);
                state_ = State::TagName;
            } else {
                fail("expected tag name, '/' or '!' after '<'");
            }
            return;
        case State::Bang:
            if (b != '-') fail("only comments are supported after '<!'");
            state_ = State::Bang2;
            return;
        case State::Bang2:
            if (b != '-') fail("malformed comment open");
            flush_text(out);
            comment_.clear();
            comment_dashes_ = 0;
            state_ = State::Comment;
            return;
        case State::Comment:
            if (b == '-') {
                if (comment_dashes_ < 2) {
                    ++comment_dashes_;
                } else {
                    comment_.push_back('-');
                }
                return;
            }
            if (b == '>' && comment_dashes_ >= 2) {
                if (!cfg_.strip_comments) {
                    Token t;
                    t.kind = Token::Kind::Comment;
                    t.text = std::move(comment_);
                    t.line = tok_line_;
                    t.col = tok_col_;
                    out.push_back(std::move(t));
                }
                comment_.clear();
                state_ = State::Text;
                return;
            }
            while (comment_dashes_ > 0) {
                comment_.push_back('-');
                --comment_dashes_;
            }
            comment_.push_back(b);
            return;
        case State::TagName:
            if (name_char(b)) {
                name_ += static_cast<char>(b);
            } else if (is_ws(b)) {
                state_ = State::InTag;
            } else if (b == '>') {
                emit_start(out, false);
                state_ = State::Text;
            } else if (b == '/') {
                state_ = State::SelfClose;
            } else {
                fail("bad character in tag name");
            }
            return;
        case State::InTag:
            if (is_ws(b)) return;
            if (b == '>') {
                emit_start(out, false);
                state_ = State::Text;
            } else if (b == '/') {
                state_ = State::SelfClose;
            } else if (name_start(b)) {
                attr_name_ = static_cast<char>(b);
                state_ = State::AttrName;
            } else {
                fail("expected attribute, '/' or '>' in tag");
            }
            return;
        case State::AttrName:
            if (name_char(b)) {
                attr_name_ += static_cast<char>(b);
            } else if (b == '=') {
                state_ = State::BeforeValue;
            } else if (is_ws(b)) {
                state_ = State::AfterAttrName;
            } else {
                fail("bad character in attribute name");
            }
            return;
        case State::AfterAttrName:
            if (is_ws(b)) return;
            if (b == '=') {
                state_ = State::BeforeValue;
            } else {
                fail("expected '=' after attribute name");
            }
            return;
        case State::BeforeValue:
            if (is_ws(b)) return;
            if (b == '"') {
                attr_value_.clear();
                state_ = State::AttrValue;
            } else {
                fail("attribute value must be double-quoted");
            }
            return;
        case State::AttrValue:
            if (b == '"') {
                attrs_.emplace_back(std::move(attr_name_), std::move(attr_value_));
                attr_name_.clear();
                attr_value_.clear();
                state_ = State::InTag;
            } else {
                attr_value_ += static_cast<char>(b);
            }
            return;
        case State::SelfClose:
            if (b != '>') fail("expected '>' after '/'");
            emit_start(out, true);
            state_ = State::Text;
            return;
        case State::EndTagName:
            if (name_.empty()) {
                if (!name_start(b)) fail("expected element name in end tag");
                name_ = static_cast<char>(b);
            } else if (name_char(b)) {
                name_ += static_cast<char>(b);
            } else if (is_ws(b)) {
                state_ = State::EndTagClose;
            } else if (b == '>') {
                Token t;
                t.kind = Token::Kind::EndTag;
                t.name = std::move(name_);
                t.line = tok_line_;
                t.col = tok_col_;
                out.push_back(std::move(t));
                name_.clear();
                state_ = State::Text;
            } else {
                fail("bad character in end tag");
            }
            return;
        case State::EndTagClose:
            if (is_ws(b)) return;
            if (b == '>') {
                Token t;
                t.kind = Token::Kind::EndTag;
                t.name = std::move(name_);
                t.line = tok_line_;
                t.col = tok_col_;
                out.push_back(std::move(t));
                name_.clear();
                state_ = State::Text;
            } else {
                fail("expected '>' to close end tag");
            }
            return;
    }
}

void Tokenizer::finish(std::vector<Token>& out) {
    if (eof_emitted_) throw LexError(line_, col_, "finish called twice");
    if (state_ != State::Text)
        throw LexError(tok_line_, tok_col_, "input ended inside a markup construct");
    flush_text(out);
    Token eof;
    eof.kind = Token::Kind::Eof;
    eof.line = line_;
    eof.col = col_;
    out.push_back(std::move(eof));
    eof_emitted_ = true;
}

std::vector<Token> tokenize_all(const Bytes& doc, TokenizerConfig cfg) {
    Tokenizer t(cfg);
    std::vector<Token> out;
    t.push(doc, out);
    t.finish(out);
    return out;
}

}  // namespace mcl::parse
