// Push-based scanner/tokenizer for MCLML documents. Bytes may arrive in any
// splits; chunk boundaries never change the token stream.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcl/types.hpp"

namespace mcl::parse {

struct Token {
    enum class Kind : uint8_t { StartTag, EndTag, Text, Comment, Eof };
    Kind kind = Kind::Eof;
    std::string name;                                        // StartTag/EndTag
    std::vector<std::pair<std::string, std::string>> attrs;  // document order
    Bytes text;                                              // Text/Comment
    uint32_t line = 1, col = 1;                              // token start position

    bool operator==(const Token&) const = default;
};

struct TokenizerConfig {
    bool strip_comments = true;
    bool strip_ws_text = true;  // drop all-whitespace text runs
};

class Tokenizer {
public:
    explicit Tokenizer(TokenizerConfig cfg = {});

    // Feeds bytes, appending completed tokens to out. Throws LexError.
    void push(const uint8_t* data, size_t n, std::vector<Token>& out);
    void push(const Bytes& b, std::vector<Token>& out) { push(b.data(), b.size(), out); }

    // Signals end of input; flushes trailing text and emits Eof.
    // Throws LexError if input ends mid-construct.
    void finish(std::vector<Token>& out);

    bool eof_emitted() const { return eof_emitted_; }
    uint64_t bytes_consumed() const { return bytes_; }

private:
    enum class State {
        Text,
        AfterLt,        // saw '<'
        Bang,           // saw '<!'
        Bang2,          // saw '<!-'
        Comment,        // inside <!-- ... -->
        TagName,
        InTag,          // between attrs
        AttrName,
        AfterAttrName,  // expect '='
        BeforeValue,    // expect '"'
        AttrValue,
        SelfClose,      // saw '/' inside a start tag, expect '>'
        EndTagName,
        EndTagClose,    // after end-tag name, expect '>'
    };

    void consume(uint8_t b, std::vector<Token>& out);
    void flush_text(std::vector<Token>& out);
    void emit_start(std::vector<Token>& out, bool self_closing);
    [[noreturn]] void fail(const std::string& msg) const;

    TokenizerConfig cfg_;
    State state_ = State::Text;
    uint32_t line_ = 1, col_ = 1;          // position of the next byte
    uint32_t tok_line_ = 1, tok_col_ = 1;  // position where the current token began
    Bytes text_;
    uint32_t text_line_ = 1, text_col_ = 1;
    std::string name_, attr_name_, attr_value_;
    std::vector<std::pair<std::string, std::string>> attrs_;
    Bytes comment_;
    int comment_dashes_ = 0;
    uint64_t bytes_ = 0;
    bool eof_emitted_ = false;
};

// Convenience: tokenize a whole buffer in one go.
std::vector<Token> tokenize_all(const Bytes& doc, TokenizerConfig cfg = {});

}  // namespace mcl::parse
