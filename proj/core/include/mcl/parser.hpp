// The five-phase parse engine: construction, stream open, tokenization, token
// iteration (validation + DOM build via the sink), destruction.
#pragma once

#include <filesystem>
#include <optional>

#include "mcl/dom.hpp"
#include "mcl/grammar.hpp"
#include "mcl/tokenizer.hpp"

namespace mcl::parse {

enum class Phase : uint8_t { Constructed, StreamOpen, Tokenizing, Iterating, Destroyed };

const char* to_string(Phase p);

struct ParseStats {
    uint64_t tokens = 0;
    uint64_t nodes = 0;
    uint64_t bytes = 0;
};

class Parser {
public:
    // The parser is handed its grammar and sink up front; the sink may be
    // null, in which case only the internal DOM builder observes events.
    Parser(DtdGrammar grammar, ContentSink* sink = nullptr, TokenizerConfig cfg = {});

    Phase phase() const { return phase_; }

    // Push mode: no bound source, feed bytes via tokenize_push.
    void open_stream();
    // Buffered source (e.g. a delivered payload).
    void open_stream(Bytes source);
    // File source; throws IoError and leaves the phase unchanged.
    void open_stream(const std::filesystem::path& file);

    // Feeds bytes; returns the tokens completed by this push.
    std::vector<Token> tokenize_push(const uint8_t* data, size_t n);
    std::vector<Token> tokenize_push(const Bytes& b) { return tokenize_push(b.data(), b.size()); }
    // Ends push-mode input (emits Eof).
    void end_input();
    // Consumes the bound source to Eof in one call.
    std::vector<Token> tokenize_source();

    // Validates the token stream against the grammar, drives the sink, and
    // returns the document root. Requires Eof to have been seen.
    DomNode iterate();

    // Releases everything and reports stats. Any later call (including a
    // second destroy) is a LifecycleViolation.
    ParseStats destroy();

private:
    void require(Phase p, const char* op) const;
    void not_destroyed(const char* op) const;

    DtdGrammar grammar_;
    ContentSink* sink_;
    Tokenizer tokenizer_;
    Phase phase_ = Phase::Constructed;
    std::optional<Bytes> source_;
    std::vector<Token> tokens_;
    ParseStats stats_;
};

// Token-stream validation + DOM build, independent of the lifecycle object.
// Drives sink if non-null. Throws ValidationError.
DomNode validate_and_build(const std::vector<Token>& tokens, const DtdGrammar& grammar,
                           ContentSink* sink = nullptr);

}  // namespace mcl::parse
