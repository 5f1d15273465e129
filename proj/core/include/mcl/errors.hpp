#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mcl/types.hpp"

namespace mcl {

struct CodecError : std::runtime_error {
    enum class Kind { BadMagic, BadVersion, Truncated, ChecksumMismatch, Oversize };
    Kind kind;
    size_t offset;  // byte offset of the offending field
    CodecError(Kind k, size_t off, const std::string& msg)
        : std::runtime_error(msg), kind(k), offset(off) {}
};

struct SnapshotError : std::runtime_error {
    enum class Kind { Io, Corrupt };
    Kind kind;
    SnapshotError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct ChunkMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PayloadConflict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IllegalTransform : std::runtime_error {
    Transform::Kind kind;
    MediaType media;
    IllegalTransform(Transform::Kind k, MediaType m, const std::string& msg)
        : std::runtime_error(msg), kind(k), media(m) {}
};

struct ClockRegression : std::logic_error {
    using std::logic_error::logic_error;
};

struct LinkClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GrammarError : std::runtime_error {
    enum class Kind { Syntax, UndeclaredElement };
    Kind kind;
    uint32_t line;  // 1-based; 0 when not tied to a line
    GrammarError(Kind k, uint32_t ln, const std::string& msg)
        : std::runtime_error(msg), kind(k), line(ln) {}
};

struct LexError : std::runtime_error {
    uint32_t line, col;
    LexError(uint32_t ln, uint32_t c, const std::string& msg)
        : std::runtime_error(msg), line(ln), col(c) {}
};

struct ValidationError : std::runtime_error {
    enum class Reason { ChildNotAllowed, MissingRequiredAttr, UnknownElement, UnbalancedTag, WrongRoot };
    Reason reason;
    std::string path;  // e.g. "body/img"
    uint32_t line, col;
    ValidationError(Reason r, std::string p, uint32_t ln, uint32_t c, const std::string& msg)
        : std::runtime_error(msg), reason(r), path(std::move(p)), line(ln), col(c) {}
};

struct LifecycleViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphFormatError : std::runtime_error {
    uint32_t line;
    GraphFormatError(uint32_t ln, const std::string& msg) : std::runtime_error(msg), line(ln) {}
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssertionFailed : std::runtime_error {
    std::string name;
    AssertionFailed(std::string n, const std::string& msg)
        : std::runtime_error(msg), name(std::move(n)) {}
};

}  // namespace mcl
